#pragma once

#include <filesystem>
#include <memory>
#include <mutex>

#include "tabula/automl/json_io.hpp"
#include "tabula/core/jobs.hpp"
#include "tabula/ingest/project.hpp"

namespace tabula::automl {

struct ModelStatus {
    std::string model_id;
    std::string project_id;
    std::string job_id;  // latest mutation job
    JobStatus job_status = JobStatus::Queued;
    bool ready = false;  // an artifact has been published
    std::optional<std::string> error;
};

// Model table. Training and streaming run as background jobs; jobs on the
// same model are serialized by a per-model lock, and readers only ever see a
// fully built artifact snapshot.
class ModelRegistry {
public:
    explicit ModelRegistry(JobRunner& runner, std::optional<std::filesystem::path> store_root = std::nullopt)
        : runner_(runner), root_(std::move(store_root)) {
        if (root_ && std::filesystem::exists(*root_ / "models")) {
            for (const auto& e : std::filesystem::directory_iterator(*root_ / "models")) {
                const auto stem = e.path().stem().string();
                if (stem.rfind("m-", 0) != 0) continue;
                try {
                    counter_ = std::max(counter_, static_cast<std::size_t>(std::stoull(stem.substr(2))));
                } catch (...) {
                }
            }
        }
    }

    // Returns the new model id and its training job.
    std::pair<std::string, JobInfo> start_training(const TrainSpec& spec, std::shared_ptr<const Dataset> data) {
        std::lock_guard lock(mutex_);
        char buf[32];
        std::snprintf(buf, sizeof buf, "m-%06zu", ++counter_);
        const std::string id = buf;
        auto entry = std::make_shared<Entry>();
        entry->project_id = spec.project_id;
        models_[id] = entry;
        auto info = runner_.submit("train", id, [this, entry, id, spec, data] {
            std::lock_guard mutation(entry->mutation);
            auto artifact = std::make_shared<const ModelArtifact>(train(spec, *data, id));
            publish(*entry, id, std::move(artifact));
        });
        entry->job_id = info.job_id;
        return {id, info};
    }

    JobInfo start_stream(const std::string& model_id, std::shared_ptr<const Dataset> rows) {
        std::lock_guard lock(mutex_);
        auto entry = lookup(model_id);
        const auto previous = entry->job_id;
        auto info = runner_.submit("stream", model_id, [this, entry, model_id, rows, previous] {
            if (!previous.empty()) runner_.wait(previous);  // keep submission order
            std::lock_guard mutation(entry->mutation);
            std::shared_ptr<const ModelArtifact> current;
            {
                std::lock_guard inner(mutex_);
                current = entry->artifact;
            }
            if (!current) fail(ErrorCode::ModelNotReady, "model '" + model_id + "' has no trained artifact");
            publish(*entry, model_id, std::make_shared<const ModelArtifact>(update_with_stream(*current, *rows)));
        });
        entry->job_id = info.job_id;
        return info;
    }

    std::shared_ptr<const ModelArtifact> artifact(const std::string& model_id) const {
        std::lock_guard lock(mutex_);
        auto entry = lookup(model_id);
        if (!entry->artifact) fail(ErrorCode::ModelNotReady, "model '" + model_id + "' is not trained yet");
        return entry->artifact;
    }

    ModelStatus status(const std::string& model_id) const {
        std::shared_ptr<Entry> entry;
        ModelStatus s;
        {
            std::lock_guard lock(mutex_);
            entry = lookup(model_id);
            s.model_id = model_id;
            s.project_id = entry->project_id;
            s.job_id = entry->job_id;
            s.ready = entry->artifact != nullptr;
        }
        if (!s.job_id.empty()) {
            const auto job = runner_.status(s.job_id);
            s.job_status = job.status;
            s.error = job.error;
        } else {
            s.job_status = JobStatus::Done;
        }
        return s;
    }

    JobInfo wait(const std::string& job_id) const { return runner_.wait(job_id); }

private:
    struct Entry {
        std::string project_id;
        std::string job_id;
        std::shared_ptr<const ModelArtifact> artifact;
        std::mutex mutation;
    };

    void publish(Entry& entry, const std::string& id, std::shared_ptr<const ModelArtifact> artifact) {
        if (root_) write_file(*root_ / "models" / (id + ".json"), json(*artifact).dump() + "\n");
        std::lock_guard lock(mutex_);
        entry.artifact = std::move(artifact);
    }

    // Caller holds mutex_. Artifacts persisted by an earlier process load lazily.
    std::shared_ptr<Entry> lookup(const std::string& id) const {
        const auto it = models_.find(id);
        if (it != models_.end()) return it->second;
        if (root_ && id.find('/') == std::string::npos && id.find("..") == std::string::npos) {
            const auto path = *root_ / "models" / (id + ".json");
            if (std::filesystem::exists(path)) {
                auto entry = std::make_shared<Entry>();
                auto a = json::parse(read_file(path)).get<ModelArtifact>();
                entry->project_id = a.project_id;
                entry->artifact = std::make_shared<const ModelArtifact>(std::move(a));
                models_[id] = entry;
                return entry;
            }
        }
        fail(ErrorCode::UnknownModel, "unknown model '" + id + "'");
    }

    JobRunner& runner_;
    std::optional<std::filesystem::path> root_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::shared_ptr<Entry>> models_;
    std::size_t counter_ = 0;
};

}  // namespace tabula::automl
