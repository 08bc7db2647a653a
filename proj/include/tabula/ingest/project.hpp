#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <unordered_map>

#include "tabula/core/jobs.hpp"
#include "tabula/ingest/json_io.hpp"

namespace tabula {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
    }
    fs::rename(tmp, path);
}

// Versioned per-project metadata document (project.json).
struct ProjectMeta {
    static constexpr int kSchemaVersion = 1;
    std::string project_id;
    std::string name;
    std::string source;
    std::size_t row_count = 0;
    std::vector<std::pair<std::string, ColumnType>> columns;
    LoadOptions options;
    std::vector<std::string> warnings;
};

inline json to_json_doc(const ProjectMeta& m) {
    json cols = json::array();
    for (const auto& [n, t] : m.columns) cols.push_back({{"name", n}, {"type", to_string(t)}});
    return json{{"schema_version", ProjectMeta::kSchemaVersion},
                {"project_id", m.project_id},
                {"name", m.name},
                {"source", m.source},
                {"row_count", m.row_count},
                {"columns", std::move(cols)},
                {"load_options", load_options_to_json(m.options)},
                {"warnings", m.warnings}};
}

inline ProjectMeta project_meta_from_json(const json& j) {
    if (j.value("schema_version", 0) != ProjectMeta::kSchemaVersion)
        fail(ErrorCode::Io, "unsupported project schema version");
    ProjectMeta m;
    m.project_id = j.at("project_id").get<std::string>();
    m.name = j.value("name", m.project_id);
    m.source = j.value("source", "");
    m.row_count = j.at("row_count").get<std::size_t>();
    for (const auto& c : j.at("columns"))
        m.columns.emplace_back(c.at("name").get<std::string>(), column_type_from_string(c.at("type").get<std::string>()));
    m.options = load_options_from_json(j.at("load_options"));
    m.warnings = j.value("warnings", std::vector<std::string>{});
    return m;
}

// A project directory: project.json, data.csv (the uploaded bytes verbatim)
// and, once computed, profile.json. The CLI and the service share it.
struct ProjectDir {
    fs::path root;

    fs::path meta_path() const { return root / "project.json"; }
    fs::path data_path() const { return root / "data.csv"; }
    fs::path profile_path() const { return root / "profile.json"; }
    fs::path models_dir() const { return root / "models"; }
    bool exists() const { return fs::exists(meta_path()); }

    ProjectMeta create(const std::string& project_id, const std::string& name, const std::string& source,
                       std::string_view bytes, const LoadOptions& options) const {
        auto loaded = load_table(bytes, options, project_id);
        ProjectMeta m;
        m.project_id = project_id;
        m.name = name;
        m.source = source;
        m.row_count = loaded.dataset.row_count();
        for (const auto& c : loaded.dataset.columns()) m.columns.emplace_back(c.name, c.type);
        m.options = options;
        m.warnings = loaded.warnings;
        fs::create_directories(root);
        write_file(data_path(), bytes);
        write_file(meta_path(), to_json_doc(m).dump(2) + "\n");
        return m;
    }

    ProjectMeta meta() const {
        if (!exists()) fail(ErrorCode::UnknownProject, "no project at " + root.string());
        return project_meta_from_json(json::parse(read_file(meta_path())));
    }

    Dataset dataset() const {
        const auto m = meta();
        auto loaded = load_table(read_file(data_path()), m.options, m.project_id);
        return std::move(loaded.dataset);
    }

    std::optional<TableProfile> saved_profile() const {
        if (!fs::exists(profile_path())) return std::nullopt;
        return profile_from_json(json::parse(read_file(profile_path())));
    }

    void save_profile(const TableProfile& p) const { write_file(profile_path(), json(p).dump(2) + "\n"); }
};

// In-process project table with asynchronous profiling. At most one
// profiling job per project is live; a second start returns it.
class ProjectRegistry {
public:
    struct Entry {
        std::string project_id;
        std::string name;
        std::shared_ptr<const Dataset> dataset;
        std::shared_ptr<const TableProfile> profile;
        std::optional<std::string> job_id;
        std::optional<ProjectDir> dir;
    };

    explicit ProjectRegistry(JobRunner& runner, std::optional<fs::path> store_root = std::nullopt)
        : runner_(runner), root_(std::move(store_root)) {
        if (root_ && fs::exists(*root_ / "projects")) {
            for (const auto& e : fs::directory_iterator(*root_ / "projects")) {
                const auto name = e.path().filename().string();
                if (name.rfind("p-", 0) == 0) counter_ = std::max(counter_, parse_counter(name));
            }
        }
    }

    std::string create(std::string_view bytes, const std::string& name, const LoadOptions& options = {}) {
        std::lock_guard lock(mutex_);
        const auto id = next_id();
        auto entry = std::make_shared<Entry>();
        entry->project_id = id;
        entry->name = name;
        if (root_) {
            ProjectDir dir{*root_ / "projects" / id};
            dir.create(id, name, name, bytes, options);
            entry->dir = dir;
        }
        auto loaded = load_table(bytes, options, id);
        entry->dataset = std::make_shared<const Dataset>(std::move(loaded.dataset));
        entry->profile = pending_profile(*entry->dataset);
        projects_[id] = entry;
        return id;
    }

    JobInfo start_profiling(const std::string& project_id) {
        std::lock_guard lock(mutex_);
        auto entry = lookup(project_id);
        if (entry->job_id) {
            auto info = runner_.status(*entry->job_id);
            if (!info.finished()) return info;
        }
        auto dataset = entry->dataset;
        auto info = runner_.submit("profile", project_id, [this, entry, dataset] {
            auto profile = std::make_shared<const TableProfile>(profile_table(*dataset));
            if (entry->dir) entry->dir->save_profile(*profile);
            std::lock_guard inner(mutex_);
            entry->profile = std::move(profile);
        });
        entry->job_id = info.job_id;
        return info;
    }

    JobInfo job_status(const std::string& job_id) const { return runner_.status(job_id); }
    JobInfo wait(const std::string& job_id) const { return runner_.wait(job_id); }

    std::shared_ptr<const Dataset> dataset(const std::string& project_id) const {
        std::lock_guard lock(mutex_);
        return lookup(project_id)->dataset;
    }

    std::shared_ptr<const TableProfile> profile(const std::string& project_id) const {
        std::lock_guard lock(mutex_);
        return lookup(project_id)->profile;
    }

    std::shared_ptr<const TableProfile> ready_profile(const std::string& project_id) const {
        auto p = profile(project_id);
        if (!p->ready()) fail(ErrorCode::ProfileNotReady, "profile for '" + project_id + "' is not ready");
        return p;
    }

    std::optional<ProjectDir> dir(const std::string& project_id) const {
        std::lock_guard lock(mutex_);
        return lookup(project_id)->dir;
    }

    std::string name(const std::string& project_id) const {
        std::lock_guard lock(mutex_);
        return lookup(project_id)->name;
    }

private:
    static std::size_t parse_counter(const std::string& id) {
        try {
            return static_cast<std::size_t>(std::stoull(id.substr(2)));
        } catch (...) {
            return 0;
        }
    }

    std::string next_id() {
        char buf[32];
        std::snprintf(buf, sizeof buf, "p-%06zu", ++counter_);
        return buf;
    }

    static std::shared_ptr<const TableProfile> pending_profile(const Dataset& ds) {
        auto p = std::make_shared<TableProfile>();
        p->row_count = ds.row_count();
        p->status = ProfileStatus::Pending;
        return p;
    }

    // Lazily loads projects persisted by an earlier process. Caller holds mutex_.
    std::shared_ptr<Entry> lookup(const std::string& project_id) const {
        const auto it = projects_.find(project_id);
        if (it != projects_.end()) return it->second;
        if (root_ && project_id.find('/') == std::string::npos && project_id.find("..") == std::string::npos) {
            ProjectDir dir{*root_ / "projects" / project_id};
            if (dir.exists()) {
                auto entry = std::make_shared<Entry>();
                const auto meta = dir.meta();
                entry->project_id = project_id;
                entry->name = meta.name;
                entry->dataset = std::make_shared<const Dataset>(dir.dataset());
                if (auto saved = dir.saved_profile(); saved && saved->ready())
                    entry->profile = std::make_shared<const TableProfile>(std::move(*saved));
                else
                    entry->profile = pending_profile(*entry->dataset);
                entry->dir = dir;
                projects_[project_id] = entry;
                return entry;
            }
        }
        fail(ErrorCode::UnknownProject, "unknown project '" + project_id + "'");
    }

    JobRunner& runner_;
    std::optional<fs::path> root_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::string, std::shared_ptr<Entry>> projects_;
    std::size_t counter_ = 0;
};

}  // namespace tabula
