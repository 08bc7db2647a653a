#pragma once

#include <atomic>
#include <condition_variable>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tabula/core/error.hpp"

namespace tabula {

enum class JobStatus { Queued, Running, Done, Failed };

constexpr std::string_view to_string(JobStatus s) noexcept {
    switch (s) {
        case JobStatus::Queued: return "queued";
        case JobStatus::Running: return "running";
        case JobStatus::Done: return "done";
        case JobStatus::Failed: return "failed";
    }
    return "queued";
}

struct JobInfo {
    std::string job_id;
    std::string kind;     // "profile", "train", "stream"
    std::string subject;  // project or model id
    JobStatus status = JobStatus::Queued;
    std::optional<std::string> error;
    std::optional<std::string> error_code;

    bool finished() const noexcept { return status == JobStatus::Done || status == JobStatus::Failed; }
};

// Background executor with a uniform job resource. Each job runs on its own
// thread; status only moves Queued -> Running -> {Done, Failed}. The
// destructor drains every running job.
class JobRunner {
public:
    JobRunner() = default;
    JobRunner(const JobRunner&) = delete;
    JobRunner& operator=(const JobRunner&) = delete;
    ~JobRunner() { drain(); }

    JobInfo submit(std::string kind, std::string subject, std::function<void()> work) {
        std::unique_lock lock(mutex_);
        JobInfo info;
        info.job_id = "job-" + std::to_string(++counter_);
        info.kind = std::move(kind);
        info.subject = std::move(subject);
        jobs_[info.job_id] = info;
        const auto id = info.job_id;
        threads_.emplace_back([this, id, work = std::move(work)] { run(id, work); });
        return info;
    }

    JobInfo status(const std::string& job_id) const {
        std::lock_guard lock(mutex_);
        const auto it = jobs_.find(job_id);
        if (it == jobs_.end()) fail(ErrorCode::UnknownJob, "unknown job '" + job_id + "'");
        return it->second;
    }

    JobInfo wait(const std::string& job_id) const {
        std::unique_lock lock(mutex_);
        const auto it = jobs_.find(job_id);
        if (it == jobs_.end()) fail(ErrorCode::UnknownJob, "unknown job '" + job_id + "'");
        changed_.wait(lock, [&] { return it->second.finished(); });
        return it->second;
    }

    void drain() {
        std::vector<std::thread> threads;
        {
            std::lock_guard lock(mutex_);
            threads.swap(threads_);
        }
        for (auto& t : threads)
            if (t.joinable()) t.join();
    }

private:
    void run(const std::string& id, const std::function<void()>& work) {
        set(id, JobStatus::Running, std::nullopt, std::nullopt);
        try {
            work();
            set(id, JobStatus::Done, std::nullopt, std::nullopt);
        } catch (const Error& e) {
            set(id, JobStatus::Failed, e.what(), std::string(e.code_name()));
        } catch (const std::exception& e) {
            set(id, JobStatus::Failed, e.what(), std::string(to_string(ErrorCode::Internal)));
        }
    }

    void set(const std::string& id, JobStatus s, std::optional<std::string> err, std::optional<std::string> code) {
        {
            std::lock_guard lock(mutex_);
            auto& j = jobs_[id];
            j.status = s;
            j.error = std::move(err);
            j.error_code = std::move(code);
        }
        changed_.notify_all();
    }

    mutable std::mutex mutex_;
    mutable std::condition_variable changed_;
    std::map<std::string, JobInfo> jobs_;
    std::vector<std::thread> threads_;
    std::size_t counter_ = 0;
};

}  // namespace tabula
