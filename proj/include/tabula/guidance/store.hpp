#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>

#include "tabula/guidance/events.hpp"
#include "tabula/ingest/project.hpp"

namespace tabula::guidance {

// Session and report table. Writers on one session are serialized by that
// session's lock; readers get copies. With a root directory, each session
// is logged to root/sessions/<id>.jsonl and each report written to
// root/reports/<id>.json.
class SessionStore {
public:
    explicit SessionStore(std::optional<std::filesystem::path> root = std::nullopt, GuidanceConfig cfg = {})
        : root_(std::move(root)), cfg_(std::move(cfg)) {
        session_counter_ = scan("sessions", "s-");
        report_counter_ = scan("reports", "r-");
    }

    const GuidanceConfig& config() const noexcept { return cfg_; }

    std::pair<Session, Recommendation> create(const std::string& project_id, const SessionSettings& settings,
                                              const Dataset& ds, const TableProfile& p) {
        validate_settings(settings, p, cfg_);
        std::string id;
        {
            std::lock_guard lock(mutex_);
            id = next_id("s-", session_counter_);
        }
        auto started = start_session(id, project_id, settings, ds, p, cfg_);
        auto entry = std::make_shared<Entry>();
        entry->session = started.first;
        append(id, started_event(entry->session));
        std::lock_guard lock(mutex_);
        sessions_[id] = entry;
        return started;
    }

    StepOutcome step(const std::string& id, const StepInput& input, const Dataset& ds, const TableProfile& p) {
        auto entry = lookup(id);
        std::lock_guard writer(entry->writer);
        Session working = snapshot(*entry);
        auto out = guidance::step(working, input, ds, p, cfg_);
        append(id, step_event(working, working.history.size()));
        publish(*entry, std::move(working));
        return out;
    }

    insight::Report summarize(const std::string& id) {
        auto entry = lookup(id);
        std::lock_guard writer(entry->writer);
        Session working = snapshot(*entry);
        if (working.status == SessionStatus::Closed) fail(ErrorCode::SessionClosed, "session " + id + " is closed");
        if (working.history.empty()) fail(ErrorCode::EmptySession, "session " + id + " has no analysis steps");
        std::string report_id;
        {
            std::lock_guard lock(mutex_);
            report_id = next_id("r-", report_counter_);
        }
        auto report = guidance::summarize(working, report_id);
        if (root_) write_file(*root_ / "reports" / (report_id + ".json"), json(report).dump());
        append(id, closed_event(working, working.history.size() + 1));
        {
            std::lock_guard lock(mutex_);
            reports_[report_id] = report;
        }
        publish(*entry, std::move(working));
        return report;
    }

    Session session(const std::string& id) const { return snapshot(*lookup(id)); }

    insight::Report report(const std::string& report_id) const {
        std::lock_guard lock(mutex_);
        if (const auto it = reports_.find(report_id); it != reports_.end()) return it->second;
        if (root_ && plain_id(report_id)) {
            const auto path = *root_ / "reports" / (report_id + ".json");
            if (std::filesystem::exists(path)) return reports_[report_id] = json::parse(read_file(path)).get<insight::Report>();
        }
        fail(ErrorCode::UnknownReport, "no report '" + report_id + "'");
    }

    // Raw event log of a persisted session.
    std::vector<json> events(const std::string& id) const {
        lookup(id);
        if (!root_) fail(ErrorCode::NotFound, "sessions are not persisted");
        return parse_events(read_file(log_path(id)));
    }

private:
    struct Entry {
        std::mutex writer;
        mutable std::mutex state;
        Session session;
    };

    static Session snapshot(const Entry& e) {
        std::lock_guard lock(e.state);
        return e.session;
    }

    static void publish(Entry& e, Session s) {
        std::lock_guard lock(e.state);
        e.session = std::move(s);
    }

    std::size_t scan(const char* dir, const char* prefix) const {
        std::size_t n = 0;
        if (!root_ || !std::filesystem::exists(*root_ / dir)) return n;
        for (const auto& e : std::filesystem::directory_iterator(*root_ / dir)) {
            const auto stem = e.path().stem().string();
            if (stem.rfind(prefix, 0) != 0) continue;
            try {
                n = std::max(n, static_cast<std::size_t>(std::stoull(stem.substr(2))));
            } catch (...) {
            }
        }
        return n;
    }

    static std::string next_id(const char* prefix, std::size_t& counter) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s%06zu", prefix, ++counter);
        return buf;
    }

    static bool plain_id(const std::string& id) {
        return !id.empty() && id.find('/') == std::string::npos && id.find('\\') == std::string::npos &&
               id.find("..") == std::string::npos;
    }

    std::filesystem::path log_path(const std::string& id) const { return *root_ / "sessions" / (id + ".jsonl"); }

    void append(const std::string& id, const json& event) const {
        if (!root_) return;
        const auto path = log_path(id);
        std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::app | std::ios::binary);
        out << event.dump() << '\n';
        out.flush();
        if (!out) fail(ErrorCode::Io, "cannot append to " + path.string());
    }

    std::shared_ptr<Entry> lookup(const std::string& id) const {
        std::lock_guard lock(mutex_);
        if (const auto it = sessions_.find(id); it != sessions_.end()) return it->second;
        if (root_ && plain_id(id) && std::filesystem::exists(log_path(id))) {
            auto entry = std::make_shared<Entry>();
            entry->session = session_from_events(parse_events(read_file(log_path(id))));
            sessions_[id] = entry;
            return entry;
        }
        fail(ErrorCode::UnknownSession, "no session '" + id + "'");
    }

    std::optional<std::filesystem::path> root_;
    GuidanceConfig cfg_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::shared_ptr<Entry>> sessions_;
    mutable std::map<std::string, insight::Report> reports_;
    std::size_t session_counter_ = 0;
    std::size_t report_counter_ = 0;
};

}  // namespace tabula::guidance
