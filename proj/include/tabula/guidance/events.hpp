#pragma once

#include <sstream>

#include "tabula/guidance/json_io.hpp"

namespace tabula::guidance {

// One line of a session's append-only log. Types:
//   started  {session_id, project_id, settings, recommendations}
//   step     {question, plan, result, recommendations, status}
//   closed   {report_id}
// Every event carries "seq" (0-based) and "type".
inline json started_event(const Session& s) {
    return json{{"seq", 0},
                {"type", "started"},
                {"session_id", s.session_id},
                {"project_id", s.project_id},
                {"settings", s.settings},
                {"recommendations", s.recommendations}};
}

inline json step_event(const Session& s, std::size_t seq) {
    const auto& e = s.history.back();
    return json{{"seq", seq},
                {"type", "step"},
                {"question", e.question},
                {"plan", e.plan},
                {"result", e.result},
                {"recommendations", s.recommendations},
                {"status", to_string(s.status)}};
}

inline json closed_event(const Session& s, std::size_t seq) {
    return json{{"seq", seq}, {"type", "closed"}, {"report_id", s.report_id}};
}

inline std::vector<json> parse_events(std::string_view jsonl) {
    std::vector<json> out;
    std::istringstream in{std::string(jsonl)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("type")) fail(ErrorCode::SchemaMismatch, "malformed session event");
        out.push_back(std::move(j));
    }
    if (out.empty() || out.front().at("type") != "started")
        fail(ErrorCode::SchemaMismatch, "session log must begin with a started event");
    return out;
}

// Rebuild the session from the recorded results, without touching data.
inline Session session_from_events(const std::vector<json>& events) {
    Session s;
    for (const auto& ev : events) {
        const auto type = ev.at("type").get<std::string>();
        if (type == "started") {
            s.session_id = ev.at("session_id").get<std::string>();
            s.project_id = ev.value("project_id", "");
            s.settings = ev.at("settings").get<SessionSettings>();
            s.recommendations = ev.at("recommendations").get<std::vector<Recommendation>>();
        } else if (type == "step") {
            s.history.push_back({ev.at("question").get<std::string>(), ev.at("plan").get<QueryPlan>(),
                                 ev.at("result").get<analysis::AnalysisResult>()});
            s.recommendations = ev.at("recommendations").get<std::vector<Recommendation>>();
            s.status = session_status_from_string(ev.at("status").get<std::string>());
        } else if (type == "closed") {
            s.report_id = ev.at("report_id").get<std::string>();
            s.status = SessionStatus::Closed;
            s.recommendations.clear();
        } else {
            fail(ErrorCode::SchemaMismatch, "unknown session event '" + type + "'");
        }
    }
    return s;
}

struct Replay {
    Session session;
    std::optional<insight::Report> report;
};

// Re-execute the recorded (question, plan) sequence against `ds`.
inline Replay replay(const std::vector<json>& events, const Dataset& ds, const TableProfile& p,
                     const GuidanceConfig& cfg = {}) {
    Replay out;
    for (const auto& ev : events) {
        const auto type = ev.at("type").get<std::string>();
        if (type == "started") {
            out.session = start_session(ev.at("session_id").get<std::string>(), ev.value("project_id", ""),
                                        ev.at("settings").get<SessionSettings>(), ds, p, cfg)
                              .first;
        } else if (type == "step") {
            append_step(out.session,
                        run_step(ev.at("question").get<std::string>(), ev.at("plan").get<QueryPlan>(), ds, p), ds, p,
                        cfg);
        } else if (type == "closed") {
            out.report = summarize(out.session, ev.at("report_id").get<std::string>());
        }
    }
    return out;
}

}  // namespace tabula::guidance
