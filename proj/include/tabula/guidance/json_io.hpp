#pragma once

#include "tabula/analysis/json_io.hpp"
#include "tabula/guidance/session.hpp"
#include "tabula/matcher/json_io.hpp"

namespace tabula::guidance {

using nlohmann::json;

inline void to_json(json& j, const Recommendation& r) {
    j = json{{"question", r.question}, {"plan", r.plan}, {"rationale", r.rationale}};
}

inline void from_json(const json& j, Recommendation& r) {
    r.question = j.at("question").get<std::string>();
    r.plan = j.at("plan").get<QueryPlan>();
    r.rationale = j.value("rationale", "");
}

inline void to_json(json& j, const HistoryEntry& e) {
    j = json{{"question", e.question}, {"plan", e.plan}, {"result", e.result}};
}

inline void from_json(const json& j, HistoryEntry& e) {
    e.question = j.at("question").get<std::string>();
    e.plan = j.at("plan").get<QueryPlan>();
    e.result = j.at("result").get<analysis::AnalysisResult>();
}

inline void to_json(json& j, const SummaryDecision& d) { j = json{{"propose", d.propose}, {"reason", d.reason}}; }

inline void to_json(json& j, const Session& s) {
    j = json{{"session_id", s.session_id},
             {"project_id", s.project_id},
             {"settings", s.settings},
             {"status", to_string(s.status)},
             {"history", s.history},
             {"recommendations", s.recommendations},
             {"report_id", s.report_id}};
}

inline void from_json(const json& j, Session& s) {
    s.session_id = j.at("session_id").get<std::string>();
    s.project_id = j.value("project_id", "");
    s.settings = j.at("settings").get<SessionSettings>();
    s.status = session_status_from_string(j.at("status").get<std::string>());
    s.history = j.at("history").get<std::vector<HistoryEntry>>();
    s.recommendations = j.value("recommendations", std::vector<Recommendation>{});
    s.report_id = j.value("report_id", "");
}

inline json step_outcome_json(const StepOutcome& o) {
    return json{{"result", o.result}, {"recommendations", o.recommendations}, {"summary", o.summary}};
}

}  // namespace tabula::guidance
