#pragma once

#include "tabula/insight/knowledge.hpp"
#include "tabula/insight/prompt.hpp"
#include "tabula/insight/report.hpp"
#include "tabula/insight/summary.hpp"

namespace tabula::insight {

inline void to_json(json& j, const TopQuestion& q) { j = json{{"question", q.question}, {"plan", q.plan}}; }

inline void from_json(const json& j, TopQuestion& q) {
    q.question = j.at("question").get<std::string>();
    q.plan = j.at("plan").get<QueryPlan>();
}

inline void to_json(json& j, const InsightReport& r) {
    j = json{{"subject_summary", r.subject_summary},
             {"top_questions", r.top_questions},
             {"preview_results", r.preview_results}};
}

inline void from_json(const json& j, InsightReport& r) {
    r.subject_summary = j.at("subject_summary").get<std::string>();
    r.top_questions = j.at("top_questions").get<std::vector<TopQuestion>>();
    r.preview_results = j.value("preview_results", std::vector<analysis::AnalysisResult>{});
}

inline json retrieval_json(const Retrieval& r) {
    json hits = json::array();
    for (const auto& h : r.hits)
        hits.push_back({{"snippet_id", h.snippet->snippet_id},
                        {"source", h.snippet->source},
                        {"text", h.snippet->text},
                        {"score", h.score}});
    return json{{"hits", std::move(hits)}, {"empty_store", r.empty_store}};
}

inline void to_json(json& j, const PromptEvalRecord& r) {
    j = json{{"prompt", r.candidate.text},
             {"task", r.candidate.task},
             {"generation", r.candidate.generation},
             {"score", r.score},
             {"accepted", r.accepted}};
}

}  // namespace tabula::insight
