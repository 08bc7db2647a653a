#pragma once

#include "json.hpp"
#include "tabula/matcher/plan.hpp"

namespace tabula {

inline void to_json(nlohmann::json& j, const Restriction& r) {
    j = nlohmann::json{{"kind", to_string(r.kind)}, {"operand", nullptr}, {"target_column", nullptr}};
    if (r.operand) j["operand"] = *r.operand;
    if (r.target_column) j["target_column"] = *r.target_column;
}

inline void from_json(const nlohmann::json& j, Restriction& r) {
    r.kind = restriction_kind_from_string(j.at("kind").get<std::string>());
    r.operand.reset();
    r.target_column.reset();
    if (j.contains("operand") && !j.at("operand").is_null()) r.operand = j.at("operand").get<double>();
    if (j.contains("target_column") && !j.at("target_column").is_null())
        r.target_column = j.at("target_column").get<std::string>();
}

inline void to_json(nlohmann::json& j, const ColumnMention& m) {
    j = nlohmann::json{{"column", m.column}, {"score", m.score}, {"span", {m.span.begin, m.span.end}}};
}

inline void from_json(const nlohmann::json& j, ColumnMention& m) {
    m.column = j.at("column").get<std::string>();
    m.score = j.at("score").get<double>();
    m.span = {j.at("span").at(0).get<std::size_t>(), j.at("span").at(1).get<std::size_t>()};
}

inline void to_json(nlohmann::json& j, const QueryPlan& p) {
    j = nlohmann::json{{"intention", to_string(p.intention)},
                       {"mentions", p.mentions},
                       {"restrictions", p.restrictions},
                       {"confidence", p.confidence}};
}

inline void from_json(const nlohmann::json& j, QueryPlan& p) {
    p.intention = intention_from_string(j.at("intention").get<std::string>());
    p.mentions = j.at("mentions").get<std::vector<ColumnMention>>();
    p.restrictions = j.at("restrictions").get<std::vector<Restriction>>();
    p.confidence = j.value("confidence", 0.0);
}

inline void to_json(nlohmann::json& j, const MatchResult& r) {
    j = nlohmann::json{{"tokens", r.tokens}, {"candidates", r.candidates}};
}

inline void from_json(const nlohmann::json& j, MatchResult& r) {
    r.tokens = j.at("tokens").get<std::vector<std::string>>();
    r.candidates = j.at("candidates").get<std::vector<QueryPlan>>();
}

}  // namespace tabula
