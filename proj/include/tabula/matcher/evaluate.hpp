#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tabula/matcher/matcher.hpp"

namespace tabula::matcher {

struct GoldRestriction {
    RestrictionKind kind = RestrictionKind::Average;
    std::optional<double> operand;
};

struct LabeledQuestion {
    std::string question;
    std::string source;
    std::vector<std::string> gold_columns;
    Intention gold_intention = Intention::Distribution;
    std::vector<GoldRestriction> gold_restrictions;
    bool unambiguous = false;
};

inline LabeledQuestion labeled_question_from_json(const nlohmann::json& j) {
    LabeledQuestion q;
    q.question = j.at("question").get<std::string>();
    q.source = j.at("source").get<std::string>();
    q.gold_columns = j.at("gold_columns").get<std::vector<std::string>>();
    q.gold_intention = intention_from_string(j.at("gold_intention").get<std::string>());
    for (const auto& r : j.at("gold_restrictions")) {
        GoldRestriction g;
        g.kind = restriction_kind_from_string(r.at("kind").get<std::string>());
        if (r.contains("operand") && !r.at("operand").is_null()) g.operand = r.at("operand").get<double>();
        q.gold_restrictions.push_back(g);
    }
    q.unambiguous = j.value("unambiguous", false);
    return q;
}

inline std::vector<LabeledQuestion> parse_corpus(std::string_view jsonl) {
    std::vector<LabeledQuestion> out;
    std::istringstream in{std::string(jsonl)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        try {
            out.push_back(labeled_question_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            fail(ErrorCode::BadRequest, "corpus line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

// Aspect checks. Column and restriction aspects need exact (multi)set
// equality; restrictions compare kind and operand, not the bound column.
inline bool columns_match(const QueryPlan& plan, const std::vector<std::string>& gold) {
    std::vector<std::string> a, b;
    for (const auto& m : plan.mentions) a.push_back(text::normalize_name(m.column));
    for (const auto& g : gold) b.push_back(text::normalize_name(g));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

inline bool restrictions_match(const QueryPlan& plan, const std::vector<GoldRestriction>& gold) {
    if (plan.restrictions.size() != gold.size()) return false;
    std::vector<bool> used(gold.size(), false);
    for (const auto& r : plan.restrictions) {
        bool found = false;
        for (std::size_t i = 0; i < gold.size() && !found; ++i) {
            if (used[i] || gold[i].kind != r.kind) continue;
            const bool same_operand = r.operand.has_value() == gold[i].operand.has_value() &&
                                      (!r.operand || std::fabs(*r.operand - *gold[i].operand) < 1e-9);
            if (same_operand) found = used[i] = true;
        }
        if (!found) return false;
    }
    return true;
}

struct AspectHits {
    bool column_top1 = false, column_top3 = false;
    bool intention_top1 = false, intention_top3 = false;
    bool restriction_top1 = false, restriction_top3 = false;
};

inline AspectHits score_question(const LabeledQuestion& q, const MatchResult& r) {
    AspectHits h;
    for (std::size_t i = 0; i < r.candidates.size() && i < 3; ++i) {
        const auto& p = r.candidates[i];
        const bool col = columns_match(p, q.gold_columns);
        const bool in = p.intention == q.gold_intention;
        const bool res = restrictions_match(p, q.gold_restrictions);
        if (i == 0) {
            h.column_top1 = col;
            h.intention_top1 = in;
            h.restriction_top1 = res;
        }
        h.column_top3 = h.column_top3 || col;
        h.intention_top3 = h.intention_top3 || in;
        h.restriction_top3 = h.restriction_top3 || res;
    }
    return h;
}

// One row of the accuracy table; values are percentages.
struct AccuracyRow {
    std::string source;
    std::size_t questions = 0;
    double column_top1 = 0, column_top3 = 0;
    double intention_top1 = 0, intention_top3 = 0;
    double restriction_top1 = 0, restriction_top3 = 0;
};

struct EvaluationReport {
    std::vector<AccuracyRow> rows;                 // one per source, in first-seen order
    std::vector<std::pair<LabeledQuestion, AspectHits>> details;
};

using CatalogueLookup = std::function<const std::vector<ColumnInfo>&(const std::string& source)>;

inline EvaluationReport evaluate_matcher(const std::vector<LabeledQuestion>& corpus, const CatalogueLookup& lookup,
                                         const MatcherConfig& config = {}) {
    if (corpus.empty()) fail(ErrorCode::EmptyCorpus, "corpus has no questions");
    EvaluationReport report;
    std::vector<std::string> order;
    std::map<std::string, std::array<std::size_t, 7>> tally;
    for (const auto& q : corpus) {
        AspectHits h;
        try {
            h = score_question(q, match_question(q.question, lookup(q.source), config));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoSignal && e.code() != ErrorCode::EmptyQuestion) throw;
        }
        if (!tally.count(q.source)) order.push_back(q.source);
        auto& t = tally[q.source];
        t[0] += 1;
        t[1] += h.column_top1;
        t[2] += h.column_top3;
        t[3] += h.intention_top1;
        t[4] += h.intention_top3;
        t[5] += h.restriction_top1;
        t[6] += h.restriction_top3;
        report.details.emplace_back(q, h);
    }
    for (const auto& s : order) {
        const auto& t = tally[s];
        const auto pct = [&](std::size_t k) { return 100.0 * static_cast<double>(t[k]) / static_cast<double>(t[0]); };
        report.rows.push_back({s, t[0], pct(1), pct(2), pct(3), pct(4), pct(5), pct(6)});
    }
    return report;
}

// Data source plus the six accuracy cells, one decimal.
inline std::string accuracy_csv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "Data source,Column Name Top1,Column Name Top3,Intention Top1,Intention Top3,Restriction Top1,"
           "Restriction Top3\n";
    char buf[256];
    for (const auto& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%s,%.1f,%.1f,%.1f,%.1f,%.1f,%.1f\n", r.source.c_str(), r.column_top1,
                      r.column_top3, r.intention_top1, r.intention_top3, r.restriction_top1, r.restriction_top3);
        out << buf;
    }
    return out.str();
}

}  // namespace tabula::matcher
