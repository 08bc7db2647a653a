#pragma once

#include <algorithm>
#include <functional>
#include <set>

#include "tabula/analysis/executors.hpp"
#include "tabula/insight/client.hpp"
#include "tabula/insight/explain.hpp"
#include "tabula/matcher/matcher.hpp"

namespace tabula::insight {

struct CorrelatedPair {
    std::string a, b;
    double r = 0.0;
};

// Numeric pairs ordered by |r| descending, ties in matrix order.
inline std::vector<CorrelatedPair> strongest_correlations(const TableProfile& p, std::size_t limit = 3) {
    std::vector<CorrelatedPair> out;
    const auto& m = p.correlation;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (m.at(i, j)) out.push_back({m.labels[i], m.labels[j], *m.at(i, j)});
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return std::fabs(x.r) > std::fabs(y.r); });
    if (out.size() > limit) out.resize(limit);
    return out;
}

struct DataSummary {
    std::string text;
    std::vector<double> numbers;  // every value rendered into the text
};

inline DataSummary data_summary_template(const TableProfile& p) {
    if (!p.ready()) fail(ErrorCode::ProfileNotReady, "profile is not ready");
    DataSummary s;
    const auto rows = static_cast<double>(p.row_count);
    const auto ncols = static_cast<double>(p.column_profiles.size());
    s.numbers = {rows, ncols};
    s.text = "The table has " + num(rows) + " rows and " + num(ncols) + " columns.";
    for (auto t : {ColumnType::Numeric, ColumnType::Categorical, ColumnType::Boolean, ColumnType::Datetime, ColumnType::Text}) {
        std::vector<std::string> names;
        for (const auto& c : p.column_profiles)
            if (c.ctype == t) names.push_back(c.name);
        if (names.empty()) continue;
        std::string kind(to_string(t));
        kind[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(kind[0])));
        s.text += " " + kind + " columns (" + num(static_cast<double>(names.size())) + "): " + text::join(names, ", ") + ".";
        s.numbers.push_back(static_cast<double>(names.size()));
    }
    const auto pairs = strongest_correlations(p);
    if (pairs.empty()) {
        s.text += " There are no numeric column pairs to correlate.";
    } else {
        s.text += " Strongest correlations:";
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            s.text += std::string(i ? ";" : "") + " " + pairs[i].a + " and " + pairs[i].b + " (r " + num(pairs[i].r) + ")";
            s.numbers.push_back(pairs[i].r);
        }
        s.text += ".";
    }
    std::vector<const ColumnProfile*> missing;
    for (const auto& c : p.column_profiles)
        if (c.missing_count > 0) missing.push_back(&c);
    std::stable_sort(missing.begin(), missing.end(), [](auto* a, auto* b) { return a->missing_count > b->missing_count; });
    if (missing.empty()) {
        s.text += " No column has missing values.";
    } else {
        s.text += " Most missing values:";
        for (std::size_t i = 0; i < missing.size() && i < 3; ++i) {
            s.text += std::string(i ? ";" : "") + " " + missing[i]->name + " (" + num(static_cast<double>(missing[i]->missing_count)) +
                      " of " + num(rows) + " rows)";
            s.numbers.push_back(static_cast<double>(missing[i]->missing_count));
        }
        s.text += ".";
    }
    return s;
}

// Template summary, optionally paraphrased by `client`. A paraphrase that
// drops or alters any number is discarded in favour of the template.
inline std::string generate_data_summary(const TableProfile& p, ModelClient* client = nullptr) {
    const auto s = data_summary_template(p);
    if (!client) return s.text;
    const auto out = client->complete(with_context(
        "Rewrite this description of a dataset as short plain prose. Keep every number exactly as written.", s.text));
    const auto want = numerals(s.text);
    auto got = numerals(out);
    for (const auto& n : want) {
        const auto it = std::find(got.begin(), got.end(), n);
        if (it == got.end()) return s.text;
        got.erase(it);
    }
    return out;
}

struct TopQuestion {
    std::string question;
    QueryPlan plan;
};

namespace detail {

// Average ranks (1-based) of `v`, ascending.
inline std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

inline double entropy(const ColumnProfile& c) {
    if (!c.top_values) return 0.0;
    double total = 0.0, h = 0.0;
    for (const auto& v : *c.top_values) total += static_cast<double>(v.count);
    for (const auto& v : *c.top_values) {
        const double q = static_cast<double>(v.count) / total;
        if (q > 0) h -= q * std::log(q);
    }
    return h;
}

inline std::string spoken(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '_', ' ');
    return s;
}

}  // namespace detail

struct ColumnInterest {
    std::string name;
    ColumnType type = ColumnType::Text;
    double score = 0.0;
};

// Normalized rank sum of strongest association, missing fraction and spread
// (variance for numeric, entropy for categorical; ranked within type).
// Text columns are not candidates.
inline std::vector<ColumnInterest> column_interest(const TableProfile& p) {
    std::vector<const ColumnProfile*> cols;
    for (const auto& c : p.column_profiles)
        if (c.ctype != ColumnType::Text) cols.push_back(&c);
    const auto n = cols.size();
    std::vector<double> assoc(n, 0.0), miss(n, 0.0), spread(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (const auto a = p.association.index_of(cols[i]->name)) {
            for (std::size_t j = 0; j < p.association.size(); ++j)
                if (j != *a && p.association.at(*a, j)) assoc[i] = std::max(assoc[i], *p.association.at(*a, j));
        }
        miss[i] = cols[i]->missing_fraction();
        spread[i] = cols[i]->numeric_stats ? cols[i]->numeric_stats->sample_std * cols[i]->numeric_stats->sample_std
                                           : detail::entropy(*cols[i]);
    }
    const auto norm = [](std::vector<double> r, std::size_t m) {
        for (auto& x : r) x = m > 1 ? (x - 1.0) / static_cast<double>(m - 1) : 0.0;
        return r;
    };
    const auto ra = norm(detail::ranks(assoc), n);
    const auto rm = norm(detail::ranks(miss), n);
    std::vector<double> rs(n, 0.0);
    for (bool numeric : {true, false}) {
        std::vector<std::size_t> members;
        std::vector<double> vals;
        for (std::size_t i = 0; i < n; ++i)
            if ((cols[i]->numeric_stats != std::nullopt) == numeric) members.push_back(i), vals.push_back(spread[i]);
        const auto r = norm(detail::ranks(vals), members.size());
        for (std::size_t k = 0; k < members.size(); ++k) rs[members[k]] = r[k];
    }
    std::vector<ColumnInterest> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({cols[i]->name, cols[i]->ctype, ra[i] + rm[i] + rs[i]});
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.score > b.score; });
    return out;
}

namespace detail {

struct QuestionTemplate {
    Intention intention;
    // Fills the template for column `c`; empty when it does not apply.
    std::function<std::string(const ColumnInterest& c)> fill;
    std::function<std::vector<std::string>(const ColumnInterest& c)> columns;
};

}  // namespace detail

// Exactly k distinct questions whose matcher Top1 intention is the one the
// template targets. When `data` is given, questions whose plan fails to
// execute are skipped.
inline std::vector<TopQuestion> generate_top_questions(const TableProfile& p, std::size_t k = 10,
                                                       const Dataset* data = nullptr) {
    if (!p.ready()) fail(ErrorCode::ProfileNotReady, "profile is not ready");
    if (p.column_profiles.size() < 2) fail(ErrorCode::TooFewColumns, "need at least two columns for questions");
    const auto interest = column_interest(p);
    const auto cat = matcher::catalogue(p);

    std::optional<std::string> group;  // most interesting categorical column
    bool has_time = false;
    for (const auto& c : interest)
        if (!group && is_categorical_like(c.type) && c.type != ColumnType::Boolean) group = c.name;
    for (const auto& c : p.column_profiles) has_time = has_time || c.ctype == ColumnType::Datetime;
    const auto pairs = strongest_correlations(p, 8);

    using detail::spoken;
    const auto numeric = [](const ColumnInterest& c) { return c.type == ColumnType::Numeric; };
    const auto only = [](const ColumnInterest& c) { return std::vector<std::string>{c.name}; };
    std::size_t pair_at = 0;
    const std::vector<detail::QuestionTemplate> templates{
        {Intention::Relationship,
         [&](const ColumnInterest&) -> std::string {
             if (pair_at >= pairs.size()) return "";
             return "What is the relationship between " + spoken(pairs[pair_at].a) + " and " + spoken(pairs[pair_at].b) + "?";
         },
         [&](const ColumnInterest&) {
             return pair_at < pairs.size() ? std::vector<std::string>{pairs[pair_at].a, pairs[pair_at].b}
                                           : std::vector<std::string>{};
         }},
        {Intention::Distribution,
         [&](const ColumnInterest& c) { return numeric(c) ? "What is the distribution of " + spoken(c.name) + "?" : ""; }, only},
        {Intention::RootCause,
         [&](const ColumnInterest& c) { return numeric(c) ? "What are the main factors behind " + spoken(c.name) + "?" : ""; }, only},
        {Intention::Proportion,
         [&](const ColumnInterest& c) {
             return is_categorical_like(c.type) ? "What is the proportion of each " + spoken(c.name) + "?" : "";
         },
         only},
        {Intention::Comparison,
         [&](const ColumnInterest& c) {
             return numeric(c) && group ? "Compare " + spoken(c.name) + " across " + spoken(*group) : "";
         },
         [&](const ColumnInterest& c) { return std::vector<std::string>{c.name, *group}; }},
        {Intention::Trend,
         [&](const ColumnInterest& c) { return numeric(c) && has_time ? "How does " + spoken(c.name) + " change over time?" : ""; },
         only},
        {Intention::Ranking,
         [&](const ColumnInterest& c) {
             return numeric(c) && group ? "What are the top 5 " + spoken(*group) + " by total " + spoken(c.name) + "?" : "";
         },
         [&](const ColumnInterest& c) { return std::vector<std::string>{c.name, *group}; }},
        {Intention::Aggregation,
         [&](const ColumnInterest& c) {
             return numeric(c) && group ? "What is the average " + spoken(c.name) + " for each " + spoken(*group) + "?" : "";
         },
         [&](const ColumnInterest& c) { return std::vector<std::string>{c.name, *group}; }},
        {Intention::Anomaly,
         [&](const ColumnInterest& c) { return numeric(c) ? "Are there any outliers in " + spoken(c.name) + "?" : ""; }, only},
        {Intention::Forecast,
         [&](const ColumnInterest& c) { return numeric(c) && has_time ? "Forecast the future " + spoken(c.name) : ""; }, only},
        {Intention::Normality,
         [&](const ColumnInterest& c) { return numeric(c) ? "Is " + spoken(c.name) + " normally distributed?" : ""; }, only},
    };

    std::vector<TopQuestion> out;
    std::set<std::string> seen;
    const auto accept = [&](const std::string& q, Intention want, const std::vector<std::string>& need) {
        if (q.empty() || seen.count(q)) return false;
        seen.insert(q);
        MatchResult m;
        try {
            m = matcher::match_question(q, cat);
        } catch (const Error&) {
            return false;
        }
        if (m.candidates.empty()) return false;
        const auto& plan = m.top();
        if (plan.intention != want) return false;
        const auto have = plan.columns();
        for (const auto& c : need)
            if (std::find(have.begin(), have.end(), c) == have.end()) return false;
        if (data) {
            try {
                analysis::execute(plan, *data, &p);
            } catch (const Error&) {
                return false;
            }
        }
        out.push_back({q, plan});
        return true;
    };

    // Round-robin over intentions so the list mixes analysis types; round r
    // uses each template's r-th applicable column.
    std::vector<std::size_t> cursor(templates.size(), 0);
    bool progress = true;
    while (out.size() < k && progress) {
        progress = false;
        for (std::size_t t = 0; t < templates.size() && out.size() < k; ++t) {
            const auto& tpl = templates[t];
            if (tpl.intention == Intention::Relationship) {
                while (pair_at < pairs.size()) {
                    const auto q = tpl.fill(interest.front());
                    const auto need = tpl.columns(interest.front());
                    ++pair_at;
                    progress = true;
                    if (accept(q, tpl.intention, need)) break;
                }
                continue;
            }
            while (cursor[t] < interest.size()) {
                const auto& c = interest[cursor[t]++];
                progress = true;
                const auto q = tpl.fill(c);
                if (q.empty()) continue;
                if (accept(q, tpl.intention, tpl.columns(c))) break;
            }
        }
    }
    return out;
}

struct InsightReport {
    std::string subject_summary;
    std::vector<TopQuestion> top_questions;
    std::vector<analysis::AnalysisResult> preview_results;
};

inline InsightReport build_insight_report(const TableProfile& p, const Dataset& data, std::size_t k = 10,
                                          ModelClient* client = nullptr) {
    InsightReport r;
    r.subject_summary = generate_data_summary(p, client);
    r.top_questions = generate_top_questions(p, k, &data);
    for (const auto& q : r.top_questions) {
        auto res = analysis::execute(q.plan, data, &p);
        res.insight_text = explain_result(res);
        r.preview_results.push_back(std::move(res));
    }
    return r;
}

}  // namespace tabula::insight
