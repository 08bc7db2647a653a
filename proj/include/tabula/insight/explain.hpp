#pragma once

#include <string>
#include <vector>

#include "tabula/analysis/result.hpp"
#include "tabula/insight/fidelity.hpp"

namespace tabula::insight {

namespace detail {

inline std::string first_label(const analysis::AnalysisResult& r, std::string_view table) {
    const auto* t = r.table(table);
    return t && !t->row_labels.empty() ? t->row_labels.front() : std::string();
}

inline std::string text_of(const analysis::AnalysisResult& r, std::string_view key) {
    const auto* f = r.finding(key);
    return f && !f->number ? f->text : std::string();
}

inline bool has(const analysis::AnalysisResult& r, std::string_view key) {
    const auto* f = r.finding(key);
    return f && f->number && std::isfinite(*f->number);
}

inline std::string n(const analysis::AnalysisResult& r, std::string_view key) { return num(r.number(key)); }

inline std::string shares_sentence(const analysis::AnalysisResult& r) {
    return first_label(r, "summary") + " has " + n(r, "levels") + " distinct values over " + n(r, "count") +
           " rows; the most common is " + text_of(r, "top_level") + " with a share of " + n(r, "top_share") + ".";
}

inline std::string body(const analysis::AnalysisResult& r) {
    switch (r.plan.intention) {
        case Intention::Distribution:
            if (r.finding("top_level")) return shares_sentence(r);
            return first_label(r, "summary") + " has " + n(r, "count") + " values with mean " + n(r, "mean") +
                   " and median " + n(r, "median") + ". Values range from " + n(r, "min") + " to " + n(r, "max") +
                   " with standard deviation " + n(r, "std") + ".";
        case Intention::Proportion: return shares_sentence(r);
        case Intention::Trend: {
            const auto col = first_label(r, "summary");
            const double slope = r.number("slope");
            const std::string dir = slope > 0 ? "rises" : slope < 0 ? "falls" : "stays flat";
            return col + " " + dir + " over " + n(r, "points") + " time points, from " + n(r, "first") + " to " +
                   n(r, "last") + " (slope " + n(r, "slope") + " per day).";
        }
        case Intention::Forecast:
            return "Holt smoothing of " + first_label(r, "model") + " projects " + n(r, "first_prediction") +
                   " for the next step and " + n(r, "last_prediction") + " after " + n(r, "horizon") +
                   " steps (residual standard deviation " + n(r, "residual_std") + ").";
        case Intention::Comparison: {
            std::string s = text_of(r, "highest_group") + " has the highest mean at " + n(r, "highest_mean") + ".";
            if (has(r, "p_value")) {
                if (text_of(r, "significant") == "yes")
                    s += " The two groups differ significantly (Welch t " + n(r, "t") + ", p " + n(r, "p_value") + ").";
                else
                    s += " There is no significant difference between the two groups (p " + n(r, "p_value") + ").";
            }
            return s;
        }
        case Intention::RootCause: {
            const auto* f = r.table("factors");
            std::string s = "The top factor separating high and low " + text_of(r, "target") + " is " +
                            text_of(r, "top_factor") + " with score " + n(r, "top_score") + ".";
            if (f && f->rows.size() > 1)
                s += " Next come " + f->row_labels[1] + " (" + num(f->rows[1][0]) + ")" +
                     (f->rows.size() > 2 ? " and " + f->row_labels[2] + " (" + num(f->rows[2][0]) + ")" : std::string()) +
                     ".";
            s += " The high group has " + n(r, "high_count") + " rows and the low group " + n(r, "low_count") + ".";
            return s;
        }
        case Intention::Anomaly: {
            const double flagged = r.number("flagged");
            const auto col = first_label(r, "summary");
            if (flagged == 0) return "No unusual values were found in " + col + " (median " + n(r, "median") + ").";
            return n(r, "flagged") + " of " + n(r, "count") + " values of " + col +
                   " are unusual by modified z-score (median " + n(r, "median") + ", MAD " + n(r, "mad") + ").";
        }
        case Intention::Normality: {
            const auto col = first_label(r, "jarque_bera");
            const bool normal = text_of(r, "verdict") == "consistent with normal";
            return col + (normal ? " is consistent with a normal distribution" : " does not look normally distributed") +
                   " (Jarque-Bera " + n(r, "statistic") + ", p " + n(r, "p_value") + ", skewness " + n(r, "skewness") +
                   ", kurtosis " + n(r, "kurtosis") + ").";
        }
        case Intention::Relationship: {
            if (r.finding("association"))
                return "The association " + first_label(r, "association") + " has strength " + n(r, "association") + ".";
            const double rr = r.number("r");
            const std::string strength = std::fabs(rr) >= 0.7 ? "strong" : std::fabs(rr) >= 0.3 ? "moderate" : "weak";
            const std::string sign = rr >= 0 ? "positive" : "negative";
            return "The fit " + first_label(r, "fit") + " shows a " + strength + " " + sign +
                   " relationship (r " + n(r, "r") + ", slope " + n(r, "slope") + ", R squared " + n(r, "r_squared") + ").";
        }
        case Intention::Ranking: {
            const bool asc = text_of(r, "order") == "ascending";
            return "Ranked " + std::string(asc ? "lowest" : "highest") + " first over " + first_label(r, "summary") + ", " +
                   text_of(r, "first") + " leads with " + n(r, "first_value") + " among " + n(r, "count") + " entries.";
        }
        case Intention::Aggregation: {
            const auto* t = r.table("aggregate");
            std::string s;
            for (std::size_t c = 0; c < t->columns.size(); ++c)
                s += (c ? ", " : "") + std::string("the ") + t->columns[c] + " is " + num(t->rows[0][c]);
            s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
            s += " over all rows";
            if (t->rows.size() > 1) s += ", with a per-group breakdown in the table";
            return s + ".";
        }
    }
    fail(ErrorCode::UnknownIntention, "no template for this intention");
}

}  // namespace detail

// Prose for one result plus at most two snippets of domain context.
inline std::string explain_result(const analysis::AnalysisResult& r, const std::vector<std::string>& snippets = {}) {
    if (r.findings.empty()) fail(ErrorCode::BadRequest, "result has no findings to explain");
    std::string out = detail::body(r);
    for (const auto& w : r.warnings) out += " Note: " + w + ".";
    if (!snippets.empty()) {
        out += "\n\nDomain context:";
        for (std::size_t i = 0; i < snippets.size() && i < 2; ++i) out += "\n- " + snippets[i];
    }
    return out;
}

}  // namespace tabula::insight
