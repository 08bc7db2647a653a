#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tabula/ingest/dataset.hpp"

namespace tabula {

struct NumericStats {
    double mean = 0.0;
    double sample_std = 0.0;
    double min = 0.0;
    double max = 0.0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    // set when fewer than two values; sample_std is then reported as 0.0
    bool degenerate = false;
};

struct ValueCount {
    std::string value;
    std::size_t count = 0;
};

struct ColumnProfile {
    std::string name;
    ColumnType ctype = ColumnType::Text;
    std::size_t count = 0;
    std::size_t missing_count = 0;
    std::size_t distinct_count = 0;
    std::optional<NumericStats> numeric_stats;
    std::optional<std::vector<ValueCount>> top_values;

    double missing_fraction() const {
        return count == 0 ? 0.0 : static_cast<double>(missing_count) / static_cast<double>(count);
    }
};

enum class ProfileStatus { Pending, Ready, Failed };

constexpr std::string_view to_string(ProfileStatus s) noexcept {
    switch (s) {
        case ProfileStatus::Pending: return "pending";
        case ProfileStatus::Ready: return "ready";
        case ProfileStatus::Failed: return "failed";
    }
    return "pending";
}

// Square matrix with null entries for undefined pairs.
struct NullableMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<double>>> values;

    std::size_t size() const noexcept { return labels.size(); }
    const std::optional<double>& at(std::size_t i, std::size_t j) const { return values[i][j]; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (text::normalize_name(labels[i]) == text::normalize_name(name)) return i;
        return std::nullopt;
    }
};

struct TableProfile {
    std::size_t row_count = 0;
    std::vector<ColumnProfile> column_profiles;
    NullableMatrix correlation;  // Pearson r over numeric columns
    NullableMatrix association;  // [0,1] over all columns
    ProfileStatus status = ProfileStatus::Pending;
    std::optional<std::string> error;

    const ColumnProfile* find(std::string_view name) const {
        for (const auto& p : column_profiles)
            if (text::normalize_name(p.name) == text::normalize_name(name)) return &p;
        return nullptr;
    }
    bool ready() const noexcept { return status == ProfileStatus::Ready; }
};

namespace stats {

// Linear-interpolation quantile (type 7) of an ascending-sorted sample.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    if (sorted.size() == 1) return sorted.front();
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return quantile_sorted(v, 0.5);
}

// Welford running moments.
struct Moments {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double sample_variance() const { return n < 2 ? 0.0 : m2 / static_cast<double>(n - 1); }
    double sample_std() const { return std::sqrt(sample_variance()); }
};

// Pearson r over rows where both inputs are finite, accumulated with
// running co-moments. Null when fewer than two pairs or either side has
// zero variance.
inline std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = 0;
    double mx = 0.0, my = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (std::isnan(x[i]) || std::isnan(y[i])) continue;
        ++n;
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        mx += dx / static_cast<double>(n);
        my += dy / static_cast<double>(n);
        sxx += dx * (x[i] - mx);
        syy += dy * (y[i] - my);
        sxy += dx * (y[i] - my);
    }
    if (n < 2 || sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Cramér's V between two label vectors; empty strings are missing.
inline std::optional<double> cramers_v(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::map<std::string, std::size_t> ra, rb;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i].empty() || b[i].empty()) continue;
        pairs.emplace_back(ra.emplace(a[i], ra.size()).first->second, rb.emplace(b[i], rb.size()).first->second);
    }
    const std::size_t r = ra.size(), c = rb.size();
    if (r < 2 || c < 2 || pairs.empty()) return std::nullopt;
    std::vector<double> table(r * c, 0.0), row(r, 0.0), col(c, 0.0);
    for (auto [i, j] : pairs) {
        table[i * c + j] += 1.0;
        row[i] += 1.0;
        col[j] += 1.0;
    }
    const double n = static_cast<double>(pairs.size());
    double chi2 = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const double e = row[i] * col[j] / n;
            const double d = table[i * c + j] - e;
            chi2 += d * d / e;
        }
    const double k = static_cast<double>(std::min(r, c) - 1);
    return std::clamp(std::sqrt(chi2 / (n * k)), 0.0, 1.0);
}

// Correlation ratio eta of a numeric response against category labels.
inline std::optional<double> correlation_ratio(const std::vector<std::string>& labels, const std::vector<double>& y) {
    std::map<std::string, Moments> groups;
    Moments all;
    for (std::size_t i = 0; i < labels.size() && i < y.size(); ++i) {
        if (labels[i].empty() || std::isnan(y[i])) continue;
        groups[labels[i]].add(y[i]);
        all.add(y[i]);
    }
    if (all.n < 2 || all.m2 <= 0.0) return std::nullopt;
    double between = 0.0;
    for (const auto& [_, g] : groups) {
        const double d = g.mean - all.mean;
        between += static_cast<double>(g.n) * d * d;
    }
    return std::clamp(std::sqrt(between / all.m2), 0.0, 1.0);
}

}  // namespace stats

// Statistics over the non-missing cells of one column.
inline ColumnProfile profile_column(const Column& column, ColumnType ctype) {
    ColumnProfile p;
    p.name = column.name;
    p.ctype = ctype;
    p.count = column.size();
    p.missing_count = column.size() - column.present_count();
    if (p.missing_count == p.count) fail(ErrorCode::AllMissing, "column '" + column.name + "' has no values");

    if (ctype == ColumnType::Numeric) {
        auto v = column.present_values();
        stats::Moments m;
        for (double x : v) m.add(x);
        std::sort(v.begin(), v.end());
        NumericStats s;
        s.mean = m.mean;
        s.degenerate = v.size() < 2;
        s.sample_std = m.sample_std();
        s.min = v.front();
        s.max = v.back();
        s.q1 = stats::quantile_sorted(v, 0.25);
        s.median = stats::quantile_sorted(v, 0.5);
        s.q3 = stats::quantile_sorted(v, 0.75);
        // guard the mean against rounding outside [min, max]
        s.mean = std::clamp(s.mean, s.min, s.max);
        p.numeric_stats = s;
        p.distinct_count = static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
        return p;
    }

    std::map<std::string, std::size_t> freq;
    for (std::size_t i = 0; i < column.size(); ++i)
        if (!column.is_missing(i)) ++freq[column.cells[i]];
    p.distinct_count = freq.size();
    if (ctype != ColumnType::Datetime) {
        std::vector<ValueCount> top;
        for (const auto& [v, c] : freq) top.push_back({v, c});
        std::stable_sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.count > b.count; });
        if (top.size() > 10) top.resize(10);
        p.top_values = std::move(top);
    }
    return p;
}

// Pearson matrix over numeric columns and the [0,1] association matrix over
// all columns (|r|, Cramér's V, or eta depending on the pair's types).
inline void correlation_matrix(const Dataset& ds, TableProfile& profile) {
    const auto& cols = ds.columns();
    std::vector<std::size_t> numeric;
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i].type == ColumnType::Numeric) numeric.push_back(i);

    auto& corr = profile.correlation;
    corr.labels.clear();
    for (auto i : numeric) corr.labels.push_back(cols[i].name);
    corr.values.assign(numeric.size(), std::vector<std::optional<double>>(numeric.size()));
    for (std::size_t a = 0; a < numeric.size(); ++a) {
        for (std::size_t b = a; b < numeric.size(); ++b) {
            std::optional<double> r;
            if (a == b) {
                if (stats::pearson(cols[numeric[a]].values, cols[numeric[a]].values)) r = 1.0;
            } else {
                r = stats::pearson(cols[numeric[a]].values, cols[numeric[b]].values);
            }
            corr.values[a][b] = r;
            corr.values[b][a] = r;
        }
    }

    auto& assoc = profile.association;
    assoc.labels = ds.column_names();
    assoc.values.assign(cols.size(), std::vector<std::optional<double>>(cols.size()));
    const auto labels_of = [](const Column& c) {
        std::vector<std::string> out(c.cells);
        for (std::size_t i = 0; i < out.size(); ++i)
            if (c.is_missing(i)) out[i].clear();
        return out;
    };
    for (std::size_t a = 0; a < cols.size(); ++a) {
        for (std::size_t b = a; b < cols.size(); ++b) {
            const auto& ca = cols[a];
            const auto& cb = cols[b];
            std::optional<double> v;
            if (ca.quantitative() && cb.quantitative()) {
                if (auto r = stats::pearson(ca.values, cb.values)) v = a == b ? 1.0 : std::fabs(*r);
            } else if (is_categorical_like(ca.type) && is_categorical_like(cb.type)) {
                v = stats::cramers_v(labels_of(ca), labels_of(cb));
                if (v && a == b) v = 1.0;
            } else if (ca.quantitative() && is_categorical_like(cb.type)) {
                v = stats::correlation_ratio(labels_of(cb), ca.values);
            } else if (is_categorical_like(ca.type) && cb.quantitative()) {
                v = stats::correlation_ratio(labels_of(ca), cb.values);
            }
            assoc.values[a][b] = v;
            assoc.values[b][a] = v;
        }
    }
}

// Synchronous full profile. All-missing columns produce a bare profile
// (counts only) and null matrix entries instead of failing the table.
inline TableProfile profile_table(const Dataset& ds) {
    TableProfile tp;
    tp.row_count = ds.row_count();
    for (const auto& c : ds.columns()) {
        try {
            tp.column_profiles.push_back(profile_column(c, c.type));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::AllMissing) throw;
            ColumnProfile p;
            p.name = c.name;
            p.ctype = c.type;
            p.count = c.size();
            p.missing_count = c.size();
            tp.column_profiles.push_back(std::move(p));
        }
    }
    correlation_matrix(ds, tp);
    tp.status = ProfileStatus::Ready;
    return tp;
}

}  // namespace tabula
