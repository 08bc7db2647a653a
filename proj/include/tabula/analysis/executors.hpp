#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tabula/analysis/result.hpp"
#include "tabula/analysis/stats.hpp"
#include "tabula/ingest/profile.hpp"

namespace tabula::analysis {

// ---------------------------------------------------------------------------
// Root cause

struct RootCauseSplit {
    enum class Kind { Median, Threshold, Level };
    Kind kind = Kind::Median;
    double threshold = 0.0;
    std::string level;

    static RootCauseSplit median() { return {}; }
    static RootCauseSplit at(double t) { return {Kind::Threshold, t, {}}; }
    static RootCauseSplit by_level(std::string l) { return {Kind::Level, 0.0, std::move(l)}; }
};

struct FactorScore {
    std::string column;
    double score = 0.0;
    bool categorical = false;
    double high_mean = std::numeric_limits<double>::quiet_NaN();
    double low_mean = std::numeric_limits<double>::quiet_NaN();
};

struct RootCauseResult {
    std::string target;
    std::string high_label = "high";
    std::string low_label = "low";
    double split_value = std::numeric_limits<double>::quiet_NaN();  // NaN for a level split
    std::size_t high_count = 0, low_count = 0;
    std::vector<FactorScore> factors;  // descending score, ties by column order
};

namespace detail {

inline std::vector<std::string> sorted_levels(const Column& c) {
    std::set<std::string> s;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c.is_missing(i)) s.insert(c.cells[i]);
    return {s.begin(), s.end()};
}

inline std::string most_frequent(const Column& c) {
    std::map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c.is_missing(i)) ++counts[c.cells[i]];
    std::string best;
    std::size_t n = 0;
    for (const auto& [k, v] : counts)
        if (v > n) best = k, n = v;
    return best;
}

}  // namespace detail

// Split rows into high/low groups on the target and rank every other
// numeric or categorical column by how strongly it separates them: Cohen's d
// for numeric factors, Cramér's V against the group label for categorical
// ones. Text and datetime columns are not scored.
inline RootCauseResult root_cause(const Dataset& ds, const std::string& target_name, RootCauseSplit split = {}) {
    const auto& target = ds.column(target_name);
    RootCauseResult out;
    out.target = target.name;
    std::vector<int> group(ds.row_count(), -1);  // 1 high, 0 low, -1 excluded

    if (target.type == ColumnType::Numeric) {
        if (split.kind == RootCauseSplit::Kind::Level)
            fail(ErrorCode::ColumnTypeMismatch, "level split needs a categorical target");
        const auto present = target.present_values();
        if (present.empty()) fail(ErrorCode::DegenerateSplit, "target has no values");
        out.split_value = split.kind == RootCauseSplit::Kind::Median ? stats::median(present) : split.threshold;
        for (std::size_t i = 0; i < ds.row_count(); ++i)
            if (!target.is_missing(i)) group[i] = target.values[i] > out.split_value ? 1 : 0;
    } else if (is_categorical_like(target.type)) {
        const auto levels = detail::sorted_levels(target);
        std::string level = split.level;
        if (split.kind != RootCauseSplit::Kind::Level) {
            if (levels.size() != 2) fail(ErrorCode::ColumnTypeMismatch, "categorical target needs two levels or a level");
            level = target.type == ColumnType::Boolean
                        ? (is_boolean_token(levels[0]) && boolean_value(levels[0]) == 1.0 ? levels[0] : levels[1])
                        : levels[1];
        }
        out.high_label = level;
        out.low_label = "other";
        for (std::size_t i = 0; i < ds.row_count(); ++i)
            if (!target.is_missing(i)) group[i] = target.cells[i] == level ? 1 : 0;
    } else {
        fail(ErrorCode::ColumnTypeMismatch, "root cause target must be numeric or categorical");
    }

    for (int g : group) {
        out.high_count += g == 1;
        out.low_count += g == 0;
    }
    if (out.high_count == 0 || out.low_count == 0) fail(ErrorCode::DegenerateSplit, "one split group is empty");
    if (out.high_count < 4 || out.low_count < 4) fail(ErrorCode::TooFewRows, "fewer than 4 rows in a split group");

    std::vector<std::string> label(ds.row_count());
    for (std::size_t i = 0; i < ds.row_count(); ++i) label[i] = group[i] < 0 ? "" : (group[i] ? "h" : "l");

    for (const auto& col : ds.columns()) {
        if (col.name == target.name) continue;
        FactorScore f;
        f.column = col.name;
        if (col.type == ColumnType::Numeric) {
            std::vector<double> hi, lo;
            for (std::size_t i = 0; i < ds.row_count(); ++i) {
                if (group[i] < 0 || col.is_missing(i)) continue;
                (group[i] ? hi : lo).push_back(col.values[i]);
            }
            f.score = cohens_d(hi, lo);
            if (!hi.empty()) f.high_mean = summarize(hi).mean;
            if (!lo.empty()) f.low_mean = summarize(lo).mean;
        } else if (is_categorical_like(col.type)) {
            f.categorical = true;
            std::vector<std::string> cells(col.cells);
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (col.is_missing(i)) cells[i].clear();
            f.score = stats::cramers_v(label, cells).value_or(0.0);
        } else {
            continue;
        }
        out.factors.push_back(f);
    }
    std::stable_sort(out.factors.begin(), out.factors.end(),
                     [](const FactorScore& a, const FactorScore& b) { return a.score > b.score; });
    return out;
}

// ---------------------------------------------------------------------------
// Comparison

struct GroupRow {
    std::string level;
    std::size_t count = 0;
    double mean = 0.0;
    double std = 0.0;
};

struct ComparisonResult {
    std::string group_column, value_column;
    std::vector<GroupRow> groups;  // sorted by level
    std::optional<WelchResult> welch;
};

inline ComparisonResult comparison(const Dataset& ds, const std::string& group_name, const std::string& value_name,
                                   std::size_t max_levels = 20) {
    const auto& g = ds.column(group_name);
    const auto& v = ds.column(value_name);
    if (g.quantitative()) fail(ErrorCode::ColumnTypeMismatch, "group column '" + g.name + "' is not categorical");
    if (v.type != ColumnType::Numeric) fail(ErrorCode::NonNumericValue, "value column '" + v.name + "' is not numeric");
    std::map<std::string, std::vector<double>> by;
    for (std::size_t i = 0; i < ds.row_count(); ++i)
        if (!g.is_missing(i) && !v.is_missing(i)) by[g.cells[i]].push_back(v.values[i]);
    if (by.size() > max_levels)
        fail(ErrorCode::TooManyLevels, "'" + g.name + "' has " + std::to_string(by.size()) + " levels");
    if (by.size() < 2) fail(ErrorCode::TooFewLevels, "'" + g.name + "' has fewer than 2 levels");
    ComparisonResult out{g.name, v.name, {}, std::nullopt};
    for (const auto& [level, vals] : by) {
        const auto s = summarize(vals);
        out.groups.push_back({level, s.n, s.mean, s.std});
    }
    if (by.size() == 2) {
        const auto& a = by.begin()->second;
        const auto& b = std::next(by.begin())->second;
        if (a.size() >= 2 && b.size() >= 2) out.welch = welch_t_test(a, b);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Forecast

struct ForecastResult {
    HoltFit fit;
    std::vector<double> times, predictions, lower, upper;
};

inline ForecastResult forecast(const std::vector<double>& time, const std::vector<double>& y, std::size_t horizon) {
    if (time.size() != y.size()) fail(ErrorCode::LengthMismatch, "time and value lengths differ");
    if (horizon == 0) fail(ErrorCode::BadRequest, "horizon must be positive");
    if (y.size() < 8) fail(ErrorCode::TooFewRows, "forecast needs at least 8 points");
    for (std::size_t i = 1; i < time.size(); ++i)
        if (!(time[i] > time[i - 1])) fail(ErrorCode::NonMonotoneTime, "time stamps must strictly increase");
    ForecastResult out;
    out.fit = holt_fit(y);
    const double step = (time.back() - time.front()) / static_cast<double>(time.size() - 1);
    for (std::size_t h = 1; h <= horizon; ++h) {
        const double p = out.fit.level + static_cast<double>(h) * out.fit.trend;
        out.times.push_back(time.back() + step * static_cast<double>(h));
        out.predictions.push_back(p);
        out.lower.push_back(p - 1.96 * out.fit.residual_std);
        out.upper.push_back(p + 1.96 * out.fit.residual_std);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Plan execution

namespace detail {

inline const Column* first_numeric(const Dataset& ds, const std::vector<std::string>& names) {
    for (const auto& n : names)
        if (const auto& c = ds.column(n); c.type == ColumnType::Numeric) return &c;
    return nullptr;
}

inline const Column* first_of(const Dataset& ds, const std::vector<std::string>& names, bool (*pred)(const Column&)) {
    for (const auto& n : names)
        if (const auto& c = ds.column(n); pred(c)) return &c;
    return nullptr;
}

inline bool categorical_col(const Column& c) { return is_categorical_like(c.type); }
inline bool label_col(const Column& c) { return !c.quantitative(); }
inline bool date_col(const Column& c) { return c.type == ColumnType::Datetime; }

inline std::string op_symbol(RestrictionKind k) {
    switch (k) {
        case RestrictionKind::Plus: return "+";
        case RestrictionKind::Minus: return "-";
        case RestrictionKind::Multiply: return "*";
        default: return "/";
    }
}

inline std::string lower_name(RestrictionKind k) { return text::to_lower(to_string(k)); }

// Working state after filters and arithmetic.
struct Prepared {
    Dataset data;
    std::vector<std::string> columns;  // mentioned columns, canonical names
    std::optional<std::string> derived;
    std::optional<double> split_threshold;  // root cause only
};

inline Prepared prepare(const QueryPlan& plan, const Dataset& ds) {
    Prepared p{ds, {}, std::nullopt, std::nullopt};
    for (const auto& m : plan.mentions) {
        auto name = ds.column(m.column).name;
        if (std::find(p.columns.begin(), p.columns.end(), name) == p.columns.end()) p.columns.push_back(name);
    }
    const auto default_target = [&]() -> std::string {
        const auto* c = first_numeric(ds, p.columns);
        if (!c) fail(ErrorCode::ColumnTypeMismatch, "restriction needs a numeric column");
        return c->name;
    };
    const std::optional<std::string> rc_target =
        plan.intention == Intention::RootCause && !p.columns.empty() ? std::optional(p.columns.front()) : std::nullopt;

    std::vector<std::uint8_t> keep(ds.row_count(), 1);
    bool filtered = false;
    for (const auto& r : plan.restrictions) {
        if (!is_filter(r.kind) || !r.operand) continue;
        const auto target = r.target_column ? ds.column(*r.target_column).name : default_target();
        if (rc_target && target == *rc_target && ds.column(target).type == ColumnType::Numeric) {
            p.split_threshold = *r.operand;
            continue;
        }
        const auto& c = ds.column(target);
        if (!c.quantitative()) fail(ErrorCode::ColumnTypeMismatch, "filter on non-numeric column '" + c.name + "'");
        for (std::size_t i = 0; i < ds.row_count(); ++i) {
            const double v = c.values[i];
            bool ok = !c.is_missing(i);
            if (ok && r.kind == RestrictionKind::GreaterThan) ok = v > *r.operand;
            if (ok && r.kind == RestrictionKind::LessThan) ok = v < *r.operand;
            if (ok && r.kind == RestrictionKind::EqualTo) ok = std::fabs(v - *r.operand) <= 1e-9 * std::max(1.0, std::fabs(v));
            keep[i] = keep[i] && ok;
        }
        filtered = true;
    }
    if (filtered) {
        p.data = ds.filter_rows(keep);
        if (p.data.row_count() == 0) fail(ErrorCode::EmptyAfterFilter, "no rows left after filtering");
    }

    for (const auto& r : plan.restrictions) {
        if (!is_arithmetic(r.kind) || !r.operand) continue;
        const std::string base = p.derived ? *p.derived : (r.target_column ? ds.column(*r.target_column).name : default_target());
        const auto& c = p.data.column(base);
        if (c.type != ColumnType::Numeric) fail(ErrorCode::ColumnTypeMismatch, "arithmetic on non-numeric column");
        if (r.kind == RestrictionKind::Divide && *r.operand == 0.0) fail(ErrorCode::BadRequest, "division by zero");
        std::vector<double> v(c.values);
        for (double& x : v) {
            if (std::isnan(x)) continue;
            switch (r.kind) {
                case RestrictionKind::Plus: x += *r.operand; break;
                case RestrictionKind::Minus: x -= *r.operand; break;
                case RestrictionKind::Multiply: x *= *r.operand; break;
                default: x /= *r.operand; break;
            }
        }
        const auto name = "expr(" + base + " " + op_symbol(r.kind) + " " + text::format_number(*r.operand, 15) + ")";
        if (!p.data.find(name)) p.data = p.data.with_column(make_numeric_column(name, v));
        p.derived = name;
    }
    if (p.derived) {
        // the derived column stands in for the column it was computed from
        const auto& base_name = p.data.column(*p.derived).name;
        bool replaced = false;
        for (auto& n : p.columns)
            if (!replaced && p.data.column(n).type == ColumnType::Numeric) n = base_name, replaced = true;
        if (!replaced) p.columns.push_back(base_name);
    }
    return p;
}

inline void add_finding(AnalysisResult& r, const std::string& key, const NamedTable& t, std::size_t row,
                        std::string_view column) {
    r.findings.push_back({key, t.at(row, column), {}});
}

inline void add_text(AnalysisResult& r, const std::string& key, std::string value) {
    r.findings.push_back({key, std::nullopt, std::move(value)});
}

inline const Column& value_column(const Prepared& p) {
    const auto* c = first_numeric(p.data, p.columns);
    if (!c) fail(ErrorCode::ColumnTypeMismatch, "plan needs a numeric column");
    return *c;
}

inline std::optional<RestrictionKind> first_kind(const QueryPlan& plan, bool (*pred)(RestrictionKind)) {
    for (const auto& r : plan.restrictions)
        if (pred(r.kind)) return r.kind;
    return std::nullopt;
}

inline constexpr bool is_group_aggregate(RestrictionKind k) {
    return k == RestrictionKind::Sum || k == RestrictionKind::Average || k == RestrictionKind::Median;
}

inline double aggregate(RestrictionKind k, std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    switch (k) {
        case RestrictionKind::Sum: return std::accumulate(v.begin(), v.end(), 0.0);
        case RestrictionKind::Median: return stats::median(std::move(v));
        case RestrictionKind::Maximum: return *std::max_element(v.begin(), v.end());
        case RestrictionKind::Minimum: return *std::min_element(v.begin(), v.end());
        default: return summarize(v).mean;
    }
}

// Per-time-stamp mean (or sum) series in time order.
struct Series {
    std::vector<double> time, value;
};

inline Series time_series(const Column& t, const Column& v, bool sum) {
    std::map<double, std::vector<double>> by;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!t.is_missing(i) && !v.is_missing(i)) by[t.values[i]].push_back(v.values[i]);
    Series s;
    for (auto& [time, vals] : by) {
        s.time.push_back(time);
        s.value.push_back(aggregate(sum ? RestrictionKind::Sum : RestrictionKind::Average, std::move(vals)));
    }
    return s;
}

inline std::string time_label(const Column& t, double v) {
    return t.type == ColumnType::Datetime ? datetime::format_date(v) : text::format_number(v);
}

inline const Column& time_column(const Prepared& p) {
    if (const auto* c = first_of(p.data, p.columns, date_col)) return *c;
    for (const auto& c : p.data.columns())
        if (c.type == ColumnType::Datetime) return c;
    fail(ErrorCode::ColumnTypeMismatch, "no datetime column for a time series");
}

// --- executors over the prepared dataset ----------------------------------

inline void share_table(AnalysisResult& r, const Column& c) {
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c.is_missing(i)) ++counts[c.cells[i]], ++total;
    if (total == 0) fail(ErrorCode::AllMissing, "column '" + c.name + "' has no values");
    std::vector<std::pair<std::string, std::size_t>> order(counts.begin(), counts.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    NamedTable shares{"shares", {"count", "share"}, {}, {}};
    for (const auto& [level, n] : order)
        shares.add_row(level, {static_cast<double>(n), static_cast<double>(n) / static_cast<double>(total)});
    NamedTable summary{"summary", {"levels", "count"}, {c.name}, {{static_cast<double>(order.size()), static_cast<double>(total)}}};
    r.tables.push_back(summary);
    r.tables.push_back(shares);
    add_finding(r, "levels", summary, 0, "levels");
    add_finding(r, "count", summary, 0, "count");
    add_text(r, "top_level", shares.row_labels[0]);
    add_finding(r, "top_share", shares, 0, "share");
}

inline void run_proportion(AnalysisResult& r, const Prepared& p) {
    const Column* c = first_of(p.data, p.columns, label_col);
    if (!c) fail(ErrorCode::ColumnTypeMismatch, "proportion needs a categorical column");
    share_table(r, *c);
    r.chart = {categorical_col(*c) ? ChartKind::Pie : ChartKind::Bar, {c->name, "count"}, std::nullopt, std::nullopt,
               "Share of " + c->name};
}

inline void run_distribution(AnalysisResult& r, const Prepared& p) {
    const Column* c = first_numeric(p.data, p.columns);
    if (!c) {
        const Column* l = first_of(p.data, p.columns, label_col);
        if (!l) fail(ErrorCode::ColumnTypeMismatch, "distribution needs a column");
        share_table(r, *l);
        r.chart = {ChartKind::Bar, {l->name, "count"}, std::nullopt, std::nullopt, "Distribution of " + l->name};
        return;
    }
    auto v = c->present_values();
    if (v.empty()) fail(ErrorCode::AllMissing, "column '" + c->name + "' has no values");
    const auto h = fd_histogram(v);
    std::sort(v.begin(), v.end());
    const auto s = summarize(v);
    NamedTable summary{"summary", {"count", "mean", "std", "min", "q1", "median", "q3", "max", "bins"}, {}, {}};
    summary.add_row(c->name, {static_cast<double>(s.n), s.mean, s.std, v.front(), stats::quantile_sorted(v, 0.25),
                              stats::quantile_sorted(v, 0.5), stats::quantile_sorted(v, 0.75), v.back(),
                              static_cast<double>(h.counts.size())});
    NamedTable hist{"histogram", {"lower", "upper", "count"}, {}, {}};
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        hist.add_row("bin " + std::to_string(b + 1), {h.edges[b], h.edges[b + 1], static_cast<double>(h.counts[b])});
    r.tables.push_back(summary);
    r.tables.push_back(hist);
    for (const auto* k : {"count", "mean", "median", "std", "min", "max", "bins"}) add_finding(r, k, summary, 0, k);
    r.chart = {ChartKind::Histogram, {c->name, std::nullopt}, std::nullopt, std::nullopt, "Distribution of " + c->name};
}

inline void run_normality(AnalysisResult& r, const Prepared& p) {
    const auto& c = value_column(p);
    const auto jb = jarque_bera(c.present_values());
    NamedTable t{"jarque_bera", {"count", "skewness", "kurtosis", "statistic", "p_value"}, {}, {}};
    t.add_row(c.name, {static_cast<double>(jb.n), jb.skewness, jb.kurtosis, jb.statistic, jb.p_value});
    r.tables.push_back(t);
    for (const auto* k : {"count", "skewness", "kurtosis", "statistic", "p_value"}) add_finding(r, k, t, 0, k);
    add_text(r, "verdict", jb.consistent_with_normal ? "consistent with normal" : "not normal");
    r.chart = {ChartKind::Histogram, {c.name, std::nullopt}, std::nullopt, std::nullopt, "Is " + c.name + " normal?"};
}

inline void run_anomaly(AnalysisResult& r, const Prepared& p) {
    const auto& c = value_column(p);
    std::vector<double> v;
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c.is_missing(i)) v.push_back(c.values[i]), rows.push_back(i);
    const auto o = modified_z(v);
    NamedTable summary{"summary", {"count", "median", "mad", "flagged"}, {}, {}};
    summary.add_row(c.name, {static_cast<double>(v.size()), o.median, o.mad, static_cast<double>(o.flagged.size())});
    NamedTable out{"outliers", {"row", "value", "score"}, {}, {}};
    for (auto i : o.flagged)
        out.add_row("row " + std::to_string(rows[i]), {static_cast<double>(rows[i]), v[i], o.scores[i]});
    r.tables.push_back(summary);
    r.tables.push_back(out);
    for (const auto* k : {"count", "median", "mad", "flagged"}) add_finding(r, k, summary, 0, k);
    add_text(r, "degenerate", o.degenerate ? "yes" : "no");
    r.chart = {ChartKind::Box, {c.name, std::nullopt}, std::nullopt, std::nullopt, "Unusual values of " + c.name};
}

inline void run_trend(AnalysisResult& r, const Prepared& p, const QueryPlan& plan) {
    const auto& t = time_column(p);
    const auto& v = value_column(p);
    const bool sum = first_kind(plan, [](RestrictionKind k) { return k == RestrictionKind::Sum; }).has_value();
    const auto s = time_series(t, v, sum);
    if (s.time.size() < 2) fail(ErrorCode::TooFewRows, "trend needs two time points");
    const auto w = rolling_window(s.time.size());
    const auto roll = rolling_mean(s.value, w);
    NamedTable series{"series", {"time", "value", "rolling_mean"}, {}, {}};
    for (std::size_t i = 0; i < s.time.size(); ++i) series.add_row(time_label(t, s.time[i]), {s.time[i], s.value[i], roll[i]});
    double slope = 0.0;
    try {
        slope = linear_fit(s.time, s.value).slope;
    } catch (const Error&) {
        slope = 0.0;  // flat series
    }
    NamedTable summary{"summary", {"points", "window", "slope", "first", "last"}, {}, {}};
    summary.add_row(v.name, {static_cast<double>(s.time.size()), static_cast<double>(w), slope, s.value.front(), s.value.back()});
    r.tables.push_back(summary);
    r.tables.push_back(series);
    for (const auto* k : {"points", "window", "slope", "first", "last"}) add_finding(r, k, summary, 0, k);
    r.chart = {ChartKind::Line, {t.name, std::nullopt}, Encoding{v.name, sum ? "sum" : "mean"}, std::nullopt,
               v.name + " over time"};
}

inline void run_forecast(AnalysisResult& r, const Prepared& p, const QueryPlan& plan) {
    const auto& t = time_column(p);
    const auto& v = value_column(p);
    std::size_t horizon = 10;
    for (const auto& x : plan.restrictions)
        if (is_rank_limit(x.kind) && x.operand) horizon = static_cast<std::size_t>(*x.operand);
    const auto s = time_series(t, v, false);
    const auto f = forecast(s.time, s.value, horizon);
    NamedTable model{"model", {"alpha", "beta", "residual_std", "horizon", "points"}, {}, {}};
    model.add_row(v.name, {f.fit.alpha, f.fit.beta, f.fit.residual_std, static_cast<double>(horizon),
                           static_cast<double>(s.time.size())});
    NamedTable out{"forecast", {"time", "prediction", "lower", "upper"}, {}, {}};
    for (std::size_t h = 0; h < horizon; ++h)
        out.add_row(time_label(t, f.times[h]), {f.times[h], f.predictions[h], f.lower[h], f.upper[h]});
    r.tables.push_back(model);
    r.tables.push_back(out);
    for (const auto* k : {"horizon", "alpha", "beta", "residual_std"}) add_finding(r, k, model, 0, k);
    add_finding(r, "first_prediction", out, 0, "prediction");
    add_finding(r, "last_prediction", out, horizon - 1, "prediction");
    r.chart = {ChartKind::Line, {t.name, std::nullopt}, Encoding{v.name, "forecast"}, std::nullopt,
               "Forecast of " + v.name};
}

inline void run_comparison(AnalysisResult& r, const Prepared& p) {
    const Column* g = first_of(p.data, p.columns, label_col);
    const Column* v = first_numeric(p.data, p.columns);
    if (!g) fail(ErrorCode::ColumnTypeMismatch, "comparison needs a categorical column");
    if (!v) fail(ErrorCode::NonNumericValue, "comparison needs a numeric value column");
    const auto c = comparison(p.data, g->name, v->name);
    NamedTable groups{"groups", {"count", "mean", "std"}, {}, {}};
    std::size_t best = 0;
    for (std::size_t i = 0; i < c.groups.size(); ++i) {
        groups.add_row(c.groups[i].level, {static_cast<double>(c.groups[i].count), c.groups[i].mean, c.groups[i].std});
        if (c.groups[i].mean > c.groups[best].mean) best = i;
    }
    r.tables.push_back(groups);
    add_text(r, "highest_group", c.groups[best].level);
    add_finding(r, "highest_mean", groups, best, "mean");
    if (c.welch) {
        NamedTable test{"welch", {"t", "df", "p_value"}, {}, {}};
        test.add_row(g->name, {c.welch->t, c.welch->df, c.welch->p_value});
        r.tables.push_back(test);
        for (const auto* k : {"t", "df", "p_value"}) add_finding(r, k, test, 0, k);
        add_text(r, "significant", c.welch->p_value < 0.05 ? "yes" : "no");
    }
    r.chart = {ChartKind::Box, {g->name, std::nullopt}, Encoding{v->name, std::nullopt}, std::nullopt,
               v->name + " by " + g->name};
}

inline void run_root_cause(AnalysisResult& r, const Prepared& p) {
    if (p.columns.empty()) fail(ErrorCode::ColumnTypeMismatch, "root cause needs a target column");
    const auto& target = p.data.column(p.columns.front());
    const auto split = p.split_threshold ? RootCauseSplit::at(*p.split_threshold) : RootCauseSplit::median();
    const auto rc = root_cause(p.data, target.name, split);
    if (rc.factors.empty()) fail(ErrorCode::ColumnTypeMismatch, "no numeric or categorical factor columns");
    NamedTable factors{"factors", {"score", "high_mean", "low_mean"}, {}, {}};
    for (const auto& f : rc.factors) factors.add_row(f.column, {f.score, f.high_mean, f.low_mean});
    NamedTable groups{"groups", {"count", "split_value"}, {}, {}};
    groups.add_row(rc.high_label, {static_cast<double>(rc.high_count), rc.split_value});
    groups.add_row(rc.low_label, {static_cast<double>(rc.low_count), rc.split_value});
    r.tables.push_back(factors);
    r.tables.push_back(groups);
    add_text(r, "target", rc.target);
    add_text(r, "top_factor", rc.factors.front().column);
    add_finding(r, "top_score", factors, 0, "score");
    add_finding(r, "high_count", groups, 0, "count");
    add_finding(r, "low_count", groups, 1, "count");
    if (!std::isnan(rc.split_value)) add_finding(r, "split_value", groups, 0, "split_value");
    r.chart = {ChartKind::Bar, {rc.target, "split"}, Encoding{rc.factors.front().column, "mean"}, std::nullopt,
               "What separates high and low " + rc.target};
}

inline void run_relationship(AnalysisResult& r, const Prepared& p) {
    std::vector<const Column*> cols;
    for (const auto& n : p.columns) cols.push_back(&p.data.column(n));
    if (cols.empty()) fail(ErrorCode::ColumnTypeMismatch, "relationship needs a column");
    if (cols.size() == 1) {
        // pair a lone numeric column with its most correlated numeric partner
        if (cols[0]->type != ColumnType::Numeric) fail(ErrorCode::ColumnTypeMismatch, "relationship needs two columns");
        const Column* best = nullptr;
        double best_r = -1.0;
        for (const auto& c : p.data.columns()) {
            if (&c == cols[0] || c.type != ColumnType::Numeric) continue;
            const auto rr = stats::pearson(cols[0]->values, c.values);
            if (rr && std::fabs(*rr) > best_r) best_r = std::fabs(*rr), best = &c;
        }
        if (!best) fail(ErrorCode::ConstantColumn, "no varying numeric partner column");
        cols.push_back(best);
        r.warnings.push_back("paired with most correlated column '" + best->name + "'");
    }
    const Column& a = *cols[0];
    const Column& b = *cols[1];
    if (a.type == ColumnType::Numeric && b.type == ColumnType::Numeric) {
        const auto f = linear_fit(a.values, b.values);
        NamedTable fit{"fit", {"count", "r", "slope", "intercept", "r_squared"}, {}, {}};
        fit.add_row(b.name + " ~ " + a.name, {static_cast<double>(f.n), f.r, f.slope, f.intercept, f.r_squared});
        r.tables.push_back(fit);
        for (const auto* k : {"r", "slope", "intercept", "r_squared"}) add_finding(r, k, fit, 0, k);
        r.chart = {ChartKind::Scatter, {a.name, std::nullopt}, Encoding{b.name, std::nullopt}, std::nullopt,
                   b.name + " against " + a.name};
        return;
    }
    const auto cells = [](const Column& c) {
        auto v = c.cells;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (c.is_missing(i)) v[i].clear();
        return v;
    };
    std::optional<double> assoc;
    std::string measure;
    if (is_categorical_like(a.type) && is_categorical_like(b.type)) {
        assoc = stats::cramers_v(cells(a), cells(b));
        measure = "cramers_v";
        r.chart = {ChartKind::Heatmap, {a.name, "count"}, Encoding{b.name, "count"}, std::nullopt,
                   a.name + " and " + b.name};
    } else if (is_categorical_like(a.type) && b.type == ColumnType::Numeric) {
        assoc = stats::correlation_ratio(cells(a), b.values);
        measure = "eta";
        r.chart = {ChartKind::Box, {a.name, std::nullopt}, Encoding{b.name, std::nullopt}, std::nullopt,
                   b.name + " by " + a.name};
    } else if (a.type == ColumnType::Numeric && is_categorical_like(b.type)) {
        assoc = stats::correlation_ratio(cells(b), a.values);
        measure = "eta";
        r.chart = {ChartKind::Box, {b.name, std::nullopt}, Encoding{a.name, std::nullopt}, std::nullopt,
                   a.name + " by " + b.name};
    } else {
        fail(ErrorCode::ColumnTypeMismatch, "relationship between '" + a.name + "' and '" + b.name + "' is undefined");
    }
    if (!assoc) fail(ErrorCode::ConstantColumn, "association is undefined for a constant column");
    NamedTable t{"association", {measure}, {a.name + " ~ " + b.name}, {{*assoc}}};
    r.tables.push_back(t);
    add_finding(r, "association", t, 0, measure);
    add_text(r, "measure", measure);
}

inline void run_ranking(AnalysisResult& r, const Prepared& p, const QueryPlan& plan) {
    const Column* v = nullptr;
    std::optional<RestrictionKind> limit_kind;
    double limit = 10;
    for (const auto& x : plan.restrictions) {
        if (is_rank_limit(x.kind) || x.kind == RestrictionKind::Maximum || x.kind == RestrictionKind::Minimum) {
            if (!limit_kind) {
                limit_kind = x.kind;
                limit = x.operand.value_or(1.0);
                if (x.target_column && p.data.column(*x.target_column).type == ColumnType::Numeric)
                    v = &p.data.column(*x.target_column);
            }
        }
    }
    if (!v) {
        for (const auto& x : plan.restrictions)
            if (is_aggregate(x.kind) && x.target_column && p.data.column(*x.target_column).type == ColumnType::Numeric) {
                v = &p.data.column(*x.target_column);
                break;
            }
    }
    if (!v || p.derived) v = &value_column(p);
    const bool ascending = limit_kind == RestrictionKind::Last || limit_kind == RestrictionKind::Minimum;
    const Column* label = first_of(p.data, p.columns, label_col);

    std::vector<std::pair<std::string, double>> rows;
    std::string agg_name = "value";
    if (label) {
        const auto agg = first_kind(plan, [](RestrictionKind k) { return is_group_aggregate(k); }).value_or(RestrictionKind::Sum);
        agg_name = lower_name(agg);
        std::map<std::string, std::vector<double>> by;
        std::vector<std::string> order;
        for (std::size_t i = 0; i < v->size(); ++i) {
            if (label->is_missing(i) || v->is_missing(i)) continue;
            auto [it, fresh] = by.try_emplace(label->cells[i]);
            if (fresh) order.push_back(label->cells[i]);
            it->second.push_back(v->values[i]);
        }
        std::sort(order.begin(), order.end());
        for (const auto& k : order) rows.emplace_back(k, aggregate(agg, by[k]));
    } else {
        for (std::size_t i = 0; i < v->size(); ++i)
            if (!v->is_missing(i)) rows.emplace_back("row " + std::to_string(i), v->values[i]);
    }
    if (rows.empty()) fail(ErrorCode::EmptyAfterFilter, "nothing to rank");
    std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
        return ascending ? a.second < b.second : a.second > b.second;
    });
    rows.resize(std::min(rows.size(), static_cast<std::size_t>(limit)));
    NamedTable t{"ranking", {"rank", agg_name}, {}, {}};
    for (std::size_t i = 0; i < rows.size(); ++i) t.add_row(rows[i].first, {static_cast<double>(i + 1), rows[i].second});
    NamedTable summary{"summary", {"count"}, {v->name}, {{static_cast<double>(rows.size())}}};
    r.tables.push_back(summary);
    r.tables.push_back(t);
    add_finding(r, "count", summary, 0, "count");
    add_text(r, "first", t.row_labels[0]);
    add_finding(r, "first_value", t, 0, agg_name);
    add_text(r, "order", ascending ? "ascending" : "descending");
    r.chart = {ChartKind::Bar, {label ? label->name : v->name, std::nullopt},
               Encoding{v->name, label ? std::optional(agg_name) : std::nullopt}, std::nullopt,
               std::string(ascending ? "Lowest " : "Highest ") + v->name};
}

inline void run_aggregation(AnalysisResult& r, const Prepared& p, const QueryPlan& plan) {
    const Column* v = nullptr;
    std::vector<RestrictionKind> kinds;
    for (const auto& x : plan.restrictions) {
        if (!is_aggregate(x.kind)) continue;
        if (std::find(kinds.begin(), kinds.end(), x.kind) == kinds.end()) kinds.push_back(x.kind);
        if (!v && x.target_column && p.data.column(*x.target_column).type == ColumnType::Numeric)
            v = &p.data.column(*x.target_column);
    }
    if (kinds.empty()) kinds.push_back(RestrictionKind::Average);
    if (!v || p.derived) v = &value_column(p);
    const Column* group = first_of(p.data, p.columns, label_col);
    NamedTable t{"aggregate", {}, {}, {}};
    for (auto k : kinds) t.columns.push_back(lower_name(k));
    const auto row_for = [&](const std::vector<double>& vals) {
        std::vector<double> row;
        for (auto k : kinds) row.push_back(aggregate(k, vals));
        return row;
    };
    t.add_row("all", row_for(v->present_values()));
    if (group) {
        std::map<std::string, std::vector<double>> by;
        for (std::size_t i = 0; i < v->size(); ++i)
            if (!group->is_missing(i) && !v->is_missing(i)) by[group->cells[i]].push_back(v->values[i]);
        for (const auto& [level, vals] : by) t.add_row(level, row_for(vals));
    }
    r.tables.push_back(t);
    for (auto k : kinds) add_finding(r, lower_name(k), t, 0, lower_name(k));
    r.chart = {ChartKind::Bar, {group ? group->name : v->name, std::nullopt}, Encoding{v->name, lower_name(kinds[0])},
               std::nullopt, to_string(kinds[0]).data() + std::string(" of ") + v->name};
}

}  // namespace detail

// Apply the plan's filters and arithmetic, then run the intention's executor.
// `profile` is accepted for callers that hold one; executors recompute what
// they need from the filtered rows.
inline AnalysisResult execute(const QueryPlan& plan, const Dataset& ds, const TableProfile* profile = nullptr) {
    (void)profile;
    auto p = detail::prepare(plan, ds);
    AnalysisResult r;
    r.plan = plan;
    switch (plan.intention) {
        case Intention::Distribution: detail::run_distribution(r, p); break;
        case Intention::Proportion: detail::run_proportion(r, p); break;
        case Intention::Trend: detail::run_trend(r, p, plan); break;
        case Intention::Forecast: detail::run_forecast(r, p, plan); break;
        case Intention::Comparison: detail::run_comparison(r, p); break;
        case Intention::RootCause: detail::run_root_cause(r, p); break;
        case Intention::Anomaly: detail::run_anomaly(r, p); break;
        case Intention::Normality: detail::run_normality(r, p); break;
        case Intention::Relationship: detail::run_relationship(r, p); break;
        case Intention::Ranking: detail::run_ranking(r, p, plan); break;
        case Intention::Aggregation: detail::run_aggregation(r, p, plan); break;
    }
    validate_chart(r.chart, p.data);
    return r;
}

}  // namespace tabula::analysis
