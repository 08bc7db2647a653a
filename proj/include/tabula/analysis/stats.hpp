#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "tabula/core/error.hpp"
#include "tabula/ingest/profile.hpp"

namespace tabula::analysis {

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double std = 0.0;  // sample, n-1
};

inline Summary summarize(const std::vector<double>& v) {
    stats::Moments m;
    for (double x : v) m.add(x);
    return {m.n, m.mean, m.sample_std()};
}

// Cohen's d with the pooled sample standard deviation, as an absolute value.
// Identical constant groups give 0; distinct constant groups give +inf.
inline double cohens_d(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) return 0.0;
    const auto sa = summarize(a), sb = summarize(b);
    const double diff = std::fabs(sa.mean - sb.mean);
    const double dof = static_cast<double>(sa.n + sb.n) - 2.0;
    if (dof <= 0.0) return 0.0;
    const double pooled = std::sqrt(((static_cast<double>(sa.n) - 1) * sa.std * sa.std +
                                     (static_cast<double>(sb.n) - 1) * sb.std * sb.std) / dof);
    if (pooled == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / pooled;
}

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;  // two-sided
};

inline WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) fail(ErrorCode::TooFewRows, "Welch test needs two values per group");
    const auto sa = summarize(a), sb = summarize(b);
    const double va = sa.std * sa.std / static_cast<double>(sa.n);
    const double vb = sb.std * sb.std / static_cast<double>(sb.n);
    const double se2 = va + vb;
    WelchResult r;
    if (se2 == 0.0) {
        r.t = sa.mean == sb.mean ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), sa.mean - sb.mean);
        r.df = static_cast<double>(sa.n + sb.n - 2);
        r.p_value = sa.mean == sb.mean ? 1.0 : 0.0;
        return r;
    }
    r.t = (sa.mean - sb.mean) / std::sqrt(se2);
    r.df = se2 * se2 /
           (va * va / (static_cast<double>(sa.n) - 1) + vb * vb / (static_cast<double>(sb.n) - 1));
    boost::math::students_t dist(r.df);
    r.p_value = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t))), 0.0, 1.0);
    return r;
}

struct JarqueBera {
    std::size_t n = 0;
    double skewness = 0.0;
    double kurtosis = 0.0;  // not excess
    double statistic = 0.0;
    double p_value = 1.0;
    bool consistent_with_normal = true;
};

inline JarqueBera jarque_bera(const std::vector<double>& v, double alpha = 0.05) {
    if (v.size() < 20) fail(ErrorCode::TooFewRows, "normality test needs at least 20 values");
    const double n = static_cast<double>(v.size());
    const double mean = summarize(v).mean;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double x : v) {
        const double d = x - mean, d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (m2 <= 0.0) fail(ErrorCode::ConstantColumn, "normality test on a constant sample");
    JarqueBera r;
    r.n = v.size();
    r.skewness = m3 / std::pow(m2, 1.5);
    r.kurtosis = m4 / (m2 * m2);
    r.statistic = n / 6.0 * (r.skewness * r.skewness + (r.kurtosis - 3.0) * (r.kurtosis - 3.0) / 4.0);
    r.p_value = std::clamp(std::exp(-r.statistic / 2.0), 0.0, 1.0);  // chi-square(2) survival
    r.consistent_with_normal = r.p_value >= alpha;
    return r;
}

struct Outliers {
    double median = 0.0;
    double mad = 0.0;
    std::vector<double> scores;        // per input value
    std::vector<std::size_t> flagged;  // indices into the input
    bool degenerate = false;           // MAD was zero
};

// Modified z-score 0.6745 (x - median) / MAD, flagged beyond 3.5.
inline Outliers modified_z(const std::vector<double>& v, double cutoff = 3.5) {
    if (v.size() < 8) fail(ErrorCode::TooFewRows, "anomaly detection needs at least 8 values");
    Outliers o;
    o.median = stats::median(v);
    std::vector<double> dev;
    dev.reserve(v.size());
    for (double x : v) dev.push_back(std::fabs(x - o.median));
    o.mad = stats::median(dev);
    o.degenerate = o.mad == 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (o.degenerate) {
            o.scores.push_back(dev[i]);
            if (dev[i] > 0.0) o.flagged.push_back(i);
        } else {
            const double m = 0.6745 * (v[i] - o.median) / o.mad;
            o.scores.push_back(m);
            if (std::fabs(m) > cutoff) o.flagged.push_back(i);
        }
    }
    return o;
}

struct HoltFit {
    double alpha = 0.5;
    double beta = 0.3;
    double level = 0.0;
    double trend = 0.0;
    double sse = 0.0;
    double residual_std = 0.0;
    bool tuned = false;
};

namespace detail {

inline HoltFit holt_run(const std::vector<double>& y, double alpha, double beta) {
    HoltFit f;
    f.alpha = alpha;
    f.beta = beta;
    f.level = y[0];
    f.trend = y[1] - y[0];
    std::vector<double> resid;
    for (std::size_t t = 1; t < y.size(); ++t) {
        const double forecast = f.level + f.trend;
        resid.push_back(y[t] - forecast);
        const double prev = f.level;
        f.level = alpha * y[t] + (1 - alpha) * forecast;
        f.trend = beta * (f.level - prev) + (1 - beta) * f.trend;
    }
    for (double r : resid) f.sse += r * r;
    f.residual_std = summarize(resid).std;
    return f;
}

}  // namespace detail

// Holt's linear method. Defaults alpha 0.5, beta 0.3; with 24 or more points
// the grid {0.1..0.9}^2 replaces them when its in-sample SSE is smaller.
inline HoltFit holt_fit(const std::vector<double>& y) {
    if (y.size() < 8) fail(ErrorCode::TooFewRows, "forecast needs at least 8 points");
    auto best = detail::holt_run(y, 0.5, 0.3);
    if (y.size() >= 24) {
        for (int a = 1; a <= 9; ++a)
            for (int b = 1; b <= 9; ++b) {
                auto f = detail::holt_run(y, a / 10.0, b / 10.0);
                if (f.sse < best.sse) {
                    best = f;
                    best.tuned = true;
                }
            }
    }
    return best;
}

struct LinearFit {
    std::size_t n = 0;
    double r = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Least squares over pairwise-complete rows.
inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> a, b;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (!std::isnan(x[i]) && !std::isnan(y[i])) {
            a.push_back(x[i]);
            b.push_back(y[i]);
        }
    if (a.size() < 2) fail(ErrorCode::TooFewRows, "relationship needs two complete rows");
    const auto sa = summarize(a), sb = summarize(b);
    if (sa.std == 0.0 || sb.std == 0.0) fail(ErrorCode::ConstantColumn, "relationship with a constant column");
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sxy += (a[i] - sa.mean) * (b[i] - sb.mean);
        sxx += (a[i] - sa.mean) * (a[i] - sa.mean);
    }
    LinearFit f;
    f.n = a.size();
    f.r = stats::pearson(a, b).value_or(0.0);
    f.slope = sxy / sxx;
    f.intercept = sb.mean - f.slope * sa.mean;
    f.r_squared = f.r * f.r;
    return f;
}

struct Histogram {
    std::vector<double> edges;  // bins + 1
    std::vector<std::size_t> counts;
};

// Freedman-Diaconis width 2 IQR n^(-1/3), bin count clamped to [5, 50].
inline Histogram fd_histogram(std::vector<double> v) {
    if (v.empty()) fail(ErrorCode::TooFewRows, "histogram of an empty column");
    std::sort(v.begin(), v.end());
    const double lo = v.front(), hi = v.back();
    const double iqr = stats::quantile_sorted(v, 0.75) - stats::quantile_sorted(v, 0.25);
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(v.size()));
    std::size_t bins = 5;
    if (width > 0.0 && hi > lo) bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    bins = std::clamp<std::size_t>(bins, 5, 50);
    Histogram h;
    const double span = hi > lo ? hi - lo : 1.0;
    const double start = hi > lo ? lo : lo - 0.5;
    for (std::size_t i = 0; i <= bins; ++i) h.edges.push_back(start + span * static_cast<double>(i) / static_cast<double>(bins));
    h.counts.assign(bins, 0);
    for (double x : v) {
        auto k = static_cast<std::size_t>((x - start) / span * static_cast<double>(bins));
        h.counts[std::min(k, bins - 1)] += 1;
    }
    return h;
}

inline std::size_t rolling_window(std::size_t n) { return std::max<std::size_t>(1, std::min<std::size_t>(7, n / 10)); }

// Trailing mean; the first window-1 entries average what is available.
inline std::vector<double> rolling_mean(const std::vector<double>& v, std::size_t window) {
    std::vector<double> out;
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        sum += v[i];
        if (i >= window) sum -= v[i - window];
        out.push_back(sum / static_cast<double>(std::min(i + 1, window)));
    }
    return out;
}

}  // namespace tabula::analysis
