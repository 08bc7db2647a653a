#pragma once

#include <sstream>

#include "tabula/automl/model.hpp"
#include "tabula/ingest/csv.hpp"

namespace tabula::automl {

enum class Objective { Minimize, Maximize };

constexpr std::string_view to_string(Objective o) noexcept { return o == Objective::Maximize ? "maximize" : "minimize"; }

inline Objective objective_from_string(std::string_view s) {
    if (text::iequals(s, "maximize")) return Objective::Maximize;
    if (text::iequals(s, "minimize")) return Objective::Minimize;
    fail(ErrorCode::BadRequest, "objective must be minimize or maximize");
}

// One feature's search domain: a numeric interval, a fixed value, or a set of
// categorical levels to enumerate.
struct FeatureRange {
    std::optional<double> lo, hi;
    std::optional<FeatureValue> fixed;
    std::vector<std::string> levels;
};

struct SimulationRequest {
    std::map<std::string, FeatureRange> ranges;
    Objective objective = Objective::Maximize;
    std::size_t budget = 1000;
    std::uint64_t seed = 7;
};

struct TracePoint {
    Configuration config;
    double predicted = 0.0;
};

struct SimulationResult {
    Configuration best;
    double predicted = 0.0;
    std::vector<TracePoint> trace;
    std::vector<std::string> warnings;
};

namespace detail {

struct Axis {
    const FeatureSpec* feature = nullptr;
    double lo = 0.0, hi = 0.0;
    std::vector<std::string> levels;  // non-empty: discrete axis
};

inline bool better(double a, double b, Objective o) { return o == Objective::Maximize ? a > b : a < b; }

}  // namespace detail

inline SimulationResult simulate(const ModelArtifact& model, const SimulationRequest& req) {
    if (req.budget == 0) fail(ErrorCode::BadRequest, "simulation budget must be positive");
    SimulationResult out;
    Configuration held;
    std::vector<detail::Axis> axes;
    std::set<std::string> declared;
    for (const auto& [name, range] : req.ranges) {
        const auto& f = model.encoder.feature(name);
        declared.insert(f.name);
        if (range.fixed) {
            held[f.name] = *range.fixed;
            continue;
        }
        detail::Axis ax;
        ax.feature = &f;
        if (f.categorical()) {
            ax.levels = range.levels.empty() ? f.levels : range.levels;
            if (ax.levels.empty()) fail(ErrorCode::EmptyRange, "feature '" + f.name + "' has no levels to search");
        } else {
            ax.lo = range.lo.value_or(f.min);
            ax.hi = range.hi.value_or(f.max);
            if (ax.lo > ax.hi) fail(ErrorCode::EmptyRange, "range for '" + f.name + "' has lo > hi");
            const double slack = 0.1 * (f.max - f.min);
            if (ax.lo < f.min - slack || ax.hi > f.max + slack) {
                out.warnings.push_back("range for '" + f.name + "' extrapolates beyond the training data");
            }
        }
        axes.push_back(std::move(ax));
    }
    for (const auto& f : model.encoder.features) {
        if (declared.count(f.name)) continue;
        if (f.categorical()) held[f.name] = f.mode;
        else held[f.name] = f.median;
    }

    std::vector<Configuration> points;
    bool all_discrete = true;
    std::size_t cardinality = 1;
    for (const auto& ax : axes) {
        if (ax.levels.empty() && ax.lo != ax.hi) all_discrete = false;
        else cardinality *= std::max<std::size_t>(1, ax.levels.size());
    }
    if (all_discrete && cardinality <= req.budget) {
        // Enumerate the full grid.
        points.assign(1, held);
        for (const auto& ax : axes) {
            std::vector<Configuration> next;
            for (const auto& p : points) {
                if (ax.levels.empty()) {
                    auto q = p;
                    q[ax.feature->name] = ax.lo;
                    next.push_back(std::move(q));
                } else {
                    for (const auto& l : ax.levels) {
                        auto q = p;
                        q[ax.feature->name] = l;
                        next.push_back(std::move(q));
                    }
                }
            }
            points = std::move(next);
        }
    } else {
        // Latin hypercube: each axis is cut into `budget` strata, sampled once
        // per stratum, and the strata are permuted independently per axis.
        Rng rng(req.seed);
        const std::size_t n = req.budget;
        points.assign(n, held);
        for (const auto& ax : axes) {
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);
            for (std::size_t i = 0; i < n; ++i) {
                const double u = (static_cast<double>(perm[i]) + rng.uniform()) / static_cast<double>(n);
                if (ax.levels.empty()) {
                    points[i][ax.feature->name] = ax.lo + u * (ax.hi - ax.lo);
                } else {
                    const auto li = std::min(ax.levels.size() - 1, static_cast<std::size_t>(u * static_cast<double>(ax.levels.size())));
                    points[i][ax.feature->name] = ax.levels[li];
                }
            }
        }
    }

    std::vector<std::size_t> tied;
    for (auto& p : points) {
        const double y = model.predict(p);
        if (out.trace.empty() || detail::better(y, out.predicted, req.objective)) {
            out.predicted = y;
            tied.clear();
        }
        if (y == out.predicted) tied.push_back(out.trace.size());
        out.trace.push_back({std::move(p), y});
    }
    // Piecewise-constant surrogates produce plateaus of equal predictions;
    // report the tied point nearest the plateau's centroid (first on ties).
    std::vector<double> centre(axes.size(), 0.0);
    for (auto t : tied)
        for (std::size_t a = 0; a < axes.size(); ++a)
            if (axes[a].levels.empty()) centre[a] += std::get<double>(out.trace[t].config.at(axes[a].feature->name));
    for (auto& c : centre) c /= static_cast<double>(tied.size());
    double best_d = INFINITY;
    for (auto t : tied) {
        double d = 0.0;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            if (!axes[a].levels.empty()) continue;
            const double span = axes[a].hi > axes[a].lo ? axes[a].hi - axes[a].lo : 1.0;
            const double z = (std::get<double>(out.trace[t].config.at(axes[a].feature->name)) - centre[a]) / span;
            d += z * z;
        }
        if (d < best_d) best_d = d, out.best = out.trace[t].config;
    }
    return out;
}

inline std::string feature_value_string(const FeatureValue& v) {
    if (const auto* d = std::get_if<double>(&v)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", *d);
        return buf;
    }
    return std::get<std::string>(v);
}

// Trace export: one row per evaluation, features in encoder order, then the prediction.
inline std::string trace_csv(const ModelArtifact& model, const SimulationResult& r) {
    std::ostringstream out;
    for (const auto& f : model.encoder.features) out << csv::quote_field(f.name, ',') << ',';
    out << "predicted\n";
    for (const auto& p : r.trace) {
        for (const auto& f : model.encoder.features) {
            const auto it = p.config.find(f.name);
            if (it != p.config.end()) out << csv::quote_field(feature_value_string(it->second), ',');
            out << ',';
        }
        out << feature_value_string(p.predicted) << '\n';
    }
    return out.str();
}

}  // namespace tabula::automl
