#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tabula/automl/learners.hpp"
#include "tabula/core/random.hpp"
#include "tabula/ingest/profile.hpp"

namespace tabula::automl {

enum class Metric { MAE, MSE, RMSE };

constexpr std::string_view to_string(Metric m) noexcept {
    switch (m) {
        case Metric::MAE: return "MAE";
        case Metric::MSE: return "MSE";
        case Metric::RMSE: return "RMSE";
    }
    return "RMSE";
}

inline Metric metric_from_string(std::string_view s) {
    for (auto m : {Metric::MAE, Metric::MSE, Metric::RMSE})
        if (text::iequals(s, to_string(m))) return m;
    fail(ErrorCode::BadRequest, "unknown metric '" + std::string(s) + "'");
}

inline double score(const std::vector<double>& pred, const std::vector<double>& truth, Metric m) {
    if (pred.size() != truth.size() || pred.empty())
        fail(ErrorCode::LengthMismatch, "predictions and truth need equal non-zero lengths");
    double s = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - truth[i];
        s += m == Metric::MAE ? std::fabs(d) : d * d;
    }
    s /= static_cast<double>(pred.size());
    return m == Metric::RMSE ? std::sqrt(s) : s;
}

enum class Budget { Fast, Standard, Thorough };

constexpr std::string_view to_string(Budget b) noexcept {
    switch (b) {
        case Budget::Fast: return "fast";
        case Budget::Standard: return "standard";
        case Budget::Thorough: return "thorough";
    }
    return "standard";
}

inline Budget budget_from_string(std::string_view s) {
    for (auto b : {Budget::Fast, Budget::Standard, Budget::Thorough})
        if (text::iequals(s, to_string(b))) return b;
    fail(ErrorCode::BadRequest, "unknown budget '" + std::string(s) + "'");
}

struct Candidate {
    Algorithm algorithm = Algorithm::LinearRidge;
    double param = 0.0;
    friend bool operator==(const Candidate&, const Candidate&) = default;
};

inline std::size_t folds_for(Budget b) { return b == Budget::Fast ? 3 : 5; }

// Hyperparameter grids in zoo order.
inline std::vector<Candidate> grid_for(Budget b) {
    std::vector<double> lambdas, ks, depths;
    switch (b) {
        case Budget::Fast: lambdas = {0, 1}; ks = {5}; depths = {5}; break;
        case Budget::Standard: lambdas = {0, 0.1, 1, 10}; ks = {3, 5, 10}; depths = {3, 5, 8}; break;
        case Budget::Thorough:
            lambdas = {0, 0.01, 0.1, 1, 10, 100};
            ks = {1, 3, 5, 10, 20};
            depths = {2, 3, 5, 8, 12};
            break;
    }
    std::vector<Candidate> out;
    for (double l : lambdas) out.push_back({Algorithm::LinearRidge, l});
    for (double k : ks) out.push_back({Algorithm::KnnRegressor, k});
    for (double d : depths) out.push_back({Algorithm::RegressionTree, d});
    return out;
}

struct TrainSpec {
    std::string project_id;
    std::string target;
    Metric metric = Metric::RMSE;
    Budget budget = Budget::Standard;
    std::vector<std::string> features;    // empty: every non-target, non-text column
    std::vector<Candidate> candidates;    // empty: the budget's grid
    std::uint64_t seed = 42;
    std::size_t window = 50000;
};

// Encoding of one input column. Numeric and datetime columns take one slot
// (missing cells filled with the training mean); categorical and boolean
// columns take one slot per training level plus a trailing unknown slot.
struct FeatureSpec {
    std::string name;
    ColumnType type = ColumnType::Numeric;
    std::vector<std::string> levels;
    double fill = 0.0;
    double min = 0.0, max = 0.0, median = 0.0;
    std::string mode;

    bool categorical() const { return !is_quantitative(type); }
    std::size_t width() const { return categorical() ? levels.size() + 1 : 1; }
};

using FeatureValue = std::variant<double, std::string>;
using Configuration = std::map<std::string, FeatureValue>;

struct Encoder {
    std::vector<FeatureSpec> features;

    std::size_t width() const {
        std::size_t w = 0;
        for (const auto& f : features) w += f.width();
        return w;
    }

    const FeatureSpec& feature(std::string_view name) const {
        for (const auto& f : features)
            if (text::normalize_name(f.name) == text::normalize_name(name)) return f;
        fail(ErrorCode::UnknownFeature, "unknown feature '" + std::string(name) + "'");
    }

    void append(std::vector<double>& out, const FeatureSpec& f, const FeatureValue* v) const {
        if (!f.categorical()) {
            double x = f.fill;
            if (v) {
                if (const auto* d = std::get_if<double>(v)) x = std::isnan(*d) ? f.fill : *d;
                else {
                    const auto& s = std::get<std::string>(*v);
                    auto parsed = f.type == ColumnType::Datetime ? datetime::parse(s) : text::parse_number(s);
                    if (!parsed) fail(ErrorCode::SchemaMismatch, "feature '" + f.name + "' needs a number");
                    x = *parsed;
                }
            }
            out.push_back(x);
            return;
        }
        std::string level;
        if (v) {
            if (const auto* s = std::get_if<std::string>(v)) level = *s;
            else level = text::format_number(std::get<double>(*v), 15);
        }
        const auto it = std::find(f.levels.begin(), f.levels.end(), level);
        for (std::size_t i = 0; i < f.levels.size(); ++i) out.push_back(it != f.levels.end() && *it == f.levels[i] ? 1.0 : 0.0);
        out.push_back(it == f.levels.end() ? 1.0 : 0.0);
    }

    std::vector<double> encode(const Configuration& c) const {
        std::vector<double> out;
        out.reserve(width());
        for (const auto& f : features) {
            const auto it = c.find(f.name);
            append(out, f, it == c.end() ? nullptr : &it->second);
        }
        return out;
    }

    std::vector<double> encode_row(const Dataset& ds, std::size_t row) const {
        std::vector<double> out;
        out.reserve(width());
        for (const auto& f : features) {
            const auto& col = ds.column(f.name);
            if (col.is_missing(row)) {
                append(out, f, nullptr);
            } else if (f.categorical()) {
                const FeatureValue v = col.cells[row];
                append(out, f, &v);
            } else {
                if (!col.has_values()) fail(ErrorCode::SchemaMismatch, "feature '" + f.name + "' is not numeric");
                const FeatureValue v = col.values[row];
                append(out, f, &v);
            }
        }
        return out;
    }
};

struct FoldPredictions {
    std::vector<double> prediction, truth;
};

struct CandidateScore {
    Candidate candidate;
    double score = 0.0;
};

struct ModelArtifact {
    static constexpr int kSchemaVersion = 1;
    std::string model_id;
    std::string project_id;
    std::string target;
    Metric metric = Metric::RMSE;
    Budget budget = Budget::Standard;
    std::uint64_t seed = 42;
    Candidate selected;
    std::vector<double> cv_scores;
    double selected_score = 0.0;
    std::vector<FoldPredictions> folds;  // out-of-fold predictions of the selected model
    std::vector<CandidateScore> leaderboard;
    Encoder encoder;
    Fitted model;
    std::size_t train_row_count = 0;
    // streaming state
    std::size_t window = 50000;
    Matrix window_x;
    std::vector<double> window_y;
    std::size_t rows_since_selection = 0;

    double predict(const Configuration& c) const { return model.predict(encoder.encode(c)); }
};

namespace detail {

inline Encoder build_encoder(const Dataset& ds, const std::vector<std::string>& names, const std::vector<std::size_t>& rows) {
    Encoder e;
    for (const auto& name : names) {
        const auto& col = ds.column(name);
        FeatureSpec f;
        f.name = col.name;
        f.type = col.type == ColumnType::Boolean ? ColumnType::Categorical : col.type;
        if (col.type == ColumnType::Text) fail(ErrorCode::ColumnTypeMismatch, "text column '" + col.name + "' cannot be a feature");
        if (f.categorical()) {
            std::map<std::string, std::size_t> counts;
            for (auto r : rows)
                if (!col.is_missing(r)) ++counts[col.cells[r]];
            for (const auto& [k, n] : counts) f.levels.push_back(k);
            std::size_t best = 0;
            for (const auto& [k, n] : counts)
                if (n > best) best = n, f.mode = k;
        } else {
            std::vector<double> v;
            for (auto r : rows)
                if (!col.is_missing(r)) v.push_back(col.values[r]);
            if (!v.empty()) {
                std::sort(v.begin(), v.end());
                f.min = v.front();
                f.max = v.back();
                f.median = stats::quantile_sorted(v, 0.5);
                double s = 0.0;
                for (double x : v) s += x;
                f.fill = s / static_cast<double>(v.size());
            }
        }
        e.features.push_back(std::move(f));
    }
    return e;
}

inline bool all_constant(const Matrix& X) {
    if (X.empty() || X[0].empty()) return true;
    for (std::size_t j = 0; j < X[0].size(); ++j)
        for (const auto& r : X)
            if (r[j] != X[0][j]) return false;
    return true;
}

struct CvOutcome {
    std::vector<double> fold_scores;
    std::vector<FoldPredictions> folds;
    double mean = 0.0;
};

inline std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);
    std::vector<std::vector<std::size_t>> folds(k);
    for (std::size_t i = 0; i < n; ++i) folds[i % k].push_back(order[i]);
    return folds;
}

inline CvOutcome cross_validate(const Candidate& c, const Matrix& X, const std::vector<double>& y,
                                const std::vector<std::vector<std::size_t>>& folds, Metric metric) {
    CvOutcome out;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<std::uint8_t> held(X.size(), 0);
        for (auto i : folds[f]) held[i] = 1;
        Matrix tx;
        std::vector<double> ty;
        for (std::size_t i = 0; i < X.size(); ++i)
            if (!held[i]) tx.push_back(X[i]), ty.push_back(y[i]);
        const auto model = fit(c.algorithm, c.param, tx, ty);
        FoldPredictions fp;
        for (auto i : folds[f]) {
            fp.prediction.push_back(model.predict(X[i]));
            fp.truth.push_back(y[i]);
        }
        out.fold_scores.push_back(score(fp.prediction, fp.truth, metric));
        out.folds.push_back(std::move(fp));
    }
    double s = 0.0;
    for (double v : out.fold_scores) s += v;
    out.mean = s / static_cast<double>(out.fold_scores.size());
    return out;
}

// Cross-validate every candidate and keep the lowest mean score; earlier
// candidates win ties.
inline void select(ModelArtifact& a, const std::vector<Candidate>& candidates) {
    const auto folds = make_folds(a.window_x.size(), folds_for(a.budget), a.seed);
    a.leaderboard.clear();
    std::optional<CvOutcome> best;
    for (const auto& c : candidates) {
        auto cv = cross_validate(c, a.window_x, a.window_y, folds, a.metric);
        a.leaderboard.push_back({c, cv.mean});
        if (!best || cv.mean < best->mean) {
            a.selected = c;
            best = std::move(cv);
        }
    }
    a.cv_scores = best->fold_scores;
    a.folds = best->folds;
    a.selected_score = best->mean;
}

inline void refit(ModelArtifact& a) {
    const auto folds = make_folds(a.window_x.size(), folds_for(a.budget), a.seed);
    auto cv = cross_validate(a.selected, a.window_x, a.window_y, folds, a.metric);
    a.cv_scores = cv.fold_scores;
    a.folds = cv.folds;
    a.selected_score = cv.mean;
    for (auto& l : a.leaderboard)
        if (l.candidate == a.selected) l.score = cv.mean;
}

}  // namespace detail

inline ModelArtifact train(const TrainSpec& spec, const Dataset& ds, std::string model_id = "model") {
    const auto& target = ds.column(spec.target);
    if (target.type != ColumnType::Numeric) fail(ErrorCode::NonNumericTarget, "target '" + target.name + "' is not numeric");
    std::vector<std::string> names;
    if (spec.features.empty()) {
        for (const auto& c : ds.columns())
            if (c.name != target.name && c.type != ColumnType::Text) names.push_back(c.name);
    } else {
        for (const auto& f : spec.features) {
            if (!ds.find(f)) fail(ErrorCode::UnknownFeature, "unknown feature '" + f + "'");
            names.push_back(ds.column(f).name);
        }
    }
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < ds.row_count(); ++i)
        if (!target.is_missing(i)) rows.push_back(i);
    if (rows.size() < 20) fail(ErrorCode::TooFewRows, "training needs at least 20 rows with a target");

    ModelArtifact a;
    a.model_id = std::move(model_id);
    a.project_id = spec.project_id;
    a.target = target.name;
    a.metric = spec.metric;
    a.budget = spec.budget;
    a.seed = spec.seed;
    a.window = spec.window;
    a.encoder = detail::build_encoder(ds, names, rows);
    for (auto r : rows) {
        a.window_x.push_back(a.encoder.encode_row(ds, r));
        a.window_y.push_back(target.values[r]);
    }
    if (a.window_x.size() > a.window) {
        const auto drop = static_cast<std::ptrdiff_t>(a.window_x.size() - a.window);
        a.window_x.erase(a.window_x.begin(), a.window_x.begin() + drop);
        a.window_y.erase(a.window_y.begin(), a.window_y.begin() + drop);
    }
    if (detail::all_constant(a.window_x)) fail(ErrorCode::AllFeaturesConstant, "every feature is constant");
    detail::select(a, spec.candidates.empty() ? grid_for(spec.budget) : spec.candidates);
    a.model = fit(a.selected.algorithm, a.selected.param, a.window_x, a.window_y);
    a.train_row_count = a.window_x.size();
    return a;
}

// Append rows to the training window and refit the selected configuration;
// when more than a quarter of the window has arrived since the last
// selection, re-run the full selection over the original grid.
inline ModelArtifact update_with_stream(const ModelArtifact& prev, const Dataset& rows) {
    if (rows.row_count() == 0) return prev;
    if (!rows.find(prev.target)) fail(ErrorCode::SchemaMismatch, "stream rows lack target '" + prev.target + "'");
    for (const auto& f : prev.encoder.features)
        if (!rows.find(f.name)) fail(ErrorCode::SchemaMismatch, "stream rows lack feature '" + f.name + "'");
    const auto& target = rows.column(prev.target);
    if (target.type != ColumnType::Numeric && target.present_count() > 0)
        fail(ErrorCode::SchemaMismatch, "stream target is not numeric");
    ModelArtifact a = prev;
    for (std::size_t i = 0; i < rows.row_count(); ++i) {
        if (target.is_missing(i)) fail(ErrorCode::SchemaMismatch, "stream row " + std::to_string(i) + " has no target");
        a.window_x.push_back(a.encoder.encode_row(rows, i));
        a.window_y.push_back(target.values[i]);
    }
    if (a.window_x.size() > a.window) {
        const auto drop = static_cast<std::ptrdiff_t>(a.window_x.size() - a.window);
        a.window_x.erase(a.window_x.begin(), a.window_x.begin() + drop);
        a.window_y.erase(a.window_y.begin(), a.window_y.begin() + drop);
    }
    a.rows_since_selection += rows.row_count();
    if (static_cast<double>(a.rows_since_selection) > 0.25 * static_cast<double>(a.window_x.size())) {
        std::vector<Candidate> grid;
        for (const auto& l : a.leaderboard) grid.push_back(l.candidate);
        detail::select(a, grid);
        a.rows_since_selection = 0;
    } else {
        detail::refit(a);
    }
    a.model = fit(a.selected.algorithm, a.selected.param, a.window_x, a.window_y);
    a.train_row_count = a.window_x.size();
    return a;
}

}  // namespace tabula::automl
