#pragma once

#include "tabula/automl/simulate.hpp"
#include "tabula/ingest/json_io.hpp"

namespace tabula::automl {

inline json feature_value_json(const FeatureValue& v) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    return std::get<std::string>(v);
}

inline FeatureValue feature_value_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    fail(ErrorCode::BadRequest, "feature values must be numbers or strings");
}

inline json configuration_json(const Configuration& c) {
    json j = json::object();
    for (const auto& [k, v] : c) j[k] = feature_value_json(v);
    return j;
}

inline Configuration configuration_from(const json& j) {
    if (!j.is_object()) fail(ErrorCode::BadRequest, "configuration must be an object");
    Configuration c;
    for (const auto& [k, v] : j.items()) c[k] = feature_value_from(v);
    return c;
}

inline json hyperparameters_json(const Candidate& c) {
    switch (c.algorithm) {
        case Algorithm::LinearRidge: return {{"lambda", c.param}};
        case Algorithm::KnnRegressor: return {{"k", static_cast<std::size_t>(c.param)}};
        case Algorithm::RegressionTree: return {{"max_depth", static_cast<std::size_t>(c.param)}, {"min_leaf", 5}};
    }
    return json::object();
}

inline void to_json(json& j, const Candidate& c) {
    j = json{{"algorithm", to_string(c.algorithm)}, {"hyperparameters", hyperparameters_json(c)}};
}

inline void from_json(const json& j, Candidate& c) {
    c.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    const auto& h = j.at("hyperparameters");
    switch (c.algorithm) {
        case Algorithm::LinearRidge: c.param = h.at("lambda").get<double>(); break;
        case Algorithm::KnnRegressor: c.param = h.at("k").get<double>(); break;
        case Algorithm::RegressionTree: c.param = h.at("max_depth").get<double>(); break;
    }
}

inline void to_json(json& j, const FeatureSpec& f) {
    j = json{{"name", f.name}, {"type", to_string(f.type)}};
    if (f.categorical()) {
        j["levels"] = f.levels;
        j["unknown_slot"] = f.levels.size();
        j["mode"] = f.mode;
    } else {
        j["fill"] = f.fill;
        j["min"] = f.min;
        j["max"] = f.max;
        j["median"] = f.median;
    }
}

inline void from_json(const json& j, FeatureSpec& f) {
    f = FeatureSpec{};
    f.name = j.at("name").get<std::string>();
    f.type = column_type_from_string(j.at("type").get<std::string>());
    if (f.categorical()) {
        f.levels = j.at("levels").get<std::vector<std::string>>();
        f.mode = j.value("mode", "");
    } else {
        f.fill = j.at("fill").get<double>();
        f.min = j.at("min").get<double>();
        f.max = j.at("max").get<double>();
        f.median = j.at("median").get<double>();
    }
}

inline json model_params_json(const Fitted& m) {
    switch (m.algorithm) {
        case Algorithm::LinearRidge:
            return {{"intercept", m.ridge.intercept}, {"coefficients", m.ridge.coef}};
        case Algorithm::KnnRegressor:
            return {{"mean", m.knn.mean}, {"scale", m.knn.scale}, {"x", m.knn.x}, {"y", m.knn.y}};
        case Algorithm::RegressionTree: {
            json nodes = json::array();
            for (const auto& n : m.tree.nodes)
                nodes.push_back({{"feature", n.feature}, {"threshold", n.threshold}, {"left", n.left},
                                 {"right", n.right}, {"value", n.value}, {"count", n.count}});
            return {{"nodes", std::move(nodes)}};
        }
    }
    return json::object();
}

inline Fitted model_params_from(const Candidate& c, const json& j) {
    Fitted m;
    m.algorithm = c.algorithm;
    m.param = c.param;
    switch (c.algorithm) {
        case Algorithm::LinearRidge:
            m.ridge.lambda = c.param;
            m.ridge.intercept = j.at("intercept").get<double>();
            m.ridge.coef = j.at("coefficients").get<std::vector<double>>();
            break;
        case Algorithm::KnnRegressor:
            m.knn.k = static_cast<std::size_t>(c.param);
            m.knn.mean = j.at("mean").get<std::vector<double>>();
            m.knn.scale = j.at("scale").get<std::vector<double>>();
            m.knn.x = j.at("x").get<Matrix>();
            m.knn.y = j.at("y").get<std::vector<double>>();
            break;
        case Algorithm::RegressionTree:
            m.tree.max_depth = static_cast<std::size_t>(c.param);
            for (const auto& n : j.at("nodes")) {
                TreeNode t;
                t.feature = n.at("feature").get<int>();
                t.threshold = n.at("threshold").get<double>();
                t.left = n.at("left").get<int>();
                t.right = n.at("right").get<int>();
                t.value = n.at("value").get<double>();
                t.count = n.at("count").get<std::size_t>();
                m.tree.nodes.push_back(t);
            }
            break;
    }
    return m;
}

inline void to_json(json& j, const ModelArtifact& a) {
    json folds = json::array();
    for (const auto& f : a.folds) folds.push_back({{"prediction", f.prediction}, {"truth", f.truth}});
    json board = json::array();
    for (const auto& l : a.leaderboard) {
        json e = l.candidate;
        e["score"] = number_or_null(l.score);
        board.push_back(std::move(e));
    }
    j = json{{"schema_version", ModelArtifact::kSchemaVersion},
             {"model_id", a.model_id},
             {"project_id", a.project_id},
             {"target", a.target},
             {"metric", to_string(a.metric)},
             {"budget", to_string(a.budget)},
             {"seed", a.seed},
             {"algorithm", to_string(a.selected.algorithm)},
             {"hyperparameters", hyperparameters_json(a.selected)},
             {"cv_scores", a.cv_scores},
             {"selected_score", a.selected_score},
             {"folds", std::move(folds)},
             {"leaderboard", std::move(board)},
             {"feature_encoding", a.encoder.features},
             {"params", model_params_json(a.model)},
             {"train_row_count", a.train_row_count},
             {"window", {{"capacity", a.window},
                         {"rows_since_selection", a.rows_since_selection},
                         {"x", a.window_x},
                         {"y", a.window_y}}}};
}

inline void from_json(const json& j, ModelArtifact& a) {
    if (j.at("schema_version").get<int>() != ModelArtifact::kSchemaVersion)
        fail(ErrorCode::SchemaMismatch, "unsupported model schema version");
    a = ModelArtifact{};
    a.model_id = j.at("model_id").get<std::string>();
    a.project_id = j.value("project_id", "");
    a.target = j.at("target").get<std::string>();
    a.metric = metric_from_string(j.at("metric").get<std::string>());
    a.budget = budget_from_string(j.at("budget").get<std::string>());
    a.seed = j.at("seed").get<std::uint64_t>();
    a.selected = j.get<Candidate>();
    a.cv_scores = j.at("cv_scores").get<std::vector<double>>();
    a.selected_score = j.at("selected_score").get<double>();
    for (const auto& f : j.at("folds"))
        a.folds.push_back({f.at("prediction").get<std::vector<double>>(), f.at("truth").get<std::vector<double>>()});
    for (const auto& e : j.at("leaderboard")) {
        const auto& s = e.at("score");
        a.leaderboard.push_back({e.get<Candidate>(), s.is_null() ? std::numeric_limits<double>::quiet_NaN() : s.get<double>()});
    }
    a.encoder.features = j.at("feature_encoding").get<std::vector<FeatureSpec>>();
    a.model = model_params_from(a.selected, j.at("params"));
    a.train_row_count = j.at("train_row_count").get<std::size_t>();
    const auto& w = j.at("window");
    a.window = w.at("capacity").get<std::size_t>();
    a.rows_since_selection = w.at("rows_since_selection").get<std::size_t>();
    a.window_x = w.at("x").get<Matrix>();
    a.window_y = w.at("y").get<std::vector<double>>();
}

// Compact public view without the training window or fold predictions.
inline json artifact_summary(const ModelArtifact& a) {
    json j = a;
    j.erase("window");
    j.erase("folds");
    if (a.selected.algorithm == Algorithm::KnnRegressor) j["params"] = {{"training_rows", a.model.knn.x.size()}};
    return j;
}

inline void to_json(json& j, const TrainSpec& s) {
    j = json{{"project_id", s.project_id}, {"target", s.target},     {"metric", to_string(s.metric)},
             {"budget", to_string(s.budget)}, {"features", s.features}, {"seed", s.seed}, {"window", s.window}};
    if (!s.candidates.empty()) j["candidates"] = s.candidates;
}

inline void from_json(const json& j, TrainSpec& s) {
    s = TrainSpec{};
    s.project_id = j.value("project_id", "");
    if (!j.contains("target") || !j.at("target").is_string()) fail(ErrorCode::BadRequest, "train spec needs a target");
    s.target = j.at("target").get<std::string>();
    s.metric = metric_from_string(j.value("metric", "RMSE"));
    s.budget = budget_from_string(j.value("budget", "standard"));
    s.features = j.value("features", std::vector<std::string>{});
    s.seed = j.value("seed", std::uint64_t{42});
    s.window = j.value("window", std::size_t{50000});
    if (j.contains("candidates")) s.candidates = j.at("candidates").get<std::vector<Candidate>>();
}

inline void to_json(json& j, const FeatureRange& r) {
    j = json::object();
    if (r.fixed) j["fixed"] = feature_value_json(*r.fixed);
    if (r.lo) j["lo"] = *r.lo;
    if (r.hi) j["hi"] = *r.hi;
    if (!r.levels.empty()) j["levels"] = r.levels;
}

inline void from_json(const json& j, FeatureRange& r) {
    r = FeatureRange{};
    if (j.contains("fixed")) r.fixed = feature_value_from(j.at("fixed"));
    if (j.contains("lo")) r.lo = j.at("lo").get<double>();
    if (j.contains("hi")) r.hi = j.at("hi").get<double>();
    if (j.contains("levels")) r.levels = j.at("levels").get<std::vector<std::string>>();
}

inline void to_json(json& j, const SimulationRequest& r) {
    json ranges = json::object();
    for (const auto& [k, v] : r.ranges) ranges[k] = v;
    j = json{{"ranges", std::move(ranges)}, {"objective", to_string(r.objective)}, {"budget", r.budget}, {"seed", r.seed}};
}

inline void from_json(const json& j, SimulationRequest& r) {
    r = SimulationRequest{};
    if (j.contains("ranges"))
        for (const auto& [k, v] : j.at("ranges").items()) r.ranges[k] = v.get<FeatureRange>();
    r.objective = objective_from_string(j.value("objective", "maximize"));
    r.budget = j.value("budget", std::size_t{1000});
    r.seed = j.value("seed", std::uint64_t{7});
}

inline void to_json(json& j, const SimulationResult& r) {
    json trace = json::array();
    for (const auto& p : r.trace) trace.push_back({{"config", configuration_json(p.config)}, {"predicted", p.predicted}});
    j = json{{"best", configuration_json(r.best)}, {"predicted", r.predicted}, {"trace", std::move(trace)},
             {"warnings", r.warnings}};
}

inline void from_json(const json& j, SimulationResult& r) {
    r = SimulationResult{};
    r.best = configuration_from(j.at("best"));
    r.predicted = j.at("predicted").get<double>();
    for (const auto& p : j.at("trace")) r.trace.push_back({configuration_from(p.at("config")), p.at("predicted").get<double>()});
    r.warnings = j.value("warnings", std::vector<std::string>{});
}

}  // namespace tabula::automl
