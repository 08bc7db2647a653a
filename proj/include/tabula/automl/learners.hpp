#pragma once

#include <algorithm>
#include <array>
#include <string_view>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tabula/core/error.hpp"

namespace tabula::automl {

using Matrix = std::vector<std::vector<double>>;  // row-major, one vector per row

enum class Algorithm { LinearRidge, KnnRegressor, RegressionTree };

inline constexpr std::array<Algorithm, 3> kZooOrder{Algorithm::LinearRidge, Algorithm::KnnRegressor,
                                                   Algorithm::RegressionTree};

constexpr std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::LinearRidge: return "linear_ridge";
        case Algorithm::KnnRegressor: return "knn_regressor";
        case Algorithm::RegressionTree: return "regression_tree";
    }
    return "linear_ridge";
}

inline Algorithm algorithm_from_string(std::string_view s) {
    for (auto a : kZooOrder)
        if (s == to_string(a)) return a;
    fail(ErrorCode::BadRequest, "unknown algorithm '" + std::string(s) + "'");
}

// Ridge regression with an unpenalized intercept, solved from the centered
// normal equations. The orthogonal decomposition copes with rank-deficient
// one-hot blocks when lambda is 0.
struct RidgeModel {
    double lambda = 0.0;
    double intercept = 0.0;
    std::vector<double> coef;

    double predict(const std::vector<double>& x) const {
        double y = intercept;
        for (std::size_t j = 0; j < coef.size(); ++j) y += coef[j] * x[j];
        return y;
    }
};

inline RidgeModel fit_ridge(const Matrix& X, const std::vector<double>& y, double lambda) {
    const auto n = static_cast<Eigen::Index>(X.size());
    const auto p = static_cast<Eigen::Index>(X.empty() ? 0 : X[0].size());
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
    double ymean = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) mean(j) += X[i][j];
        ymean += y[i];
    }
    mean /= static_cast<double>(n);
    ymean /= static_cast<double>(n);
    Eigen::MatrixXd A(n, p);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < p; ++j) A(i, j) = X[i][j] - mean(j);
        b(i) = y[i] - ymean;
    }
    Eigen::MatrixXd gram = A.transpose() * A;
    gram.diagonal().array() += lambda;
    const Eigen::VectorXd w = gram.completeOrthogonalDecomposition().solve(A.transpose() * b);
    RidgeModel m;
    m.lambda = lambda;
    m.coef.assign(w.data(), w.data() + w.size());
    m.intercept = ymean - mean.dot(w);
    return m;
}

// k nearest neighbours on standardized features; ties in distance go to the
// earlier training row.
struct KnnModel {
    std::size_t k = 5;
    std::vector<double> mean, scale;
    Matrix x;  // standardized training rows
    std::vector<double> y;

    double predict(const std::vector<double>& raw) const {
        std::vector<double> q(raw.size());
        for (std::size_t j = 0; j < raw.size(); ++j) q[j] = (raw[j] - mean[j]) / scale[j];
        std::vector<std::pair<double, std::size_t>> d;
        d.reserve(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < q.size(); ++j) s += (x[i][j] - q[j]) * (x[i][j] - q[j]);
            d.emplace_back(s, i);
        }
        const auto kk = std::min(k, d.size());
        std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(kk), d.end());
        double sum = 0.0;
        for (std::size_t i = 0; i < kk; ++i) sum += y[d[i].second];
        return sum / static_cast<double>(kk);
    }
};

inline KnnModel fit_knn(const Matrix& X, const std::vector<double>& y, std::size_t k) {
    KnnModel m;
    m.k = k;
    const auto p = X.empty() ? 0 : X[0].size();
    m.mean.assign(p, 0.0);
    m.scale.assign(p, 0.0);
    for (const auto& r : X)
        for (std::size_t j = 0; j < p; ++j) m.mean[j] += r[j];
    for (auto& v : m.mean) v /= static_cast<double>(X.size());
    for (const auto& r : X)
        for (std::size_t j = 0; j < p; ++j) m.scale[j] += (r[j] - m.mean[j]) * (r[j] - m.mean[j]);
    for (auto& v : m.scale) {
        v = X.size() > 1 ? std::sqrt(v / static_cast<double>(X.size() - 1)) : 0.0;
        if (v == 0.0) v = 1.0;
    }
    m.x.reserve(X.size());
    for (const auto& r : X) {
        std::vector<double> s(p);
        for (std::size_t j = 0; j < p; ++j) s[j] = (r[j] - m.mean[j]) / m.scale[j];
        m.x.push_back(std::move(s));
    }
    m.y = y;
    return m;
}

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    double value = 0.0;
    std::size_t count = 0;
};

// CART regression tree: binary splits x <= threshold chosen by the largest
// reduction in squared error, leaves predict the mean.
struct TreeModel {
    std::size_t max_depth = 5;
    std::size_t min_leaf = 5;
    std::vector<TreeNode> nodes;

    double predict(const std::vector<double>& x) const {
        int at = 0;
        while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
            const auto& n = nodes[static_cast<std::size_t>(at)];
            at = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
        }
        return nodes[static_cast<std::size_t>(at)].value;
    }
};

namespace detail {

inline int grow(TreeModel& t, const Matrix& X, const std::vector<double>& y, std::vector<std::size_t> idx,
                std::size_t depth) {
    const auto node_id = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    double sum = 0.0, sumsq = 0.0;
    for (auto i : idx) sum += y[i], sumsq += y[i] * y[i];
    const double n = static_cast<double>(idx.size());
    const double parent_sse = std::max(0.0, sumsq - sum * sum / n);
    t.nodes[static_cast<std::size_t>(node_id)].value = sum / n;
    t.nodes[static_cast<std::size_t>(node_id)].count = idx.size();
    if (depth >= t.max_depth || idx.size() < 2 * t.min_leaf || parent_sse <= 0.0) return node_id;

    const auto p = X[0].size();
    int best_f = -1;
    double best_sse = parent_sse - 1e-12 * std::max(1.0, parent_sse);
    double best_thr = 0.0;
    std::vector<std::size_t> order(idx);
    for (std::size_t f = 0; f < p; ++f) {
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return X[a][f] < X[b][f]; });
        double ls = 0.0, lsq = 0.0;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            const double v = y[order[i]];
            ls += v;
            lsq += v * v;
            const std::size_t nl = i + 1, nr = order.size() - nl;
            if (nl < t.min_leaf || nr < t.min_leaf) continue;
            const double xa = X[order[i]][f], xb = X[order[i + 1]][f];
            if (!(xa < xb)) continue;
            const double rs = sum - ls, rsq = sumsq - lsq;
            const double sse = (lsq - ls * ls / static_cast<double>(nl)) + (rsq - rs * rs / static_cast<double>(nr));
            if (sse < best_sse) {
                best_sse = sse;
                best_f = static_cast<int>(f);
                best_thr = xa + (xb - xa) / 2.0;
            }
        }
    }
    if (best_f < 0) return node_id;
    std::vector<std::size_t> left, right;
    for (auto i : idx) (X[i][static_cast<std::size_t>(best_f)] <= best_thr ? left : right).push_back(i);
    idx.clear();
    idx.shrink_to_fit();
    const int l = grow(t, X, y, std::move(left), depth + 1);
    const int r = grow(t, X, y, std::move(right), depth + 1);
    auto& node = t.nodes[static_cast<std::size_t>(node_id)];
    node.feature = best_f;
    node.threshold = best_thr;
    node.left = l;
    node.right = r;
    return node_id;
}

}  // namespace detail

inline TreeModel fit_tree(const Matrix& X, const std::vector<double>& y, std::size_t max_depth, std::size_t min_leaf = 5) {
    TreeModel t;
    t.max_depth = max_depth;
    t.min_leaf = min_leaf;
    std::vector<std::size_t> idx(X.size());
    std::iota(idx.begin(), idx.end(), 0);
    detail::grow(t, X, y, std::move(idx), 0);
    return t;
}

// A fitted zoo member.
struct Fitted {
    Algorithm algorithm = Algorithm::LinearRidge;
    double param = 0.0;  // lambda, k or max depth
    RidgeModel ridge;
    KnnModel knn;
    TreeModel tree;

    double predict(const std::vector<double>& x) const {
        switch (algorithm) {
            case Algorithm::LinearRidge: return ridge.predict(x);
            case Algorithm::KnnRegressor: return knn.predict(x);
            case Algorithm::RegressionTree: return tree.predict(x);
        }
        return 0.0;
    }
};

inline Fitted fit(Algorithm a, double param, const Matrix& X, const std::vector<double>& y) {
    Fitted f;
    f.algorithm = a;
    f.param = param;
    switch (a) {
        case Algorithm::LinearRidge: f.ridge = fit_ridge(X, y, param); break;
        case Algorithm::KnnRegressor: f.knn = fit_knn(X, y, static_cast<std::size_t>(param)); break;
        case Algorithm::RegressionTree: f.tree = fit_tree(X, y, static_cast<std::size_t>(param)); break;
    }
    return f;
}

}  // namespace tabula::automl
