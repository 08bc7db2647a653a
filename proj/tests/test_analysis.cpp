#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tabula/analysis/executors.hpp"
#include "tabula/analysis/json_io.hpp"
#include "tabula/core/random.hpp"
#include "tabula/ingest/project.hpp"
#include "tabula/matcher/matcher.hpp"

using namespace tabula;
using namespace tabula::analysis;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::Internal;
}

QueryPlan plan(Intention i, std::vector<std::string> columns, std::vector<Restriction> r = {}) {
    QueryPlan p;
    p.intention = i;
    std::size_t at = 0;
    for (auto& c : columns) p.mentions.push_back({std::move(c), 1.0, {at, at + 1}}), ++at;
    p.restrictions = std::move(r);
    p.confidence = 1.0;
    return p;
}

Restriction restrict(RestrictionKind k, std::optional<double> operand = {}, std::optional<std::string> target = {}) {
    return {k, operand, std::move(target)};
}

Dataset numeric(std::vector<std::pair<std::string, std::vector<double>>> cols) {
    std::vector<Column> out;
    for (auto& [n, v] : cols) out.push_back(make_numeric_column(n, v));
    return Dataset("t", std::move(out));
}

Dataset bundled(const std::string& name) {
    return load_table(read_file(std::string(TABULA_DATA_DIR) + "/datasets/" + name + ".csv")).dataset;
}

// electrical_test target, humidity planted, nine decoys.
Dataset planted_table(std::uint64_t seed, std::size_t n = 500) {
    Rng rng(seed);
    std::vector<std::pair<std::string, std::vector<double>>> cols;
    std::vector<double> target(n), humidity(n);
    for (std::size_t i = 0; i < n; ++i) target[i] = rng.normal(50, 5);
    for (std::size_t i = 0; i < n; ++i) humidity[i] = target[i] + rng.normal(0, 0.01);
    cols.emplace_back("electrical_test", target);
    for (int d = 0; d < 9; ++d) {
        std::vector<double> v(n);
        for (auto& x : v) x = rng.normal(0, 1);
        cols.emplace_back("noise_" + std::to_string(d), v);
    }
    cols.emplace_back("humidity", humidity);
    return numeric(cols);
}

}  // namespace

TEST(Execute, AggregationSum) {
    const auto ds = numeric({{"sales", {1, 2, 3}}});
    const auto r = execute(plan(Intention::Aggregation, {"sales"}, {restrict(RestrictionKind::Sum, {}, "sales")}), ds);
    EXPECT_DOUBLE_EQ(r.number("sum"), 6.0);
    EXPECT_TRUE(findings_consistent(r));
}

TEST(Execute, FilterEverythingOut) {
    const auto ds = numeric({{"sales", {1, 2, 3}}});
    EXPECT_EQ(code_of([&] {
                  execute(plan(Intention::Aggregation, {"sales"}, {restrict(RestrictionKind::GreaterThan, 1e9)}), ds);
              }),
              ErrorCode::EmptyAfterFilter);
}

TEST(Execute, ArithmeticMakesDerivedColumn) {
    const auto ds = numeric({{"price", {2, 4, 6}}});
    const auto r = execute(plan(Intention::Aggregation, {"price"},
                                {restrict(RestrictionKind::Average), restrict(RestrictionKind::Multiply, 10.0)}),
                           ds);
    EXPECT_DOUBLE_EQ(r.number("average"), 40.0);
    EXPECT_EQ(r.chart.y->column, "expr(price * 10)");
    EXPECT_EQ(ds.column_count(), 1u);
}

TEST(Execute, RootCauseOnBundledManufacture) {
    const auto ds = bundled("manufacture");
    const auto r = execute(plan(Intention::RootCause, {"quality"}), ds);
    EXPECT_EQ(r.finding("target")->text, "quality");
    ASSERT_NE(r.table("factors"), nullptr);
    EXPECT_TRUE(findings_consistent(r));
    validate_chart(r.chart, ds);
}

TEST(Execute, UnknownColumn) {
    const auto ds = numeric({{"a", {1, 2, 3}}});
    EXPECT_EQ(code_of([&] { execute(plan(Intention::Distribution, {"zzz"}), ds); }), ErrorCode::UnknownColumn);
}

TEST(RootCause, PlantedHumidityRanksFirst) {
    const auto ds = planted_table(7);
    const auto rc = root_cause(ds, "electrical_test");
    EXPECT_EQ(rc.factors.front().column, "humidity");
    // d recomputed by the oracle over the same split
    std::vector<double> t = ds.column("electrical_test").values;
    const double med = oracle::quantile(t, 0.5);
    std::vector<double> hi, lo;
    for (std::size_t i = 0; i < t.size(); ++i) (t[i] > med ? hi : lo).push_back(ds.column("humidity").values[i]);
    EXPECT_NEAR(rc.factors.front().score, oracle::cohens_d(hi, lo), 1e-9);
    EXPECT_GT(rc.factors.front().score, 5 * rc.factors[1].score);
    EXPECT_EQ(rc.high_count + rc.low_count, 500u);
}

TEST(RootCause, DegenerateAndIdentical) {
    const auto constant = numeric({{"t", std::vector<double>(20, 3.0)}, {"f", std::vector<double>(20, 1.0)}});
    EXPECT_EQ(code_of([&] { root_cause(constant, "t"); }), ErrorCode::DegenerateSplit);

    std::vector<double> t, same, other;
    for (int i = 0; i < 20; ++i) {
        t.push_back(i);
        same.push_back(i % 2);  // equal mix in both halves
        other.push_back(i * 0.5);
    }
    const auto ds = numeric({{"t", t}, {"same", same}, {"other", other}});
    const auto rc = root_cause(ds, "t");
    EXPECT_EQ(rc.factors.back().column, "same");
    EXPECT_DOUBLE_EQ(rc.factors.back().score, 0.0);

    const auto small = numeric({{"t", {1, 2, 3, 4, 5, 6}}, {"f", {1, 2, 3, 4, 5, 6}}});
    EXPECT_EQ(code_of([&] { root_cause(small, "t"); }), ErrorCode::TooFewRows);
}

TEST(RootCause, InvariantUnderAffineFactorsAndMonotoneTarget) {
    const auto ds = planted_table(11, 200);
    const auto base = root_cause(ds, "electrical_test");
    std::vector<Column> cols;
    for (const auto& c : ds.columns()) {
        auto v = c.values;
        for (auto& x : v) x = c.name == "electrical_test" ? std::exp(x / 10.0) : -3.0 * x + 7.0;
        cols.push_back(make_numeric_column(c.name, v));
    }
    const auto moved = root_cause(Dataset("t", cols), "electrical_test");
    ASSERT_EQ(base.factors.size(), moved.factors.size());
    for (std::size_t i = 0; i < base.factors.size(); ++i) {
        EXPECT_EQ(base.factors[i].column, moved.factors[i].column);
        EXPECT_NEAR(base.factors[i].score, moved.factors[i].score, 1e-9);
    }
}

TEST(RootCause, CategoricalFactorsUseCramersV) {
    std::vector<std::string> t, g;
    for (int i = 0; i < 40; ++i) {
        t.push_back(std::to_string(i));
        g.push_back(i < 20 ? "a" : "b");
    }
    const auto ds = make_dataset({{"t", t}, {"g", g}});
    const auto rc = root_cause(ds, "t");
    ASSERT_EQ(rc.factors.size(), 1u);
    EXPECT_TRUE(rc.factors[0].categorical);
    EXPECT_NEAR(rc.factors[0].score, 1.0, 1e-12);
}

TEST(Comparison, IdenticalGroups) {
    const auto ds = make_dataset({{"g", {"A", "A", "A", "B", "B", "B"}}, {"v", {"1", "2", "3", "1", "2", "3"}}});
    const auto c = comparison(ds, "g", "v");
    ASSERT_TRUE(c.welch);
    EXPECT_DOUBLE_EQ(c.welch->t, 0.0);
    EXPECT_DOUBLE_EQ(c.welch->p_value, 1.0);
}

TEST(Comparison, ShiftedNormalsAndErrors) {
    Rng rng(3);
    std::vector<std::string> g, v;
    std::vector<double> a, b;
    for (int i = 0; i < 200; ++i) a.push_back(rng.normal(0, 1));
    for (int i = 0; i < 200; ++i) b.push_back(rng.normal(1, 1));
    for (double x : a) g.push_back("A"), v.push_back(std::to_string(x));
    for (double x : b) g.push_back("B"), v.push_back(std::to_string(x));
    const auto ds = make_dataset({{"g", g}, {"v", v}});
    const auto c = comparison(ds, "g", "v");
    std::vector<double> pa(ds.column("v").values.begin(), ds.column("v").values.begin() + 200);
    std::vector<double> pb(ds.column("v").values.begin() + 200, ds.column("v").values.end());
    EXPECT_NEAR(c.welch->t, oracle::welch_t(pa, pb), 1e-9);
    EXPECT_LT(c.welch->p_value, 0.001);
    EXPECT_GE(c.welch->p_value, 0.0);

    std::vector<std::string> many, vals;
    for (int i = 0; i < 100; ++i) many.push_back("L" + std::to_string(i % 25)), vals.push_back(std::to_string(i));
    const auto wide = make_dataset({{"g", many}, {"v", vals}});
    EXPECT_EQ(code_of([&] { comparison(wide, "g", "v"); }), ErrorCode::TooManyLevels);
    EXPECT_EQ(code_of([&] { comparison(ds, "g", "g"); }), ErrorCode::NonNumericValue);
}

TEST(Anomaly, Examples) {
    auto o = modified_z({1, 1, 1, 1, 1, 1, 1, 100});
    EXPECT_TRUE(o.degenerate);  // MAD is zero here, so the fallback flags the distinct value
    EXPECT_EQ(o.flagged, (std::vector<std::size_t>{7}));

    o = modified_z(std::vector<double>(10, 4.0));
    EXPECT_TRUE(o.flagged.empty());
    EXPECT_TRUE(o.degenerate);

    Rng rng(5);
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i) v.push_back(rng.normal());
    const std::vector<std::size_t> planted{17, 250, 501, 777, 990};
    for (std::size_t k = 0; k < planted.size(); ++k) v[planted[k]] = k % 2 ? -10.0 : 10.0;
    o = modified_z(v);
    EXPECT_EQ(o.flagged, planted);
    EXPECT_FALSE(o.degenerate);

    EXPECT_EQ(code_of([] { modified_z({1, 2, 3}); }), ErrorCode::TooFewRows);
}

TEST(Anomaly, SpreadWithOneOutlier) {
    const auto o = modified_z({1, 2, 3, 4, 5, 6, 7, 100});
    EXPECT_EQ(o.flagged, (std::vector<std::size_t>{7}));
}

TEST(Normality, Examples) {
    Rng rng(1);
    std::vector<double> g, e;
    for (int i = 0; i < 500; ++i) g.push_back(rng.normal());
    for (int i = 0; i < 500; ++i) e.push_back(rng.exponential());
    const auto jg = jarque_bera(g);
    EXPECT_NEAR(jg.statistic, oracle::jarque_bera(g), 1e-9);
    EXPECT_TRUE(jg.consistent_with_normal);
    const auto je = jarque_bera(e);
    EXPECT_LT(je.p_value, 0.01);
    EXPECT_FALSE(je.consistent_with_normal);
    EXPECT_EQ(code_of([] { jarque_bera({1, 2, 3}); }), ErrorCode::TooFewRows);
}

TEST(Normality, ZeroExcessKurtosisSample) {
    // {-1, 0, 0, 0, 0, 1}: m2 = m4 = 1/3, so S = 0 and K = 3
    std::vector<double> v;
    for (int i = 0; i < 5; ++i) v.insert(v.end(), {-1.0, 0.0, 0.0, 0.0, 0.0, 1.0});
    const auto jb = jarque_bera(v);
    EXPECT_NEAR(jb.kurtosis, 3.0, 1e-12);
    EXPECT_NEAR(jb.statistic, 0.0, 1e-12);
    EXPECT_NEAR(jb.p_value, 1.0, 1e-12);
}

TEST(Forecast, Examples) {
    std::vector<double> t, y;
    for (int i = 1; i <= 30; ++i) t.push_back(i), y.push_back(2.0 * i);
    auto f = forecast(t, y, 3);
    for (int h = 1; h <= 3; ++h) EXPECT_NEAR(f.predictions[h - 1], 2.0 * (30 + h), 1e-6);
    EXPECT_DOUBLE_EQ(f.times[0], 31.0);

    std::vector<double> c(12, 5.0), tc;
    for (int i = 0; i < 12; ++i) tc.push_back(i);
    f = forecast(tc, c, 4);
    for (double p : f.predictions) EXPECT_DOUBLE_EQ(p, 5.0);

    Rng rng(9);
    std::vector<double> tn, yn;
    for (int i = 0; i < 100; ++i) tn.push_back(i), yn.push_back(3.0 * i + rng.normal());
    f = forecast(tn, yn, 10);
    double mae = 0.0;
    for (int h = 0; h < 10; ++h) mae += std::fabs(f.predictions[h] - 3.0 * (100 + h)) / 10.0;
    EXPECT_LT(mae, 2.0);
    for (int h = 0; h < 10; ++h) EXPECT_LT(f.lower[h], f.upper[h]);

    EXPECT_EQ(code_of([] { forecast({1, 2, 3}, {1, 2, 3}, 1); }), ErrorCode::TooFewRows);
    EXPECT_EQ(code_of([] { forecast({1, 2, 3, 4, 5, 6, 7, 7}, {1, 2, 3, 4, 5, 6, 7, 8}, 1); }),
              ErrorCode::NonMonotoneTime);
}

TEST(Relationship, Examples) {
    std::vector<double> x, y;
    for (int i = 0; i < 50; ++i) x.push_back(i), y.push_back(2.0 * i + 1.0);
    const auto f = linear_fit(x, y);
    EXPECT_NEAR(f.r, 1.0, 1e-12);
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
    EXPECT_NEAR(f.intercept, 1.0, 1e-9);

    Rng rng(21);
    std::vector<double> a, b;
    for (int i = 0; i < 10000; ++i) a.push_back(rng.uniform()), b.push_back(rng.uniform());
    const auto g = linear_fit(a, b);
    EXPECT_LT(std::fabs(g.r), 0.05);
    EXPECT_NEAR(g.r, *oracle::pearson(a, b), 1e-9);

    EXPECT_EQ(code_of([&] { linear_fit(std::vector<double>(50, 1.0), y); }), ErrorCode::ConstantColumn);
}

TEST(Relationship, ExecutorPairsLoneColumn) {
    const auto ds = bundled("manufacture");
    const auto r = execute(plan(Intention::Relationship, {"electrical_test"}), ds);
    EXPECT_EQ(r.chart.kind, ChartKind::Scatter);
    EXPECT_EQ(r.chart.y->column, "humidity");
    EXPECT_LT(r.number("r"), -0.5);
}

TEST(Ranking, TopAndLast) {
    const auto ds = numeric({{"sales", {5, 1, 9}}});
    auto r = execute(plan(Intention::Ranking, {"sales"}, {restrict(RestrictionKind::Top, 2.0, "sales")}), ds);
    const auto* t = r.table("ranking");
    ASSERT_EQ(t->rows.size(), 2u);
    EXPECT_DOUBLE_EQ(t->rows[0][1], 9.0);
    EXPECT_DOUBLE_EQ(t->rows[1][1], 5.0);

    r = execute(plan(Intention::Ranking, {"sales"}, {restrict(RestrictionKind::Last, 5.0, "sales")}), ds);
    t = r.table("ranking");
    ASSERT_EQ(t->rows.size(), 3u);  // min(n, rows)
    EXPECT_DOUBLE_EQ(t->rows[0][1], 1.0);
}

TEST(Ranking, GroupedSum) {
    const auto ds = make_dataset({{"p", {"a", "b", "a", "c", "b", "c"}}, {"s", {"1", "5", "2", "1", "1", "0.5"}}});
    const auto r = execute(plan(Intention::Ranking, {"p", "s"},
                                {restrict(RestrictionKind::Top, 2.0), restrict(RestrictionKind::Sum, {}, "s")}),
                           ds);
    const auto* t = r.table("ranking");
    EXPECT_EQ(t->row_labels, (std::vector<std::string>{"b", "a"}));
    EXPECT_DOUBLE_EQ(t->rows[0][1], 6.0);
    EXPECT_DOUBLE_EQ(t->rows[1][1], 3.0);
}

TEST(Proportion, Shares) {
    const auto ds = make_dataset({{"c", {"a", "a", "b"}}});
    const auto r = execute(plan(Intention::Proportion, {"c"}), ds);
    const auto* t = r.table("shares");
    EXPECT_EQ(t->row_labels, (std::vector<std::string>{"a", "b"}));
    EXPECT_DOUBLE_EQ(t->rows[0][1], 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(t->rows[1][1], 1.0 / 3.0);
    EXPECT_EQ(r.chart.kind, ChartKind::Bar);  // 2 of 3 distinct detects as Text, so no pie
}

TEST(Proportion, SharesSumToOne) {
    for (const auto* name : {"sales", "banking", "food"}) {
        const auto ds = bundled(name);
        for (const auto& c : ds.columns()) {
            if (!is_categorical_like(c.type)) continue;
            const auto r = execute(plan(Intention::Proportion, {c.name}), ds);
            double sum = 0.0;
            for (const auto& row : r.table("shares")->rows) sum += row[1];
            EXPECT_NEAR(sum, 1.0, 1e-12) << name << "." << c.name;
        }
    }
}

TEST(Distribution, FreedmanDiaconisBins) {
    Rng rng(2);
    std::vector<double> v;
    for (int i = 0; i < 1000; ++i) v.push_back(rng.normal());
    const auto ds = numeric({{"x", v}});
    const auto r = execute(plan(Intention::Distribution, {"x"}), ds);
    const auto* h = r.table("histogram");
    EXPECT_GE(h->rows.size(), 5u);
    EXPECT_LE(h->rows.size(), 50u);
    double mass = 0.0;
    for (const auto& row : h->rows) mass += row[2];
    EXPECT_DOUBLE_EQ(mass, 1000.0);
    EXPECT_EQ(r.chart.kind, ChartKind::Histogram);
    EXPECT_NEAR(r.number("mean"), oracle::mean(v), 1e-9);
}

TEST(Trend, RollingWindow) {
    EXPECT_EQ(rolling_window(30), 3u);
    EXPECT_EQ(rolling_window(365), 7u);
    EXPECT_EQ(rolling_window(5), 1u);
    const auto ds = bundled("manufacture");
    const auto r = execute(plan(Intention::Trend, {"efficiency"}), ds);
    EXPECT_EQ(r.chart.kind, ChartKind::Line);
    EXPECT_EQ(r.chart.x.column, "date");
    EXPECT_DOUBLE_EQ(r.number("window"), 7.0);
    const auto* s = r.table("series");
    for (std::size_t i = 1; i < s->rows.size(); ++i) EXPECT_GT(s->rows[i][0], s->rows[i - 1][0]);
}

TEST(Execute, ForecastOnBundledSales) {
    const auto ds = bundled("sales");
    const auto r = execute(plan(Intention::Forecast, {"sales"}), ds);
    EXPECT_DOUBLE_EQ(r.number("horizon"), 10.0);
    EXPECT_EQ(r.table("forecast")->rows.size(), 10u);
}

TEST(Execute, FiltersCommuteWithPrefiltering) {
    const auto ds = bundled("manufacture");
    std::vector<std::uint8_t> keep;
    for (double h : ds.column("humidity").values) keep.push_back(h > 50);
    const auto pre = ds.filter_rows(keep);
    for (auto intention : {Intention::Distribution, Intention::Comparison, Intention::RootCause, Intention::Anomaly,
                           Intention::Normality, Intention::Aggregation, Intention::Trend, Intention::Ranking}) {
        std::vector<std::string> cols{"efficiency", "line"};
        if (intention == Intention::RootCause) cols = {"efficiency"};
        const auto a = execute(plan(intention, cols, {restrict(RestrictionKind::GreaterThan, 50.0, "humidity")}), ds);
        const auto b = execute(plan(intention, cols), pre);
        ASSERT_EQ(a.tables.size(), b.tables.size()) << to_string(intention);
        for (std::size_t i = 0; i < a.tables.size(); ++i)
            EXPECT_EQ(json(a.tables[i]).dump(), json(b.tables[i]).dump()) << to_string(intention);
    }
}

TEST(Execute, AllIntentionsDeterministicAndConsistent) {
    const auto ds = bundled("manufacture");
    const std::vector<std::pair<Intention, std::vector<std::string>>> cases{
        {Intention::Distribution, {"humidity"}}, {Intention::Trend, {"efficiency"}},
        {Intention::Forecast, {"efficiency"}},   {Intention::Comparison, {"defect_count", "line"}},
        {Intention::RootCause, {"quality"}},     {Intention::Anomaly, {"pressure"}},
        {Intention::Normality, {"humidity"}},    {Intention::Relationship, {"humidity", "electrical_test"}},
        {Intention::Ranking, {"line", "efficiency"}}, {Intention::Proportion, {"shift"}},
        {Intention::Aggregation, {"temperature"}}};
    for (const auto& [i, cols] : cases) {
        const auto a = execute(plan(i, cols), ds);
        const auto b = execute(plan(i, cols), ds);
        EXPECT_EQ(json(a).dump(), json(b).dump()) << to_string(i);
        EXPECT_TRUE(findings_consistent(a)) << to_string(i);
        validate_chart(a.chart, ds);
        const auto back = json(a).get<AnalysisResult>();
        EXPECT_EQ(json(back).dump(), json(a).dump());
        for (const auto& t : a.tables) EXPECT_FALSE(table_csv(t).empty());
        if (const auto* p = a.finding("p_value")) {
            EXPECT_GE(*p->number, 0.0);
            EXPECT_LE(*p->number, 1.0);
        }
    }
}

TEST(Chart, Validation) {
    const auto ds = make_dataset({{"c", {"a", "b", "a"}}, {"x", {"1", "2", "3"}}});
    EXPECT_EQ(code_of([&] { validate_chart({ChartKind::Histogram, {"c", {}}, {}, {}, ""}, ds); }),
              ErrorCode::ColumnTypeMismatch);
    EXPECT_EQ(code_of([&] { validate_chart({ChartKind::Pie, {"x", {}}, {}, {}, ""}, ds); }),
              ErrorCode::ColumnTypeMismatch);
    EXPECT_EQ(code_of([&] { validate_chart({ChartKind::Bar, {"nope", {}}, {}, {}, ""}, ds); }),
              ErrorCode::UnknownColumn);
}
