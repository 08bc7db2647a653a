#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "tabula/core/random.hpp"
#include "tabula/guidance/store.hpp"

using namespace tabula;
using namespace tabula::guidance;

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

struct Table {
    Dataset ds;
    TableProfile profile;
};

Table bundled(const std::string& name) {
    auto ds = load_table(read_file(std::string(TABULA_DATA_DIR) + "/datasets/" + name + ".csv")).dataset;
    auto p = profile_table(ds);
    return {std::move(ds), std::move(p)};
}

SessionSettings solar(std::string role = "quality") {
    return {"solar cell production line", std::move(role), "find what drives electrical test results", "electrical_test"};
}

std::vector<std::string> questions(const std::vector<Recommendation>& recs) {
    std::vector<std::string> out;
    for (const auto& r : recs) out.push_back(r.question);
    return out;
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("tabula_guidance_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Start, NumericTargetOpensWithDistribution) {
    const auto t = bundled("manufacture");
    const auto [s, first] = start_session("s-1", "p-1", solar(), t.ds, t.profile);
    EXPECT_EQ(first.plan.intention, Intention::Distribution);
    EXPECT_EQ(first.plan.columns(), std::vector<std::string>{"electrical_test"});
    EXPECT_EQ(first.rationale, "first-look");
    EXPECT_EQ(s.status, SessionStatus::Active);
    EXPECT_TRUE(s.history.empty());
}

TEST(Start, CategoricalTargetOpensWithProportion) {
    const auto t = bundled("manufacture");
    auto settings = solar();
    settings.target_column = "line";
    const auto first = start_session("s-1", "p-1", settings, t.ds, t.profile).second;
    EXPECT_EQ(first.plan.intention, Intention::Proportion);
    EXPECT_EQ(first.plan.columns(), std::vector<std::string>{"line"});
}

TEST(Start, InvalidSettings) {
    const auto t = bundled("manufacture");
    auto bad_target = solar();
    bad_target.target_column = "voltage";
    EXPECT_EQ(code_of([&] { start_session("s", "p", bad_target, t.ds, t.profile); }), ErrorCode::UnknownTarget);
    EXPECT_EQ(code_of([&] { start_session("s", "p", solar("astronaut"), t.ds, t.profile); }), ErrorCode::InvalidSettings);
    GuidanceConfig cfg;
    cfg.roles.push_back("astronaut");
    EXPECT_NO_THROW(start_session("s", "p", solar("astronaut"), t.ds, t.profile, cfg));
    TableProfile pending;
    EXPECT_EQ(code_of([&] { start_session("s", "p", solar(), t.ds, pending); }), ErrorCode::ProfileNotReady);
}

TEST(Step, RuleTableWalk) {
    const auto t = bundled("manufacture");
    auto s = start_session("s-1", "p-1", solar(), t.ds, t.profile).first;

    auto o1 = step(s, std::size_t{0}, t.ds, t.profile);
    EXPECT_EQ(o1.result.plan.intention, Intention::Distribution);
    ASSERT_FALSE(o1.recommendations.empty());
    EXPECT_EQ(o1.recommendations[0].plan.intention, Intention::RootCause);
    EXPECT_EQ(o1.recommendations[0].rationale, "after-distribution");
    EXPECT_EQ(o1.result.followups, questions(o1.recommendations));

    auto o2 = step(s, std::size_t{0}, t.ds, t.profile);
    ASSERT_EQ(o2.result.plan.intention, Intention::RootCause);
    const auto top = o2.result.finding("top_factor")->text;
    EXPECT_EQ(top, "humidity");
    ASSERT_FALSE(o2.recommendations.empty());
    EXPECT_EQ(o2.recommendations[0].plan.intention, Intention::Relationship);
    EXPECT_NE(o2.recommendations[0].question.find("humidity"), std::string::npos);

    const auto rel = std::find_if(o2.recommendations.begin(), o2.recommendations.end(),
                                  [](const auto& r) { return r.plan.intention == Intention::Relationship; });
    auto o3 = step(s, static_cast<std::size_t>(rel - o2.recommendations.begin()), t.ds, t.profile);
    EXPECT_EQ(o3.result.plan.intention, Intention::Relationship);
    ASSERT_FALSE(o3.recommendations.empty());
    EXPECT_EQ(o3.recommendations[0].plan.intention, Intention::Forecast);  // the table has a date column
    EXPECT_EQ(s.history.size(), 3u);
}

TEST(Step, AfterRelationshipWithoutDatetimeRecommendsAnomaly) {
    Rng rng(4);
    std::vector<double> x(200), y(200);
    for (std::size_t i = 0; i < 200; ++i) x[i] = rng.normal(0, 1), y[i] = 2 * x[i] + rng.normal(0, 0.5);
    const Dataset ds("t", {make_numeric_column("yield", y), make_numeric_column("moisture", x)});
    const auto p = profile_table(ds);
    auto s = start_session("s", "p", {"", "general", "", "yield"}, ds, p).first;
    const auto o = step(s, std::string("What is the relationship between yield and moisture?"), ds, p);
    ASSERT_EQ(o.result.plan.intention, Intention::Relationship);
    ASSERT_FALSE(o.recommendations.empty());
    EXPECT_EQ(o.recommendations[0].plan.intention, Intention::Anomaly);
}

TEST(Step, RoleChangesOrderNotSet) {
    const auto t = bundled("manufacture");
    std::map<std::string, std::vector<Recommendation>> by_role;
    for (const auto* role : {"quality", "sales"}) {
        auto s = start_session("s", "p", solar(role), t.ds, t.profile).first;
        step(s, std::size_t{0}, t.ds, t.profile);
        by_role[role] = step(s, std::size_t{0}, t.ds, t.profile).recommendations;
    }
    const auto q = questions(by_role["quality"]);
    const auto sa = questions(by_role["sales"]);
    ASSERT_GE(q.size(), 2u);
    EXPECT_EQ(std::set<std::string>(q.begin(), q.end()), std::set<std::string>(sa.begin(), sa.end()));
    EXPECT_NE(q, sa);
    EXPECT_EQ(by_role["sales"][0].plan.intention, Intention::Comparison);
}

TEST(Step, RecommendationsRoundTripThroughMatcher) {
    for (const auto* name : {"manufacture", "sales", "banking"}) {
        const auto t = bundled(name);
        const auto target = t.profile.column_profiles[1].name;
        auto settings = solar("operations");
        settings.target_column = target;
        auto s = start_session("s", "p", settings, t.ds, t.profile).first;
        for (int i = 0; i < 4 && !s.recommendations.empty(); ++i) {
            for (const auto& r : s.recommendations) {
                const auto m = matcher::match_question(r.question, t.profile);
                EXPECT_EQ(m.top().intention, r.plan.intention) << r.question;
                for (const auto& c : r.plan.columns()) EXPECT_NE(t.profile.find(c), nullptr) << c;
            }
            const auto before = s.history.size();
            step(s, std::size_t{0}, t.ds, t.profile);
            EXPECT_EQ(s.history.size(), before + 1);
        }
    }
}

TEST(Step, FailedStepLeavesHistory) {
    const auto t = bundled("manufacture");
    auto s = start_session("s", "p", solar(), t.ds, t.profile).first;
    step(s, std::size_t{0}, t.ds, t.profile);
    const auto before = json(s).dump();
    EXPECT_EQ(code_of([&] { step(s, std::string(""), t.ds, t.profile); }), ErrorCode::EmptyQuestion);
    EXPECT_EQ(code_of([&] { step(s, std::size_t{99}, t.ds, t.profile); }), ErrorCode::BadRequest);
    EXPECT_EQ(json(s).dump(), before);
}

TEST(Summarize, Rules) {
    const auto t = bundled("manufacture");
    auto s = start_session("s", "p", solar(), t.ds, t.profile).first;
    step(s, std::string("What is the distribution of humidity?"), t.ds, t.profile);
    step(s, std::string("What is the distribution of pressure?"), t.ds, t.profile);
    EXPECT_FALSE(should_summarize(s, t.profile).propose);
    EXPECT_EQ(s.status, SessionStatus::Active);

    // Steps 2 and 3 return to step 1's column.
    auto n = start_session("s", "p", solar(), t.ds, t.profile).first;
    step(n, std::string("What is the distribution of humidity?"), t.ds, t.profile);
    step(n, std::string("Are there any outliers in humidity?"), t.ds, t.profile);
    const auto o = step(n, std::string("Is humidity normally distributed?"), t.ds, t.profile);
    EXPECT_TRUE(o.summary.propose);
    EXPECT_EQ(o.summary.reason, "novelty");
    EXPECT_EQ(n.status, SessionStatus::SummaryProposed);

    auto d = start_session("s", "p", solar(), t.ds, t.profile).first;
    for (const auto* col : {"humidity", "pressure", "temperature", "efficiency", "quality"})
        step(d, "What is the distribution of " + std::string(col) + "?", t.ds, t.profile);
    EXPECT_EQ(should_summarize(d, t.profile).reason, "depth");
}

TEST(Summarize, ReportAndClosure) {
    const auto t = bundled("manufacture");
    auto s = start_session("s", "p", solar(), t.ds, t.profile).first;
    EXPECT_EQ(code_of([&] { summarize(s, "r-1"); }), ErrorCode::EmptySession);
    step(s, std::size_t{0}, t.ds, t.profile);
    const auto report = summarize(s, "r-1");
    EXPECT_EQ(report.steps.size(), 1u);
    EXPECT_EQ(report.settings.target_column, "electrical_test");
    EXPECT_EQ(s.status, SessionStatus::Closed);
    EXPECT_EQ(code_of([&] { summarize(s, "r-2"); }), ErrorCode::SessionClosed);
    EXPECT_EQ(code_of([&] { step(s, std::size_t{0}, t.ds, t.profile); }), ErrorCode::SessionClosed);
}

TEST(Store, RecordedSessionReplaysByteIdentical) {
    const auto t = bundled("manufacture");
    const auto dir = fresh_dir("replay");
    std::string session_id, report_json;
    {
        SessionStore store(dir);
        session_id = store.create("p-1", solar(), t.ds, t.profile).first.session_id;
        store.step(session_id, std::size_t{0}, t.ds, t.profile);
        store.step(session_id, std::size_t{0}, t.ds, t.profile);
        store.step(session_id, std::string("What is the relationship between electrical test and humidity?"), t.ds,
                   t.profile);
        const auto report = store.summarize(session_id);
        report_json = json(report).dump();
        EXPECT_EQ(report.steps.size(), 3u);
        EXPECT_EQ(report.steps[1].intention, Intention::RootCause);
    }
    SessionStore reopened(dir);
    const auto events = reopened.events(session_id);
    ASSERT_EQ(events.size(), 5u);
    const auto r = replay(events, t.ds, t.profile);
    ASSERT_TRUE(r.report);
    EXPECT_EQ(json(*r.report).dump(), report_json);
    EXPECT_EQ(json(r.session).dump(), json(reopened.session(session_id)).dump());
    EXPECT_EQ(json(reopened.report(r.session.report_id)).dump(), report_json);
    EXPECT_EQ(insight::to_markdown(*r.report), insight::to_markdown(reopened.report(r.session.report_id)));
}

TEST(Store, ErrorsAndIds) {
    const auto t = bundled("manufacture");
    SessionStore store;
    const auto a = store.create("p", solar(), t.ds, t.profile).first.session_id;
    const auto b = store.create("p", solar(), t.ds, t.profile).first.session_id;
    EXPECT_NE(a, b);
    EXPECT_EQ(code_of([&] { store.session("s-999999"); }), ErrorCode::UnknownSession);
    EXPECT_EQ(code_of([&] { store.report("r-999999"); }), ErrorCode::UnknownReport);
    EXPECT_EQ(code_of([&] { store.summarize(a); }), ErrorCode::EmptySession);
    EXPECT_EQ(code_of([&] { store.step(a, std::string("zzz qqq"), t.ds, t.profile); }),
              code_of([&] { matcher::match_question("zzz qqq", t.profile); }));
    EXPECT_TRUE(store.session(a).history.empty());
}

TEST(Store, ConcurrentSessionsIndependent) {
    const auto t = bundled("manufacture");
    SessionStore store;
    std::vector<std::string> ids;
    for (int i = 0; i < 4; ++i) ids.push_back(store.create("p", solar(), t.ds, t.profile).first.session_id);
    std::vector<std::thread> threads;
    for (const auto& id : ids)
        threads.emplace_back([&, id] {
            for (int k = 0; k < 3; ++k) store.step(id, std::size_t{0}, t.ds, t.profile);
        });
    for (auto& th : threads) th.join();
    const auto ref = json(store.session(ids[0]).history).dump();
    for (const auto& id : ids) {
        EXPECT_EQ(store.session(id).history.size(), 3u);
        EXPECT_EQ(json(store.session(id).history).dump(), ref);
    }
}
