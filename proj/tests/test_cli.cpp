#include <gtest/gtest.h>

#include <sstream>

#include "tabula/cli/commands.hpp"

using namespace tabula;

namespace {

struct Run {
    int status = 0;
    std::string out, err;
};

Run tabula_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tabula");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string dataset_path(const std::string& name) { return std::string(TABULA_DATA_DIR) + "/datasets/" + name + ".csv"; }

fs::path workdir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("tabula_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

const std::vector<std::string> kDatasets{"manufacture", "sport", "sales", "food", "health_care", "banking"};

}  // namespace

TEST(Cli, PlanOnlyMatchesGolden) {
    const auto dir = workdir("golden") / "sales";
    ASSERT_EQ(tabula_cli({"ingest", dataset_path("sales"), "--out", dir.string()}).status, 0);
    const auto r = tabula_cli({"ask", dir.string(), "top ten products by sum of sales", "--plan-only"});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out, read_file(std::string(TABULA_TEST_DIR) + "/golden/plan_top_ten_products.json"));
    const auto top = json::parse(r.out).at("candidates").at(0);
    EXPECT_EQ(top.at("restrictions").at(0).at("kind"), "Top");
    EXPECT_EQ(top.at("restrictions").at(0).at("operand"), 10.0);
    EXPECT_EQ(top.at("restrictions").at(1).at("kind"), "Sum");
}

TEST(Cli, EmptyQuestionExitsWithCode) {
    const auto dir = workdir("empty") / "sales";
    tabula_cli({"ingest", dataset_path("sales"), "--out", dir.string()});
    const auto r = tabula_cli({"ask", dir.string(), ""});
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("EMPTY_QUESTION"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, AskExecutesAndExplains) {
    const auto dir = workdir("ask") / "manufacture";
    tabula_cli({"ingest", dataset_path("manufacture"), "--out", dir.string()});
    const auto r = tabula_cli({"--knowledge", std::string(TABULA_DATA_DIR) + "/knowledge/snippets.jsonl", "ask",
                               dir.string(), "What is the difference between high quality and low quality"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j.at("result").at("plan").at("intention"), "RootCause");
    EXPECT_FALSE(j.at("insight").get<std::string>().empty());
    EXPECT_FALSE(j.at("context").empty());
}

TEST(Cli, IngestProfileInsight) {
    const auto dir = workdir("ingest") / "food";
    const auto in = tabula_cli({"ingest", dataset_path("food"), "--out", dir.string()});
    ASSERT_EQ(in.status, 0) << in.err;
    EXPECT_EQ(json::parse(in.out).at("name"), "food.csv");
    EXPECT_TRUE(fs::exists(dir / "profile.json"));
    const auto p = tabula_cli({"profile", dir.string()});
    EXPECT_EQ(json::parse(p.out).at("status"), "ready");
    const auto a = tabula_cli({"insight", dir.string()});
    const auto b = tabula_cli({"insight", dir.string()});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out).at("top_questions").size(), 10u);
    EXPECT_NE(tabula_cli({"profile", (dir.parent_path() / "missing").string()}).err.find("UNKNOWN_PROJECT"),
              std::string::npos);
    EXPECT_NE(tabula_cli({"ingest", (dir.parent_path() / "nope.csv").string(), "--out", "x"}).err.find("IO"),
              std::string::npos);
}

TEST(Cli, EvalMatcherTable) {
    const auto root = workdir("eval");
    std::vector<std::string> args{"eval-matcher", std::string(TABULA_DATA_DIR) + "/corpus/questions.jsonl"};
    for (const auto& d : kDatasets) {
        tabula_cli({"ingest", dataset_path(d), "--out", (root / d).string()});
        args.push_back((root / d).string());
    }
    args.push_back("--out");
    args.push_back((root / "table.csv").string());
    const auto r = tabula_cli(args);
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(read_file(root / "table.csv"), r.out);
    const auto lines = text::split(r.out, '\n');
    ASSERT_GE(lines.size(), 7u);
    for (std::size_t i = 1; i < 7; ++i) {
        const auto cells = text::split(lines[i], ',');
        ASSERT_EQ(cells.size(), 7u) << lines[i];
        for (std::size_t c = 1; c < 7; c += 2) EXPECT_GE(std::stod(cells[c + 1]), std::stod(cells[c])) << lines[i];
    }
    // Sources with no project are an error, not a silent zero.
    const auto partial = tabula_cli({"eval-matcher", std::string(TABULA_DATA_DIR) + "/corpus/questions.jsonl",
                                     (root / "sales").string()});
    EXPECT_NE(partial.err.find("UNKNOWN_PROJECT"), std::string::npos);
}

TEST(Cli, TrainThenSimulate) {
    const auto dir = workdir("train") / "manufacture";
    tabula_cli({"ingest", dataset_path("manufacture"), "--out", dir.string()});
    const auto t = tabula_cli({"--seed", "5", "train", dir.string(), "--target", "efficiency", "--budget", "fast",
                               "--features", "humidity,temperature"});
    ASSERT_EQ(t.status, 0) << t.err;
    const auto model = json::parse(t.out).at("path").get<std::string>();
    EXPECT_EQ(fs::path(model).filename(), "m-000001.json");
    const auto again = tabula_cli({"--seed", "5", "train", dir.string(), "--target", "efficiency", "--budget", "fast",
                                   "--features", "humidity,temperature"});
    EXPECT_EQ(json::parse(again.out).at("cv_scores"), json::parse(t.out).at("cv_scores"));

    const auto s = tabula_cli({"simulate", model, "--range", "humidity=30:70", "--range", "temperature=25", "--maximize",
                               "--budget", "40"});
    ASSERT_EQ(s.status, 0) << s.err;
    const auto best = json::parse(s.out).at("best");
    EXPECT_GE(best.at("humidity").get<double>(), 30.0);
    EXPECT_LE(best.at("humidity").get<double>(), 70.0);
    EXPECT_EQ(best.at("temperature").get<double>(), 25.0);
    const auto csv = tabula_cli({"simulate", model, "--range", "humidity=30:70", "--budget", "5", "--csv"});
    EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 6);

    EXPECT_NE(tabula_cli({"simulate", model, "--range", "volts=0:1"}).err.find("UNKNOWN_FEATURE"), std::string::npos);
    EXPECT_NE(tabula_cli({"simulate", model, "--range", "humidity"}).err.find("BAD_REQUEST"), std::string::npos);
    EXPECT_NE(tabula_cli({"train", dir.string(), "--target", "efficiency", "--metric", "r2"}).err.find("BAD_REQUEST"),
              std::string::npos);
    EXPECT_NE(tabula_cli({"simulate", model, "--maximize", "--minimize"}).status, 0);
}

TEST(Cli, RangeSyntax) {
    auto [n1, r1] = cli::detail::parse_range("x=0:6");
    EXPECT_EQ(n1, "x");
    EXPECT_EQ(*r1.lo, 0.0);
    EXPECT_EQ(*r1.hi, 6.0);
    auto [n2, r2] = cli::detail::parse_range("line=A|B");
    EXPECT_EQ(r2.levels, (std::vector<std::string>{"A", "B"}));
    auto [n3, r3] = cli::detail::parse_range("shift=day");
    EXPECT_EQ(std::get<std::string>(*r3.fixed), "day");
    EXPECT_THROW(cli::detail::parse_range("=1"), Error);
    EXPECT_THROW(cli::detail::parse_range("x=a:1"), Error);
}

TEST(Cli, ProjectDirsServeThroughTheService) {
    const auto root = workdir("shared");
    tabula_cli({"ingest", dataset_path("sales"), "--out", (root / "projects" / "p-000001").string()});
    service::ServiceConfig cfg;
    cfg.data_dir = root;
    service::Api api(cfg);
    const auto r = api.handle("POST", "/projects/p-000001/query", R"({"question":"top ten products by sum of sales"})");
    ASSERT_EQ(r.status, 200) << r.body;
    EXPECT_EQ(r.json_body().at("match").at("candidates").at(0).at("restrictions").at(0).at("kind"), "Top");
}

TEST(Cli, UsageErrors) {
    EXPECT_NE(tabula_cli({}).status, 0);
    EXPECT_NE(tabula_cli({"frobnicate"}).status, 0);
    EXPECT_NE(tabula_cli({"ask"}).status, 0);
    EXPECT_EQ(tabula_cli({"--help"}).status, 0);
    const auto dir = workdir("serve");
    write_file(dir / "bad.json", R"({"port": 70000})");
    EXPECT_NE(tabula_cli({"serve", "--config", (dir / "bad.json").string()}).err.find("BAD_REQUEST"), std::string::npos);
}
