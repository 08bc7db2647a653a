#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <regex>
#include <set>
#include <thread>

#include "schema_check.hpp"
#include "tabula/service/server.hpp"

using namespace tabula;
using namespace tabula::service;

namespace {

const json& api_schema() {
    static const json doc = json::parse(read_file(std::string(TABULA_SOURCE_DIR) + "/docs/api_schema.json"));
    return doc;
}

std::set<std::string>& exercised() {
    static std::set<std::string> s;
    return s;
}

std::string csv_of(const std::string& name) {
    return read_file(std::string(TABULA_DATA_DIR) + "/datasets/" + name + ".csv");
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("tabula_service_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

// Finds the documented path template for a concrete request path.
std::string template_for(const std::string& path) {
    const auto bare = path.substr(0, path.find('?'));
    for (const auto& [tpl, ops] : api_schema().at("paths").items()) {
        const std::regex re("^" + std::regex_replace(tpl, std::regex(R"(\{[a-z_]+\})"), "[^/]+") + "$");
        if (std::regex_match(bare, re)) return tpl;
    }
    return "";
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// Every response is checked against the published contract.
void expect_contract(const ApiRequest& req, const ApiResponse& res) {
    const auto tpl = template_for(req.path);
    const auto method = lower(req.method);
    if (tpl.empty() || !api_schema().at("paths").at(tpl).contains(method)) {
        // Undocumented routes must answer NOT_FOUND.
        EXPECT_EQ(res.status, 404) << req.method << " " << req.path;
        EXPECT_EQ(json::parse(res.body).at("code"), "NOT_FOUND");
        return;
    }
    exercised().insert(method + " " + tpl);
    const auto& op = api_schema().at("paths").at(tpl).at(method);
    const auto& responses = op.at("responses");
    const auto key = std::to_string(res.status);
    ASSERT_TRUE(responses.contains(key)) << req.method << " " << req.path << " undocumented status " << key << ": "
                                         << res.body.substr(0, 300);
    const auto& documented = responses.at(key);
    ASSERT_TRUE(documented.at("content").contains(res.content_type))
        << req.method << " " << req.path << " undocumented media type " << res.content_type;
    if (res.content_type != "application/json") return;
    const auto body = json::parse(res.body);
    const auto errors = schema_check::validate(api_schema(), documented.at("content").at(res.content_type).at("schema"), body);
    EXPECT_TRUE(errors.empty()) << req.method << " " << req.path << ": " << (errors.empty() ? "" : errors.front());
    if (res.status >= 400) {
        const auto code = body.at("code").get<std::string>();
        const auto& codes = documented.at("x-codes");
        EXPECT_NE(std::find(codes.begin(), codes.end(), code), codes.end())
            << req.method << " " << tpl << " returned undocumented code " << code;
        EXPECT_EQ(api_schema().at("x-error-codes").at(code).get<int>(), res.status);
    }
}

class Client {
public:
    explicit Client(Api& api) : api_(api) {}

    ApiResponse call(std::string method, std::string path, std::string body = "",
                     std::string content_type = "application/json", std::string accept = "application/json") {
        ApiRequest req{std::move(method), std::move(path), std::move(body), std::move(content_type), std::move(accept), {}};
        return send(req);
    }

    ApiResponse send(const ApiRequest& req) {
        auto res = api_.handle(req);
        expect_contract(req, res);
        return res;
    }

    std::string upload(const std::string& csv, const std::string& name = "t.csv") {
        const auto r = call("POST", "/projects?name=" + name, csv, "text/csv");
        EXPECT_EQ(r.status, 201) << r.body;
        const auto j = r.json_body();
        api_.jobs().wait(j.at("job_id").get<std::string>());
        return j.at("project_id").get<std::string>();
    }

    std::string code(const ApiResponse& r) { return r.json_body().at("code").get<std::string>(); }

private:
    Api& api_;
};

ServiceConfig in_dir(const std::filesystem::path& dir) {
    ServiceConfig c;
    c.data_dir = dir;
    c.knowledge_path = std::string(TABULA_DATA_DIR) + "/knowledge/snippets.jsonl";
    return c;
}

const std::string kSettings = R"("settings":{"description":"solar line","role":"quality","goal":"raise yield","target_column":"electrical_test"})";

}  // namespace

TEST(Projects, UploadTwoRowsThenProfile) {
    Api api;
    Client c(api);
    const auto id = c.upload("a,b\n1,x\n2,y\n");
    const auto p = c.call("GET", "/projects/" + id + "/profile");
    ASSERT_EQ(p.status, 200);
    EXPECT_EQ(p.json_body().at("status"), "ready");
    EXPECT_EQ(p.json_body().at("row_count"), 2);
    const auto meta = c.call("GET", "/projects/" + id).json_body();
    EXPECT_EQ(meta.at("columns").size(), 2u);
    EXPECT_EQ(meta.at("name"), "t.csv");
}

TEST(Projects, MultipartAndMediaTypes) {
    Api api;
    Client c(api);
    ApiRequest mp{"POST", "/projects", "", "multipart/form-data; boundary=x", "", {{"file", "sales.csv", csv_of("sales")}}};
    const auto r = c.send(mp);
    ASSERT_EQ(r.status, 201) << r.body;
    EXPECT_EQ(r.json_body().at("name"), "sales.csv");

    const auto same1 = c.call("POST", "/projects", "a\n1\n", "text/csv").json_body().at("project_id");
    const auto same2 = c.call("POST", "/projects", "a\n1\n", "text/csv").json_body().at("project_id");
    EXPECT_NE(same1, same2);

    EXPECT_EQ(c.code(c.call("POST", "/projects", "{}", "application/json")), "UNSUPPORTED_MEDIA_TYPE");
    EXPECT_EQ(c.code(c.call("POST", "/projects", "", "text/csv")), "EMPTY_INPUT");
    EXPECT_EQ(c.code(c.call("POST", "/projects", "a,a\n1,2\n", "text/csv")), "HEADER_DUPLICATE");
    EXPECT_EQ(c.code(c.call("POST", "/projects", "a\n\xff\xfe\n", "text/csv")), "UNDECODABLE_BYTES");
    ApiRequest nofile{"POST", "/projects", "", "multipart/form-data; boundary=x", "", {}};
    EXPECT_EQ(c.code(c.send(nofile)), "BAD_REQUEST");
    EXPECT_EQ(c.code(c.call("GET", "/projects/p-999999")), "UNKNOWN_PROJECT");
    EXPECT_EQ(c.code(c.call("GET", "/projects/p-999999/profile")), "UNKNOWN_PROJECT");
}

TEST(Query, PendingProjectIsConflict) {
    const auto dir = fresh_dir("pending");
    // A project persisted without a profile loads as pending.
    ProjectDir{dir / "projects" / "p-000500"}.create("p-000500", "x", "x", "a,b\n1,2\n3,4\n", {});
    Api api(in_dir(dir));
    Client c(api);
    const auto r = c.call("POST", "/projects/p-000500/query", R"({"question":"average a"})");
    EXPECT_EQ(r.status, 409);
    EXPECT_EQ(c.code(r), "PROFILE_NOT_READY");
    EXPECT_EQ(c.code(c.call("GET", "/projects/p-000500/insight")), "PROFILE_NOT_READY");
    EXPECT_EQ(c.call("GET", "/projects/p-000500/profile").json_body().at("status"), "pending");
    EXPECT_EQ(c.code(c.call("POST", "/sessions", R"({"project_id":"p-000500","settings":{"role":"general","target_column":"a"}})")),
              "PROFILE_NOT_READY");
}

TEST(Query, DifferenceQuestionRunsRootCause) {
    Api api(in_dir(fresh_dir("query")));
    Client c(api);
    const auto id = c.upload(csv_of("manufacture"), "solar.csv");
    const auto r = c.call("POST", "/projects/" + id + "/query",
                          R"({"question":"What is the difference between high quality and low quality"})");
    ASSERT_EQ(r.status, 200) << r.body;
    const auto j = r.json_body();
    EXPECT_EQ(j.at("result").at("plan").at("intention"), "RootCause");
    EXPECT_EQ(j.at("match").at("candidates").at(0).at("intention"), "RootCause");
    EXPECT_FALSE(j.at("insight").get<std::string>().empty());
    EXPECT_FALSE(j.at("followups").empty());
    EXPECT_FALSE(j.at("context").empty());  // the bundled knowledge covers solar quality

    EXPECT_EQ(c.code(c.call("POST", "/projects/" + id + "/query", R"({"question":""})")), "EMPTY_QUESTION");
    EXPECT_EQ(c.code(c.call("POST", "/projects/" + id + "/query", R"({"q":1})")), "BAD_REQUEST");
    EXPECT_EQ(c.code(c.call("POST", "/projects/" + id + "/query", "{not json")), "BAD_REQUEST");
    EXPECT_EQ(c.call("POST", "/projects/" + id + "/query", "question", "text/plain").status, 415);
}

TEST(Insight, TenQuestions) {
    Api api;
    Client c(api);
    const auto id = c.upload(csv_of("sport"));
    const auto r = c.call("GET", "/projects/" + id + "/insight");
    ASSERT_EQ(r.status, 200);
    EXPECT_EQ(r.json_body().at("top_questions").size(), 10u);
    EXPECT_EQ(r.body, c.call("GET", "/projects/" + id + "/insight").body);
    const auto one = c.upload("a\n1\n2\n");
    EXPECT_EQ(c.code(c.call("GET", "/projects/" + one + "/insight")), "TOO_FEW_COLUMNS");
}

TEST(Sessions, QualityWalkthrough) {
    Api api;
    Client c(api);
    const auto id = c.upload(csv_of("manufacture"));
    EXPECT_EQ(c.code(c.call("POST", "/sessions",
                            R"({"project_id":")" + id + R"(","settings":{"role":"pilot","target_column":"electrical_test"}})")),
              "INVALID_SETTINGS");
    EXPECT_EQ(c.code(c.call("POST", "/sessions",
                            R"({"project_id":")" + id + R"(","settings":{"role":"quality","target_column":"volts"}})")),
              "UNKNOWN_TARGET");
    EXPECT_EQ(c.code(c.call("POST", "/sessions", R"({"settings":{}})")), "BAD_REQUEST");
    EXPECT_EQ(c.code(c.call("POST", "/sessions", R"({"project_id":"p-999999",)" + kSettings + "}")), "UNKNOWN_PROJECT");

    const auto created = c.call("POST", "/sessions", R"({"project_id":")" + id + R"(",)" + kSettings + "}");
    ASSERT_EQ(created.status, 201) << created.body;
    const auto sid = created.json_body().at("session").at("session_id").get<std::string>();
    EXPECT_EQ(created.json_body().at("recommendation").at("plan").at("intention"), "Distribution");

    EXPECT_EQ(c.code(c.call("POST", "/sessions/" + sid + "/summary")), "EMPTY_SESSION");
    EXPECT_EQ(c.call("POST", "/sessions/" + sid + "/step", R"({"pick":0})").status, 200);
    const auto rc = c.call("POST", "/sessions/" + sid + "/step", R"({"pick":0})").json_body();
    EXPECT_EQ(rc.at("result").at("plan").at("intention"), "RootCause");
    EXPECT_NE(rc.at("recommendations").at(0).at("question").get<std::string>().find("humidity"), std::string::npos);

    // Failed steps leave the history alone.
    EXPECT_EQ(c.code(c.call("POST", "/sessions/" + sid + "/step", R"({"question":""})")), "EMPTY_QUESTION");
    EXPECT_EQ(c.code(c.call("POST", "/sessions/" + sid + "/step", R"({"pick":42})")), "BAD_REQUEST");
    EXPECT_EQ(c.code(c.call("POST", "/sessions/" + sid + "/step", R"({})")), "BAD_REQUEST");
    EXPECT_EQ(c.call("GET", "/sessions/" + sid).json_body().at("history").size(), 2u);

    const auto rel = c.call("POST", "/sessions/" + sid + "/step",
                            R"({"question":"What is the relationship between electrical test and humidity?"})");
    EXPECT_EQ(rel.json_body().at("history_length"), 3);

    const auto summary = c.call("POST", "/sessions/" + sid + "/summary");
    ASSERT_EQ(summary.status, 201);
    const auto rid = summary.json_body().at("report_id").get<std::string>();
    EXPECT_EQ(summary.json_body().at("steps").size(), 3u);
    EXPECT_EQ(c.code(c.call("POST", "/sessions/" + sid + "/summary")), "SESSION_CLOSED");
    EXPECT_EQ(c.call("POST", "/sessions/" + sid + "/step", R"({"pick":0})").status, 409);

    EXPECT_EQ(c.call("GET", "/reports/" + rid).body, summary.body);
    const auto md = c.call("GET", "/reports/" + rid, "", "", "text/markdown");
    EXPECT_EQ(md.content_type, "text/markdown");
    EXPECT_NE(md.body.find("## Step 2: What are the main factors behind electrical test?"), std::string::npos);
    EXPECT_EQ(c.code(c.call("GET", "/reports/r-999999")), "UNKNOWN_REPORT");
    EXPECT_EQ(c.code(c.call("GET", "/sessions/s-999999")), "UNKNOWN_SESSION");
    EXPECT_EQ(c.code(c.call("POST", "/sessions/s-999999/step", R"({"pick":0})")), "UNKNOWN_SESSION");
    EXPECT_EQ(c.code(c.call("POST", "/sessions/s-999999/summary")), "UNKNOWN_SESSION");
}

TEST(Models, TrainSimulateStream) {
    Api api;
    Client c(api);
    const auto id = c.upload(csv_of("manufacture"));
    const auto t = c.call("POST", "/projects/" + id + "/models",
                          R"({"target":"efficiency","features":["humidity","temperature"],"budget":"fast"})");
    ASSERT_EQ(t.status, 202) << t.body;
    const auto mid = t.json_body().at("model_id").get<std::string>();
    api.jobs().wait(t.json_body().at("job_id").get<std::string>());
    const auto m = c.call("GET", "/models/" + mid).json_body();
    EXPECT_TRUE(m.at("ready").get<bool>());
    EXPECT_EQ(m.at("artifact").at("target"), "efficiency");

    const auto sim = c.call("POST", "/models/" + mid + "/simulate", R"({"ranges":{"humidity":{"lo":30,"hi":70}},"budget":50})");
    ASSERT_EQ(sim.status, 200) << sim.body;
    EXPECT_EQ(sim.json_body().at("trace").size(), 50u);
    const auto csv = c.call("POST", "/models/" + mid + "/simulate", R"({"ranges":{"humidity":{"lo":30,"hi":70}},"budget":5})",
                            "application/json", "text/csv");
    EXPECT_EQ(csv.content_type, "text/csv");
    EXPECT_EQ(csv.body.substr(0, csv.body.find('\n')), "humidity,temperature,predicted");
    EXPECT_EQ(c.code(c.call("POST", "/models/" + mid + "/simulate", R"({"ranges":{"voltage":{"lo":0,"hi":1}}})")),
              "UNKNOWN_FEATURE");
    EXPECT_EQ(c.code(c.call("POST", "/models/" + mid + "/simulate", R"({"ranges":{"humidity":{"lo":5,"hi":1}}})")),
              "EMPTY_RANGE");
    EXPECT_EQ(c.code(c.call("POST", "/models/" + mid + "/simulate", R"({"ranges":{},"objective":"sideways"})")),
              "BAD_REQUEST");

    const auto s = c.call("POST", "/models/" + mid + "/stream", "humidity,temperature,efficiency\n50,20,18\n", "text/csv");
    ASSERT_EQ(s.status, 202) << s.body;
    const auto job = c.call("GET", "/jobs/" + s.json_body().at("job_id").get<std::string>());
    EXPECT_EQ(job.status, 200);
    api.jobs().wait(s.json_body().at("job_id").get<std::string>());
    EXPECT_EQ(c.call("GET", "/jobs/" + s.json_body().at("job_id").get<std::string>()).json_body().at("status"), "done");
    EXPECT_EQ(c.code(c.call("POST", "/models/" + mid + "/stream", "{}", "application/json")), "UNSUPPORTED_MEDIA_TYPE");
    EXPECT_EQ(c.code(c.call("POST", "/models/" + mid + "/stream", "", "text/csv")), "EMPTY_INPUT");

    // A failed training job never publishes an artifact.
    const auto small = c.upload("x,y\n1,2\n2,3\n3,5\n");
    const auto bad = c.call("POST", "/projects/" + small + "/models", R"({"target":"y"})").json_body();
    api.jobs().wait(bad.at("job_id").get<std::string>());
    const auto status = c.call("GET", "/models/" + bad.at("model_id").get<std::string>()).json_body();
    EXPECT_EQ(status.at("job_status"), "failed");
    EXPECT_EQ(c.code(c.call("POST", "/models/" + bad.at("model_id").get<std::string>() + "/simulate", R"({"ranges":{}})")),
              "MODEL_NOT_READY");
    EXPECT_EQ(c.call("GET", "/jobs/" + bad.at("job_id").get<std::string>()).json_body().at("error_code"), "TOO_FEW_ROWS");

    EXPECT_EQ(c.code(c.call("POST", "/projects/" + id + "/models", R"({"budget":"fast"})")), "BAD_REQUEST");
    EXPECT_EQ(c.code(c.call("POST", "/projects/p-999999/models", R"({"target":"y"})")), "UNKNOWN_PROJECT");
    EXPECT_EQ(c.code(c.call("GET", "/models/m-999999")), "UNKNOWN_MODEL");
    EXPECT_EQ(c.code(c.call("POST", "/models/m-999999/simulate", R"({"ranges":{}})")), "UNKNOWN_MODEL");
    EXPECT_EQ(c.code(c.call("POST", "/models/m-999999/stream", "a\n1\n", "text/csv")), "UNKNOWN_MODEL");
    EXPECT_EQ(c.code(c.call("GET", "/jobs/job-999999")), "UNKNOWN_JOB");
}

TEST(Routing, UnknownRoutesAndHealth) {
    Api api;
    Client c(api);
    EXPECT_EQ(c.call("GET", "/health").json_body().at("status"), "ok");
    EXPECT_EQ(c.code(c.call("GET", "/nope")), "NOT_FOUND");
    EXPECT_EQ(c.code(c.call("DELETE", "/projects/p-000001")), "NOT_FOUND");
}

TEST(Persistence, RestartSeesEverything) {
    const auto dir = fresh_dir("restart");
    std::string pid, sid, rid, mid;
    {
        Api api(in_dir(dir));
        Client c(api);
        pid = c.upload(csv_of("manufacture"));
        sid = c.call("POST", "/sessions", R"({"project_id":")" + pid + R"(",)" + kSettings + "}")
                  .json_body().at("session").at("session_id").get<std::string>();
        c.call("POST", "/sessions/" + sid + "/step", R"({"pick":0})");
        const auto t = c.call("POST", "/projects/" + pid + "/models", R"({"target":"efficiency","budget":"fast"})").json_body();
        mid = t.at("model_id").get<std::string>();
        api.jobs().wait(t.at("job_id").get<std::string>());
    }
    Api api(in_dir(dir));
    Client c(api);
    EXPECT_EQ(c.call("GET", "/projects/" + pid + "/profile").json_body().at("status"), "ready");
    EXPECT_EQ(c.call("GET", "/sessions/" + sid).json_body().at("history").size(), 1u);
    EXPECT_EQ(c.call("POST", "/sessions/" + sid + "/step", R"({"pick":0})").status, 200);
    rid = c.call("POST", "/sessions/" + sid + "/summary").json_body().at("report_id").get<std::string>();
    EXPECT_TRUE(c.call("GET", "/models/" + mid).json_body().at("ready").get<bool>());
    // New ids continue after the persisted ones.
    EXPECT_NE(c.upload("a,b\n1,2\n"), pid);
    Api again(in_dir(dir));
    Client c2(again);
    EXPECT_EQ(c2.call("GET", "/reports/" + rid).json_body().at("steps").size(), 2u);
    EXPECT_EQ(c2.call("GET", "/sessions/" + sid).json_body().at("status"), "closed");
}

TEST(Config, FileThenEnvironment) {
    const auto dir = fresh_dir("config");
    write_file(dir / "service.json", R"({"port": 9001, "host": "0.0.0.0", "data_dir": "/tmp/x", "threads": 2})");
    ::unsetenv("TABULA_PORT");
    auto cfg = load_config(dir / "service.json");
    EXPECT_EQ(cfg.port, 9001);
    EXPECT_EQ(cfg.host, "0.0.0.0");
    EXPECT_EQ(cfg.data_dir->string(), "/tmp/x");
    ::setenv("TABULA_PORT", "9100", 1);
    ::setenv("TABULA_DATA_DIR", "/tmp/y", 1);
    cfg = load_config(dir / "service.json");
    EXPECT_EQ(cfg.port, 9100);
    EXPECT_EQ(cfg.data_dir->string(), "/tmp/y");
    ::unsetenv("TABULA_PORT");
    ::unsetenv("TABULA_DATA_DIR");
    write_file(dir / "bad.json", "[1]");
    EXPECT_THROW(load_config(dir / "bad.json"), Error);
}

TEST(Http, OverSockets) {
    Api api;
    httplib::Server srv;
    install_routes(srv, api);
    const int port = srv.bind_to_any_port("127.0.0.1");
    std::thread t([&] { srv.listen_after_bind(); });
    srv.wait_until_ready();
    httplib::Client cli("127.0.0.1", port);
    httplib::MultipartFormDataItems items{{"file", "a,b\n1,2\n3,4\n", "tiny.csv", "text/csv"}};
    auto up = cli.Post("/projects", items);
    ASSERT_TRUE(up);
    EXPECT_EQ(up->status, 201);
    const auto j = json::parse(up->body);
    EXPECT_EQ(j.at("name"), "tiny.csv");
    api.jobs().wait(j.at("job_id").get<std::string>());
    auto prof = cli.Get("/projects/" + j.at("project_id").get<std::string>() + "/profile");
    ASSERT_TRUE(prof);
    EXPECT_EQ(json::parse(prof->body).at("row_count"), 2);
    auto missing = cli.Get("/projects/p-999999");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 404);
    EXPECT_EQ(json::parse(missing->body).at("code"), "UNKNOWN_PROJECT");
    srv.stop();
    t.join();
}

TEST(Contract, ErrorCodesMatchStatusTable) {
    const auto& table = api_schema().at("x-error-codes");
    for (int i = 0; i <= static_cast<int>(ErrorCode::Internal); ++i) {
        const auto code = static_cast<ErrorCode>(i);
        const std::string name(to_string(code));
        ASSERT_TRUE(table.contains(name)) << name;
        EXPECT_EQ(table.at(name).get<int>(), http_status(code)) << name;
    }
    EXPECT_EQ(table.size(), static_cast<std::size_t>(ErrorCode::Internal) + 1);
}

// Self-contained: ctest runs each test in its own process.
TEST(Contract, EveryOperationAnswersPerSchema) {
    exercised().clear();
    Api api;
    Client c(api);
    const auto id = c.upload(csv_of("manufacture"));
    c.call("GET", "/health");
    c.call("GET", "/projects/" + id);
    c.call("GET", "/projects/" + id + "/profile");
    c.call("GET", "/projects/" + id + "/insight");
    c.call("POST", "/projects/" + id + "/query", R"({"question":"average humidity"})");
    const auto t = c.call("POST", "/projects/" + id + "/models", R"({"target":"efficiency","budget":"fast"})").json_body();
    const auto mid = t.at("model_id").get<std::string>();
    api.jobs().wait(t.at("job_id").get<std::string>());
    c.call("GET", "/jobs/" + t.at("job_id").get<std::string>());
    c.call("GET", "/models/" + mid);
    c.call("POST", "/models/" + mid + "/simulate", R"({"ranges":{},"budget":3})");
    c.call("POST", "/models/" + mid + "/stream", "humidity,efficiency\n50,18\n", "text/csv");
    const auto sid = c.call("POST", "/sessions", R"({"project_id":")" + id + R"(",)" + kSettings + "}")
                         .json_body().at("session").at("session_id").get<std::string>();
    c.call("GET", "/sessions/" + sid);
    c.call("POST", "/sessions/" + sid + "/step", R"({"pick":0})");
    const auto rid = c.call("POST", "/sessions/" + sid + "/summary").json_body().at("report_id").get<std::string>();
    c.call("GET", "/reports/" + rid);
    for (const auto& [tpl, ops] : api_schema().at("paths").items())
        for (const auto& [method, op] : ops.items())
            EXPECT_TRUE(exercised().count(method + " " + tpl)) << method << " " << tpl;
}
