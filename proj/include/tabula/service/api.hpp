#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tabula/automl/registry.hpp"
#include "tabula/guidance/store.hpp"
#include "tabula/ingest/json_io.hpp"
#include "tabula/insight/json_io.hpp"
#include "tabula/insight/knowledge.hpp"
#include "tabula/service/config.hpp"

namespace tabula::service {

using nlohmann::json;

struct UploadedFile {
    std::string field;
    std::string filename;
    std::string content;
};

struct ApiRequest {
    std::string method;
    std::string path;  // may carry a query string
    std::string body;
    std::string content_type;
    std::string accept;
    std::vector<UploadedFile> files;  // multipart parts, already split by the transport
};

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";

    json json_body() const { return json::parse(body); }
};

inline ApiResponse json_response(int status, const json& j) { return {status, j.dump(), "application/json"}; }

inline ApiResponse error_response(ErrorCode code, const std::string& message, json detail = nullptr) {
    return json_response(http_status(code),
                         json{{"code", to_string(code)}, {"message", message}, {"detail", std::move(detail)}});
}

inline json job_json(const JobInfo& j) {
    return json{{"job_id", j.job_id},
                {"kind", j.kind},
                {"subject", j.subject},
                {"status", to_string(j.status)},
                {"error", j.error ? json(*j.error) : json(nullptr)},
                {"error_code", j.error_code ? json(*j.error_code) : json(nullptr)}};
}

namespace detail {

inline std::vector<std::string> segments(std::string_view path) {
    std::vector<std::string> out;
    for (auto& s : text::split(path, '/'))
        if (!s.empty()) out.push_back(s);
    return out;
}

inline std::string url_decode(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '+') {
            out += ' ';
        } else if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
                   std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
            out += static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
            i += 2;
        } else {
            out += s[i];
        }
    }
    return out;
}

inline std::map<std::string, std::string> query_params(std::string_view q) {
    std::map<std::string, std::string> out;
    for (const auto& kv : text::split(q, '&')) {
        if (kv.empty()) continue;
        const auto eq = kv.find('=');
        out[url_decode(kv.substr(0, eq))] = eq == std::string::npos ? "" : url_decode(kv.substr(eq + 1));
    }
    return out;
}

inline bool media_is(std::string_view content_type, std::string_view want) {
    const auto semi = content_type.find(';');
    return text::iequals(text::trim(content_type.substr(0, semi)), want);
}

inline bool accepts(std::string_view accept, std::string_view want) {
    for (const auto& part : text::split(accept, ',')) {
        const auto semi = part.find(';');
        if (text::iequals(text::trim(std::string_view(part).substr(0, semi)), want)) return true;
    }
    return false;
}

inline json parse_body(const ApiRequest& r) {
    if (r.body.empty()) return json::object();
    if (!r.content_type.empty() && !media_is(r.content_type, "application/json"))
        fail(ErrorCode::UnsupportedMediaType, "expected application/json, got " + r.content_type);
    auto j = json::parse(r.body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail(ErrorCode::BadRequest, "request body is not a JSON object");
    return j;
}

}  // namespace detail

// Matches, executes and explains one question; follow-ups and knowledge
// context included. The query route and the CLI both answer through here.
inline json answer_question(const std::string& question, const Dataset& ds, const TableProfile& profile,
                            const insight::KnowledgeStore& knowledge, const guidance::GuidanceConfig& gcfg) {
    const auto match = matcher::match_question(question, profile);
    auto result = analysis::execute(match.top(), ds, &profile);

    std::vector<std::string> snippets;
    json context = json::array();
    if (!knowledge.empty()) {
        const auto hits = knowledge.retrieve(question, 2);
        for (const auto& h : hits.hits) snippets.push_back(h.snippet->text);
        context = insight::retrieval_json(hits).at("hits");
    }
    result.insight_text = insight::explain_result(result, snippets);

    // Follow-ups come from the guidance rule table, centred on the first
    // numeric column asked about (else the first column).
    const auto cols = match.top().columns();
    if (!cols.empty()) {
        auto centre = cols.front();
        for (const auto& c : cols)
            if (const auto* cp = profile.find(c); cp && cp->ctype == ColumnType::Numeric) {
                centre = c;
                break;
            }
        guidance::Session s;
        s.settings.role = "general";
        s.settings.target_column = centre;
        s.history.push_back({question, match.top(), result});
        for (const auto& r : guidance::detail::recommend(s, ds, profile, gcfg)) result.followups.push_back(r.question);
    }
    return json{{"match", match},
                {"result", result},
                {"insight", result.insight_text},
                {"followups", result.followups},
                {"context", std::move(context)}};
}

// Binds every module into one request dispatcher. Thread-safe: each
// registry serializes its own writes.
class Api {
public:
    explicit Api(ServiceConfig cfg = {})
        : cfg_(std::move(cfg)),
          projects_(runner_, cfg_.data_dir),
          models_(runner_, cfg_.data_dir),
          sessions_(cfg_.data_dir) {
        if (cfg_.knowledge_path && std::filesystem::exists(*cfg_.knowledge_path))
            knowledge_ = insight::KnowledgeStore::from_jsonl(read_file(*cfg_.knowledge_path));
        if (!cfg_.model_url.empty()) client_ = std::make_unique<insight::RemoteClient>(cfg_.model_url, cfg_.model_key);
    }

    Api(const Api&) = delete;
    Api& operator=(const Api&) = delete;
    // Jobs hold pointers into the registries, so they finish first.
    ~Api() { runner_.drain(); }

    const ServiceConfig& config() const noexcept { return cfg_; }
    JobRunner& jobs() noexcept { return runner_; }
    void drain() { runner_.drain(); }

    ApiResponse handle(const ApiRequest& req) {
        try {
            return route(req);
        } catch (const Error& e) {
            return error_response(e.code(), e.what());
        } catch (const json::exception& e) {
            return error_response(ErrorCode::BadRequest, std::string("malformed JSON field: ") + e.what());
        } catch (const std::exception& e) {
            return error_response(ErrorCode::Internal, e.what());
        }
    }

    ApiResponse handle(std::string method, std::string path, std::string body = "",
                       std::string content_type = "application/json", std::string accept = "application/json") {
        return handle(ApiRequest{std::move(method), std::move(path), std::move(body), std::move(content_type),
                                 std::move(accept), {}});
    }

private:
    ApiResponse route(const ApiRequest& req) {
        const auto qpos = req.path.find('?');
        const auto seg = detail::segments(std::string_view(req.path).substr(0, qpos));
        const auto query = qpos == std::string::npos ? std::map<std::string, std::string>{}
                                                     : detail::query_params(std::string_view(req.path).substr(qpos + 1));
        const auto& m = req.method;
        const auto n = seg.size();
        const auto is = [&](std::size_t i, std::string_view s) { return i < n && seg[i] == s; };

        if (m == "GET" && n == 1 && is(0, "health")) return json_response(200, {{"status", "ok"}});
        if (is(0, "projects")) {
            if (m == "POST" && n == 1) return create_project(req, query);
            if (m == "GET" && n == 2) return get_project(seg[1]);
            if (m == "GET" && n == 3 && is(2, "profile")) return json_response(200, *projects_.profile(seg[1]));
            if (m == "GET" && n == 3 && is(2, "insight")) return get_insight(seg[1]);
            if (m == "POST" && n == 3 && is(2, "query")) return query_project(seg[1], detail::parse_body(req));
            if (m == "POST" && n == 3 && is(2, "models")) return train_model(seg[1], detail::parse_body(req));
        }
        if (is(0, "jobs") && m == "GET" && n == 2) return json_response(200, job_json(runner_.status(seg[1])));
        if (is(0, "models") && n >= 2) {
            if (m == "GET" && n == 2) return get_model(seg[1]);
            if (m == "POST" && n == 3 && is(2, "simulate")) return simulate_model(seg[1], detail::parse_body(req), req);
            if (m == "POST" && n == 3 && is(2, "stream")) return stream_model(seg[1], req);
        }
        if (is(0, "sessions")) {
            if (m == "POST" && n == 1) return create_session(detail::parse_body(req));
            if (m == "GET" && n == 2) return json_response(200, sessions_.session(seg[1]));
            if (m == "POST" && n == 3 && is(2, "step")) return step_session(seg[1], detail::parse_body(req));
            if (m == "POST" && n == 3 && is(2, "summary")) return summarize_session(seg[1]);
        }
        if (is(0, "reports") && m == "GET" && n == 2) {
            const auto report = sessions_.report(seg[1]);
            if (detail::accepts(req.accept, "text/markdown")) return {200, insight::to_markdown(report), "text/markdown"};
            return json_response(200, report);
        }
        return error_response(ErrorCode::NotFound, "no route for " + m + " " + req.path,
                              json{{"method", m}, {"path", req.path}});
    }

    // Ready profile, or a PROFILE_NOT_READY error naming the project.
    std::shared_ptr<const TableProfile> ready(const std::string& project_id) {
        auto p = projects_.profile(project_id);
        if (!p->ready()) {
            const std::string state = p->status == ProfileStatus::Failed ? "failed" : "pending";
            fail(ErrorCode::ProfileNotReady, "profile for '" + project_id + "' is " + state);
        }
        return p;
    }

    ApiResponse create_project(const ApiRequest& req, const std::map<std::string, std::string>& query) {
        std::string bytes, name = query.count("name") ? query.at("name") : "";
        if (detail::media_is(req.content_type, "multipart/form-data")) {
            const UploadedFile* file = nullptr;
            for (const auto& f : req.files)
                if (!file || f.field == "file") file = &f;
            if (!file) fail(ErrorCode::BadRequest, "multipart upload has no file part");
            bytes = file->content;
            if (name.empty()) name = file->filename;
        } else if (detail::media_is(req.content_type, "text/csv") || detail::media_is(req.content_type, "text/plain")) {
            bytes = req.body;
        } else {
            fail(ErrorCode::UnsupportedMediaType, "upload CSV as multipart/form-data or text/csv");
        }
        const auto id = projects_.create(bytes, name.empty() ? "upload.csv" : name);
        const auto job = projects_.start_profiling(id);
        const auto ds = projects_.dataset(id);
        return json_response(201, json{{"project_id", id},
                                       {"job_id", job.job_id},
                                       {"name", projects_.name(id)},
                                       {"row_count", ds->row_count()},
                                       {"warnings", ds->warnings()}});
    }

    ApiResponse get_project(const std::string& id) {
        const auto ds = projects_.dataset(id);
        const auto p = projects_.profile(id);
        json cols = json::array();
        for (const auto& c : ds->columns()) cols.push_back({{"name", c.name}, {"type", to_string(c.type)}});
        return json_response(200, json{{"project_id", id},
                                       {"name", projects_.name(id)},
                                       {"row_count", ds->row_count()},
                                       {"columns", std::move(cols)},
                                       {"profile_status", to_string(p->status)},
                                       {"warnings", ds->warnings()}});
    }

    ApiResponse get_insight(const std::string& id) {
        const auto p = ready(id);
        const auto ds = projects_.dataset(id);
        return json_response(200, insight::build_insight_report(*p, *ds, 10, client_.get()));
    }

    ApiResponse query_project(const std::string& id, const json& body) {
        if (!body.contains("question") || !body.at("question").is_string())
            fail(ErrorCode::BadRequest, "query needs a 'question' string");
        const auto question = body.at("question").get<std::string>();
        const auto p = ready(id);
        return json_response(200, answer_question(question, *projects_.dataset(id), *p, knowledge_, sessions_.config()));
    }

    ApiResponse train_model(const std::string& id, json body) {
        body["project_id"] = id;
        const auto spec = body.get<automl::TrainSpec>();
        const auto ds = projects_.dataset(id);
        const auto [model_id, job] = models_.start_training(spec, ds);
        return json_response(202, json{{"model_id", model_id}, {"job_id", job.job_id}});
    }

    ApiResponse get_model(const std::string& id) {
        const auto s = models_.status(id);
        json j{{"model_id", s.model_id},
               {"project_id", s.project_id},
               {"job_id", s.job_id},
               {"job_status", to_string(s.job_status)},
               {"ready", s.ready},
               {"error", s.error ? json(*s.error) : json(nullptr)},
               {"artifact", nullptr}};
        if (s.ready) j["artifact"] = automl::artifact_summary(*models_.artifact(id));
        return json_response(200, j);
    }

    ApiResponse simulate_model(const std::string& id, const json& body, const ApiRequest& req) {
        const auto request = body.get<automl::SimulationRequest>();
        const auto model = models_.artifact(id);
        const auto result = automl::simulate(*model, request);
        if (detail::accepts(req.accept, "text/csv")) return {200, automl::trace_csv(*model, result), "text/csv"};
        return json_response(200, result);
    }

    ApiResponse stream_model(const std::string& id, const ApiRequest& req) {
        if (!detail::media_is(req.content_type, "text/csv"))
            fail(ErrorCode::UnsupportedMediaType, "stream rows as text/csv");
        models_.artifact(id);  // 404 / 409 before queueing
        auto rows = std::make_shared<const Dataset>(load_table(req.body, {}, id).dataset);
        const auto job = models_.start_stream(id, rows);
        return json_response(202, json{{"model_id", id}, {"job_id", job.job_id}, {"rows", rows->row_count()}});
    }

    ApiResponse create_session(const json& body) {
        if (!body.contains("project_id") || !body.at("project_id").is_string())
            fail(ErrorCode::BadRequest, "session needs a 'project_id'");
        if (!body.contains("settings") || !body.at("settings").is_object())
            fail(ErrorCode::InvalidSettings, "session needs a 'settings' object");
        const auto project_id = body.at("project_id").get<std::string>();
        const auto settings = body.at("settings").get<guidance::SessionSettings>();
        const auto p = ready(project_id);
        const auto ds = projects_.dataset(project_id);
        const auto [session, first] = sessions_.create(project_id, settings, *ds, *p);
        return json_response(201, json{{"session", session}, {"recommendation", first}});
    }

    ApiResponse step_session(const std::string& id, const json& body) {
        guidance::StepInput input;
        if (body.contains("pick") && body.at("pick").is_number_unsigned())
            input = body.at("pick").get<std::size_t>();
        else if (body.contains("question") && body.at("question").is_string())
            input = body.at("question").get<std::string>();
        else
            fail(ErrorCode::BadRequest, "step needs a 'question' string or a 'pick' index");
        const auto project_id = sessions_.session(id).project_id;
        const auto p = ready(project_id);
        const auto ds = projects_.dataset(project_id);
        const auto out = sessions_.step(id, input, *ds, *p);
        auto j = guidance::step_outcome_json(out);
        const auto s = sessions_.session(id);
        j["status"] = to_string(s.status);
        j["history_length"] = s.history.size();
        return json_response(200, j);
    }

    ApiResponse summarize_session(const std::string& id) {
        return json_response(201, sessions_.summarize(id));
    }

    ServiceConfig cfg_;
    JobRunner runner_;
    ProjectRegistry projects_;
    automl::ModelRegistry models_;
    guidance::SessionStore sessions_;
    insight::KnowledgeStore knowledge_;
    std::unique_ptr<insight::ModelClient> client_;
};

}  // namespace tabula::service
