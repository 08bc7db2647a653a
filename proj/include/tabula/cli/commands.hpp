#pragma once

// Command-line front end. `run` parses argv and dispatches; every command
// writes JSON (or CSV) to `out`. Failures print the error code to `err` and
// return a nonzero exit status.

#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "tabula/matcher/evaluate.hpp"
#include "tabula/service/server.hpp"

namespace tabula::cli {

namespace fs = std::filesystem;

enum ExitStatus : int { kOk = 0, kFailure = 1 };

struct Options {
    std::uint64_t seed = 42;
    std::optional<fs::path> knowledge;
};

namespace detail {

// Letters and digits only, lowercased: "Health Care" and "health_care" agree.
inline std::string source_key(std::string_view s) {
    std::string k;
    for (char c : s)
        if (std::isalnum(static_cast<unsigned char>(c))) k += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return k;
}

inline TableProfile load_profile(const ProjectDir& dir, const Dataset& ds) {
    if (auto p = dir.saved_profile(); p && p->ready()) return *p;
    auto p = profile_table(ds);
    dir.save_profile(p);
    return p;
}

inline std::string next_model_id(const ProjectDir& dir) {
    std::size_t n = 0;
    if (fs::exists(dir.models_dir()))
        for (const auto& e : fs::directory_iterator(dir.models_dir())) {
            const auto stem = e.path().stem().string();
            if (stem.rfind("m-", 0) != 0) continue;
            try {
                n = std::max(n, static_cast<std::size_t>(std::stoull(stem.substr(2))));
            } catch (...) {
            }
        }
    char buf[32];
    std::snprintf(buf, sizeof buf, "m-%06zu", n + 1);
    return buf;
}

// name=lo:hi, name=a|b|c (levels) or name=value (fixed).
inline std::pair<std::string, automl::FeatureRange> parse_range(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) fail(ErrorCode::BadRequest, "range must look like name=lo:hi, got '" + spec + "'");
    const auto name = spec.substr(0, eq);
    const auto value = spec.substr(eq + 1);
    automl::FeatureRange r;
    if (const auto colon = value.find(':'); colon != std::string::npos) {
        const auto lo = text::parse_number(value.substr(0, colon));
        const auto hi = text::parse_number(value.substr(colon + 1));
        if (!lo || !hi) fail(ErrorCode::BadRequest, "range bounds must be numbers: '" + spec + "'");
        r.lo = *lo;
        r.hi = *hi;
    } else if (value.find('|') != std::string::npos) {
        r.levels = text::split(value, '|');
    } else if (const auto v = text::parse_number(value)) {
        r.fixed = *v;
    } else {
        r.fixed = value;
    }
    return {name, r};
}

inline void print(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

}  // namespace detail

inline void ingest(const fs::path& file, const fs::path& out_dir, std::ostream& out) {
    const ProjectDir dir{out_dir};
    const auto meta = dir.create(out_dir.filename().string(), file.filename().string(), file.string(), read_file(file), {});
    dir.save_profile(profile_table(dir.dataset()));
    detail::print(out, to_json_doc(meta));
}

inline void profile(const fs::path& project, std::ostream& out) {
    const ProjectDir dir{project};
    detail::print(out, json(detail::load_profile(dir, dir.dataset())));
}

inline void insight(const fs::path& project, std::ostream& out) {
    const ProjectDir dir{project};
    const auto ds = dir.dataset();
    detail::print(out, json(insight::build_insight_report(detail::load_profile(dir, ds), ds, 10)));
}

inline void ask(const fs::path& project, const std::string& question, bool plan_only, const Options& opt,
                std::ostream& out) {
    const ProjectDir dir{project};
    const auto ds = dir.dataset();
    const auto p = detail::load_profile(dir, ds);
    if (plan_only) {
        detail::print(out, json(matcher::match_question(question, p)));
        return;
    }
    insight::KnowledgeStore knowledge;
    if (opt.knowledge) knowledge = insight::KnowledgeStore::from_jsonl(read_file(*opt.knowledge));
    detail::print(out, service::answer_question(question, ds, p, knowledge, guidance::GuidanceConfig{}));
}

// Questions are routed to the project whose directory or name matches their source.
inline matcher::EvaluationReport eval_matcher(const fs::path& corpus_file, const std::vector<fs::path>& projects) {
    const auto corpus = matcher::parse_corpus(read_file(corpus_file));
    std::map<std::string, std::vector<matcher::ColumnInfo>> catalogues;
    for (const auto& path : projects) {
        const ProjectDir dir{path};
        const auto ds = dir.dataset();
        auto cat = matcher::catalogue(detail::load_profile(dir, ds));
        const auto meta = dir.meta();
        catalogues[detail::source_key(fs::path(meta.name).stem().string())] = cat;
        catalogues[detail::source_key(path.filename().string())] = std::move(cat);
    }
    return matcher::evaluate_matcher(corpus, [&](const std::string& source) -> const std::vector<matcher::ColumnInfo>& {
        const auto it = catalogues.find(detail::source_key(source));
        if (it == catalogues.end()) fail(ErrorCode::UnknownProject, "no project for source '" + source + "'");
        return it->second;
    });
}

inline void train(const fs::path& project, const std::string& target, const std::string& metric,
                  const std::string& budget, const std::vector<std::string>& features, const Options& opt,
                  std::ostream& out) {
    const ProjectDir dir{project};
    automl::TrainSpec spec;
    spec.project_id = dir.meta().project_id;
    spec.target = target;
    spec.metric = automl::metric_from_string(metric);
    spec.budget = automl::budget_from_string(budget);
    spec.features = features;
    spec.seed = opt.seed;
    const auto id = detail::next_model_id(dir);
    const auto artifact = automl::train(spec, dir.dataset(), id);
    const auto path = dir.models_dir() / (id + ".json");
    write_file(path, json(artifact).dump() + "\n");
    auto j = automl::artifact_summary(artifact);
    j["path"] = path.string();
    detail::print(out, j);
}

inline void simulate(const fs::path& model_file, const std::vector<std::string>& ranges, bool minimize,
                     std::size_t budget, bool as_csv, const Options& opt, std::ostream& out) {
    const auto model = json::parse(read_file(model_file)).get<automl::ModelArtifact>();
    automl::SimulationRequest req;
    for (const auto& r : ranges) req.ranges.insert(detail::parse_range(r));
    req.objective = minimize ? automl::Objective::Minimize : automl::Objective::Maximize;
    req.budget = budget;
    req.seed = opt.seed;
    const auto result = automl::simulate(model, req);
    if (as_csv) out << automl::trace_csv(model, result);
    else detail::print(out, json(result));
}

inline void serve(const std::optional<fs::path>& config, std::ostream& out) {
    service::Api api(service::load_config(config));
    service::serve(api, [&](int port) {
        out << "listening on " << api.config().host << ":" << port << std::endl;
    });
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"tabula: question answering and guided analysis over CSV tables", "tabula"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--seed", opt.seed, "Seed for every stochastic component");
    app.add_option("--knowledge", opt.knowledge, "Knowledge snippets (JSONL) used as context by ask");

    fs::path file, project, corpus, model, out_file;
    std::optional<fs::path> config;
    std::vector<fs::path> projects;
    std::vector<std::string> features, ranges;
    std::string question, target, metric = "rmse", budget = "standard";
    bool plan_only = false, maximize = false, minimize = false, as_csv = false;
    std::size_t sim_budget = 1000;

    auto* c_ingest = app.add_subcommand("ingest", "Load a CSV into a project directory and profile it");
    c_ingest->add_option("file", file)->required();
    c_ingest->add_option("--out", project, "Project directory to create")->required();

    auto* c_profile = app.add_subcommand("profile", "Print the table profile");
    c_profile->add_option("project", project)->required();

    auto* c_insight = app.add_subcommand("insight", "Print the insight report");
    c_insight->add_option("project", project)->required();

    auto* c_ask = app.add_subcommand("ask", "Answer one question");
    c_ask->add_option("project", project)->required();
    c_ask->add_option("question", question)->required();
    c_ask->add_flag("--plan-only", plan_only, "Print the match result without executing it");

    auto* c_eval = app.add_subcommand("eval-matcher", "Score the matcher on a labelled corpus");
    c_eval->add_option("corpus", corpus)->required();
    c_eval->add_option("projects", projects)->required();
    c_eval->add_option("--out", out_file, "Write the accuracy table here");

    auto* c_train = app.add_subcommand("train", "Train a regression model");
    c_train->add_option("project", project)->required();
    c_train->add_option("--target", target)->required();
    c_train->add_option("--metric", metric, "mae, mse or rmse");
    c_train->add_option("--budget", budget, "fast, standard or thorough");
    c_train->add_option("--features", features, "Input columns (default: all)")->delimiter(',');

    auto* c_sim = app.add_subcommand("simulate", "Search a trained model for the best configuration");
    c_sim->add_option("model", model, "Model artifact written by train")->required();
    c_sim->add_option("--range", ranges, "name=lo:hi, name=a|b|c or name=value");
    auto* f_max = c_sim->add_flag("--maximize", maximize);
    c_sim->add_flag("--minimize", minimize)->excludes(f_max);
    c_sim->add_option("--budget", sim_budget, "Model evaluations");
    c_sim->add_flag("--csv", as_csv, "Print the evaluation trace as CSV");

    auto* c_serve = app.add_subcommand("serve", "Run the HTTP service");
    c_serve->add_option("--config", config, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*c_ingest) ingest(file, project, out);
        else if (*c_profile) profile(project, out);
        else if (*c_insight) insight(project, out);
        else if (*c_ask) ask(project, question, plan_only, opt, out);
        else if (*c_eval) {
            const auto csv = matcher::accuracy_csv(eval_matcher(corpus, projects));
            if (!out_file.empty()) write_file(out_file, csv);
            out << csv;
        } else if (*c_train) train(project, target, metric, budget, features, opt, out);
        else if (*c_sim) simulate(model, ranges, minimize, sim_budget, as_csv, opt, out);
        else if (*c_serve) serve(config, out);
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return kFailure;
    } catch (const json::exception& e) {
        err << "error: " << to_string(ErrorCode::BadRequest) << ": " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        err << "error: " << to_string(ErrorCode::Internal) << ": " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}

}  // namespace tabula::cli
