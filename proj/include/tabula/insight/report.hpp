#pragma once

#include <sstream>

#include "tabula/analysis/json_io.hpp"

namespace tabula::insight {

struct ReportSettings {
    std::string description;
    std::string role;
    std::string goal;
    std::string target_column;
};

struct ReportStep {
    std::size_t index = 0;  // 1-based
    std::string question;
    Intention intention = Intention::Distribution;
    analysis::ChartSpec chart;
    std::string insight;
};

struct Report {
    std::string report_id;
    std::string title;
    ReportSettings settings;
    std::string summary;
    std::vector<ReportStep> steps;
};

struct AnalysisStep {
    std::string question;
    analysis::AnalysisResult result;
};

namespace detail {

inline std::string first_sentence(const std::string& s) {
    const auto para = s.substr(0, s.find("\n\n"));
    for (std::size_t i = 0; i + 1 < para.size(); ++i)
        if (para[i] == '.' && para[i + 1] == ' ')
            return para.substr(0, i + 1);
    return para;
}

}  // namespace detail

// Settings, then a recap paragraph, then one section per step in order.
inline Report compile_report(const ReportSettings& settings, const std::vector<AnalysisStep>& steps,
                             std::string report_id = "") {
    if (steps.empty()) fail(ErrorCode::EmptySession, "report needs at least one analysis step");
    Report r;
    r.report_id = std::move(report_id);
    r.settings = settings;
    r.title = "Analysis of " + (settings.target_column.empty() ? std::string("the dataset") : settings.target_column);
    std::string recap = "The analysis";
    if (!settings.role.empty()) recap += " for the " + settings.role + " role";
    if (!settings.goal.empty()) recap += " aimed to " + settings.goal;
    recap += " and covered " + std::string(steps.size() == 1 ? "one step" : std::to_string(steps.size()) + " steps") + ".";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        ReportStep rs;
        rs.index = i + 1;
        rs.question = s.question;
        rs.intention = s.result.plan.intention;
        rs.chart = s.result.chart;
        rs.insight = s.result.insight_text;
        recap += " Step " + std::to_string(rs.index) + " (" + std::string(to_string(rs.intention)) + "): " +
                 detail::first_sentence(rs.insight);
        r.steps.push_back(std::move(rs));
    }
    r.summary = recap;
    return r;
}

inline std::string to_markdown(const Report& r) {
    std::ostringstream out;
    out << "# " << r.title << "\n\n## Settings\n\n";
    out << "- Data: " << r.settings.description << "\n";
    out << "- Role: " << r.settings.role << "\n";
    out << "- Goal: " << r.settings.goal << "\n";
    out << "- Target column: " << r.settings.target_column << "\n\n";
    out << "## Summary\n\n" << r.summary << "\n";
    for (const auto& s : r.steps) {
        out << "\n## Step " << s.index << ": " << s.question << "\n\n";
        out << "- Analysis: " << to_string(s.intention) << "\n";
        out << "- Chart: " << to_string(s.chart.kind) << " of " << s.chart.x.column;
        if (s.chart.y) out << " against " << s.chart.y->column;
        out << "\n\n" << s.insight << "\n";
    }
    return out.str();
}

inline void to_json(json& j, const ReportSettings& s) {
    j = json{{"description", s.description}, {"role", s.role}, {"goal", s.goal}, {"target_column", s.target_column}};
}

inline void from_json(const json& j, ReportSettings& s) {
    s.description = j.value("description", "");
    s.role = j.value("role", "");
    s.goal = j.value("goal", "");
    s.target_column = j.value("target_column", "");
}

inline void to_json(json& j, const ReportStep& s) {
    j = json{{"index", s.index},
             {"question", s.question},
             {"intention", to_string(s.intention)},
             {"chart", s.chart},
             {"insight", s.insight}};
}

inline void from_json(const json& j, ReportStep& s) {
    s.index = j.at("index").get<std::size_t>();
    s.question = j.at("question").get<std::string>();
    s.intention = intention_from_string(j.at("intention").get<std::string>());
    s.chart = j.at("chart").get<analysis::ChartSpec>();
    s.insight = j.at("insight").get<std::string>();
}

inline void to_json(json& j, const Report& r) {
    j = json{{"report_id", r.report_id}, {"title", r.title},     {"settings", r.settings},
             {"summary", r.summary},     {"steps", r.steps}};
}

inline void from_json(const json& j, Report& r) {
    r.report_id = j.value("report_id", "");
    r.title = j.at("title").get<std::string>();
    r.settings = j.at("settings").get<ReportSettings>();
    r.summary = j.at("summary").get<std::string>();
    r.steps = j.at("steps").get<std::vector<ReportStep>>();
}

}  // namespace tabula::insight
