#pragma once

#include <sstream>

#include "tabula/analysis/result.hpp"
#include "tabula/ingest/json_io.hpp"
#include "tabula/matcher/json_io.hpp"

namespace tabula::analysis {

inline void to_json(json& j, const Encoding& e) {
    j = json{{"column", e.column}, {"aggregate", nullptr}};
    if (e.aggregate) j["aggregate"] = *e.aggregate;
}

inline void from_json(const json& j, Encoding& e) {
    e.column = j.at("column").get<std::string>();
    e.aggregate.reset();
    if (j.contains("aggregate") && !j.at("aggregate").is_null()) e.aggregate = j.at("aggregate").get<std::string>();
}

inline void to_json(json& j, const ChartSpec& c) {
    j = json{{"kind", to_string(c.kind)}, {"x", c.x}, {"y", nullptr}, {"series", nullptr}, {"title", c.title}};
    if (c.y) j["y"] = *c.y;
    if (c.series) j["series"] = *c.series;
}

inline void from_json(const json& j, ChartSpec& c) {
    c.kind = chart_kind_from_string(j.at("kind").get<std::string>());
    c.x = j.at("x").get<Encoding>();
    c.y.reset();
    c.series.reset();
    if (j.contains("y") && !j.at("y").is_null()) c.y = j.at("y").get<Encoding>();
    if (j.contains("series") && !j.at("series").is_null()) c.series = j.at("series").get<std::string>();
    c.title = j.value("title", "");
}

inline void to_json(json& j, const NamedTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row = json::array();
        for (double v : r) row.push_back(number_or_null(v));
        rows.push_back(std::move(row));
    }
    j = json{{"name", t.name}, {"columns", t.columns}, {"row_labels", t.row_labels}, {"rows", std::move(rows)}};
}

inline void from_json(const json& j, NamedTable& t) {
    t.name = j.at("name").get<std::string>();
    t.columns = j.at("columns").get<std::vector<std::string>>();
    t.row_labels = j.at("row_labels").get<std::vector<std::string>>();
    t.rows.clear();
    for (const auto& r : j.at("rows")) {
        std::vector<double> row;
        for (const auto& v : r) row.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
        t.rows.push_back(std::move(row));
    }
}

inline void to_json(json& j, const Finding& f) {
    j = json{{"key", f.key}};
    if (f.number) j["value"] = number_or_null(*f.number);
    else j["value"] = f.text;
}

inline void from_json(const json& j, Finding& f) {
    f.key = j.at("key").get<std::string>();
    f.number.reset();
    f.text.clear();
    const auto& v = j.at("value");
    if (v.is_number()) f.number = v.get<double>();
    else if (v.is_null()) f.number = std::numeric_limits<double>::quiet_NaN();
    else f.text = v.get<std::string>();
}

inline void to_json(json& j, const AnalysisResult& r) {
    j = json{{"plan", r.plan},         {"chart", r.chart},       {"tables", r.tables},
             {"findings", r.findings}, {"warnings", r.warnings}, {"insight_text", r.insight_text},
             {"followups", r.followups}};
}

inline void from_json(const json& j, AnalysisResult& r) {
    r.plan = j.at("plan").get<QueryPlan>();
    r.chart = j.at("chart").get<ChartSpec>();
    r.tables = j.at("tables").get<std::vector<NamedTable>>();
    r.findings = j.at("findings").get<std::vector<Finding>>();
    r.warnings = j.value("warnings", std::vector<std::string>{});
    r.insight_text = j.value("insight_text", "");
    r.followups = j.value("followups", std::vector<std::string>{});
}

// Table export: header "label,<columns...>", empty cells for undefined values.
inline std::string table_csv(const NamedTable& t) {
    std::ostringstream out;
    out << "label";
    for (const auto& c : t.columns) out << ',' << csv::quote_field(c, ',');
    out << '\n';
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out << csv::quote_field(t.row_labels[r], ',');
        for (double v : t.rows[r]) {
            out << ',';
            if (std::isfinite(v)) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", v);
                out << buf;
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace tabula::analysis
