#pragma once

#include <cmath>
#include <optional>

#include "json.hpp"
#include "tabula/ingest/csv.hpp"
#include "tabula/ingest/profile.hpp"

namespace tabula {

using json = nlohmann::json;

// Non-finite numbers are written as null.
inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
inline json number_or_null(const std::optional<double>& v) { return v ? number_or_null(*v) : json(nullptr); }

inline void to_json(json& j, const NumericStats& s) {
    j = json{{"mean", s.mean},     {"sample_std", s.sample_std}, {"min", s.min},
             {"max", s.max},       {"median", s.median},         {"q1", s.q1},
             {"q3", s.q3},         {"degenerate", s.degenerate}};
}

inline void to_json(json& j, const ColumnProfile& p) {
    j = json{{"name", p.name},
             {"type", to_string(p.ctype)},
             {"count", p.count},
             {"missing_count", p.missing_count},
             {"distinct_count", p.distinct_count},
             {"numeric_stats", nullptr},
             {"top_values", nullptr}};
    if (p.numeric_stats) j["numeric_stats"] = *p.numeric_stats;
    if (p.top_values) {
        json arr = json::array();
        for (const auto& v : *p.top_values) arr.push_back({{"value", v.value}, {"count", v.count}});
        j["top_values"] = std::move(arr);
    }
}

inline void to_json(json& j, const NullableMatrix& m) {
    json rows = json::array();
    for (const auto& r : m.values) {
        json row = json::array();
        for (const auto& v : r) row.push_back(number_or_null(v));
        rows.push_back(std::move(row));
    }
    j = json{{"labels", m.labels}, {"values", std::move(rows)}};
}

inline void to_json(json& j, const TableProfile& p) {
    j = json{{"status", to_string(p.status)},
             {"row_count", p.row_count},
             {"columns", p.column_profiles},
             {"correlation", p.correlation},
             {"association", p.association}};
    if (p.error) j["error"] = *p.error;
}

inline NullableMatrix matrix_from_json(const json& j) {
    NullableMatrix m;
    m.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& row : j.at("values")) {
        std::vector<std::optional<double>> r;
        for (const auto& v : row) r.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
        m.values.push_back(std::move(r));
    }
    return m;
}

inline TableProfile profile_from_json(const json& j) {
    TableProfile p;
    const auto status = j.at("status").get<std::string>();
    p.status = status == "ready" ? ProfileStatus::Ready : status == "failed" ? ProfileStatus::Failed : ProfileStatus::Pending;
    p.row_count = j.value("row_count", std::size_t{0});
    for (const auto& c : j.at("columns")) {
        ColumnProfile cp;
        cp.name = c.at("name").get<std::string>();
        cp.ctype = column_type_from_string(c.at("type").get<std::string>());
        cp.count = c.at("count").get<std::size_t>();
        cp.missing_count = c.at("missing_count").get<std::size_t>();
        cp.distinct_count = c.at("distinct_count").get<std::size_t>();
        if (!c.at("numeric_stats").is_null()) {
            const auto& s = c.at("numeric_stats");
            cp.numeric_stats = NumericStats{s.at("mean").get<double>(),   s.at("sample_std").get<double>(),
                                            s.at("min").get<double>(),    s.at("max").get<double>(),
                                            s.at("median").get<double>(), s.at("q1").get<double>(),
                                            s.at("q3").get<double>(),     s.at("degenerate").get<bool>()};
        }
        if (!c.at("top_values").is_null()) {
            std::vector<ValueCount> top;
            for (const auto& v : c.at("top_values"))
                top.push_back({v.at("value").get<std::string>(), v.at("count").get<std::size_t>()});
            cp.top_values = std::move(top);
        }
        p.column_profiles.push_back(std::move(cp));
    }
    p.correlation = matrix_from_json(j.at("correlation"));
    p.association = matrix_from_json(j.at("association"));
    if (j.contains("error")) p.error = j.at("error").get<std::string>();
    return p;
}

inline json load_options_to_json(const LoadOptions& o) {
    return json{{"delimiter", std::string(1, o.delimiter)},
                {"has_header", o.has_header},
                {"null_tokens", o.null_tokens}};
}

inline LoadOptions load_options_from_json(const json& j) {
    LoadOptions o;
    if (j.contains("delimiter")) {
        const auto d = j.at("delimiter").get<std::string>();
        if (d.size() != 1) fail(ErrorCode::BadRequest, "delimiter must be a single character");
        o.delimiter = d[0];
    }
    o.has_header = j.value("has_header", true);
    if (j.contains("null_tokens")) o.null_tokens = j.at("null_tokens").get<std::vector<std::string>>();
    return o;
}

}  // namespace tabula
