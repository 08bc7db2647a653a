#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tabula/ingest/dataset.hpp"
#include "tabula/matcher/plan.hpp"

namespace tabula::analysis {

enum class ChartKind { Bar, Line, Scatter, Histogram, Box, Heatmap, Pie };

inline constexpr std::array<ChartKind, 7> kAllChartKinds{ChartKind::Bar,       ChartKind::Line, ChartKind::Scatter,
                                                         ChartKind::Histogram, ChartKind::Box,  ChartKind::Heatmap,
                                                         ChartKind::Pie};

constexpr std::string_view to_string(ChartKind k) noexcept {
    switch (k) {
        case ChartKind::Bar: return "bar";
        case ChartKind::Line: return "line";
        case ChartKind::Scatter: return "scatter";
        case ChartKind::Histogram: return "histogram";
        case ChartKind::Box: return "box";
        case ChartKind::Heatmap: return "heatmap";
        case ChartKind::Pie: return "pie";
    }
    return "bar";
}

inline ChartKind chart_kind_from_string(std::string_view s) {
    for (auto k : kAllChartKinds)
        if (s == to_string(k)) return k;
    fail(ErrorCode::BadRequest, "unknown chart kind '" + std::string(s) + "'");
}

struct Encoding {
    std::string column;
    std::optional<std::string> aggregate;
    friend bool operator==(const Encoding&, const Encoding&) = default;
};

struct ChartSpec {
    ChartKind kind = ChartKind::Bar;
    Encoding x;
    std::optional<Encoding> y;
    std::optional<std::string> series;
    std::string title;
    friend bool operator==(const ChartSpec&, const ChartSpec&) = default;
};

// Encodings must name columns of `ds`; histogram needs a numeric x and pie a
// categorical one.
inline void validate_chart(const ChartSpec& c, const Dataset& ds) {
    const auto& x = ds.column(c.x.column);
    if (c.y) ds.column(c.y->column);
    if (c.series) ds.column(*c.series);
    if (c.kind == ChartKind::Histogram && !x.quantitative())
        fail(ErrorCode::ColumnTypeMismatch, "histogram needs a numeric x column");
    if (c.kind == ChartKind::Pie && !is_categorical_like(x.type))
        fail(ErrorCode::ColumnTypeMismatch, "pie needs a categorical x column");
}

// A small numeric table: rows[r][c] is the value for row_labels[r] under
// columns[c]. NaN marks an undefined cell.
struct NamedTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::string> row_labels;
    std::vector<std::vector<double>> rows;

    void add_row(std::string label, std::vector<double> values) {
        row_labels.push_back(std::move(label));
        rows.push_back(std::move(values));
    }

    double at(std::size_t row, std::string_view column) const {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (columns[c] == column) return rows.at(row).at(c);
        fail(ErrorCode::Internal, "table '" + name + "' has no column '" + std::string(column) + "'");
    }
    friend bool operator==(const NamedTable&, const NamedTable&) = default;
};

// A machine-readable fact. Numeric findings carry `number`, which must also
// appear in one of the result's tables; text findings carry `text` only.
struct Finding {
    std::string key;
    std::optional<double> number;
    std::string text;
    friend bool operator==(const Finding&, const Finding&) = default;
};

struct AnalysisResult {
    QueryPlan plan;
    ChartSpec chart;
    std::vector<NamedTable> tables;
    std::vector<Finding> findings;
    std::vector<std::string> warnings;
    std::string insight_text;
    std::vector<std::string> followups;

    const NamedTable* table(std::string_view name) const {
        for (const auto& t : tables)
            if (t.name == name) return &t;
        return nullptr;
    }
    const Finding* finding(std::string_view key) const {
        for (const auto& f : findings)
            if (f.key == key) return &f;
        return nullptr;
    }
    double number(std::string_view key) const {
        const auto* f = finding(key);
        if (!f || !f->number) fail(ErrorCode::Internal, "no numeric finding '" + std::string(key) + "'");
        return *f->number;
    }
};

// True when every numeric finding equals some table cell exactly.
inline bool findings_consistent(const AnalysisResult& r) {
    for (const auto& f : r.findings) {
        if (!f.number) continue;
        bool found = false;
        for (const auto& t : r.tables)
            for (const auto& row : t.rows)
                for (double v : row) found = found || v == *f.number;
        if (!found) return false;
    }
    return true;
}

}  // namespace tabula::analysis
