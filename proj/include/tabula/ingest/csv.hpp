#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tabula/ingest/dataset.hpp"

namespace tabula {

struct LoadOptions {
    char delimiter = ',';
    bool has_header = true;
    std::vector<std::string> null_tokens{"", "NA", "N/A", "null", "NaN"};
    DetectionConfig detection{};
};

namespace csv {

// RFC-4180 records: quoted fields may contain delimiters, doubled quotes and
// line breaks; CRLF and LF line endings are both accepted. Blank lines are
// dropped. `quoted` marks fields that were quoted so callers can keep their
// whitespace.
struct Record {
    std::vector<std::string> fields;
    std::vector<bool> quoted;
};

inline std::vector<Record> parse_records(std::string_view data, char delim) {
    std::vector<Record> records;
    Record cur;
    std::string field;
    bool in_quotes = false;
    bool field_quoted = false;
    bool row_has_content = false;

    const auto end_field = [&] {
        cur.fields.push_back(field);
        cur.quoted.push_back(field_quoted);
        field.clear();
        field_quoted = false;
    };
    const auto end_record = [&] {
        end_field();
        const bool blank = cur.fields.size() == 1 && !cur.quoted[0] && text::trim(cur.fields[0]).empty();
        if (!blank) records.push_back(std::move(cur));
        cur = Record{};
        row_has_content = false;
    };

    for (std::size_t i = 0; i < data.size(); ++i) {
        const char c = data[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < data.size() && data[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        if (c == '"' && text::trim(field).empty()) {
            field.clear();
            in_quotes = true;
            field_quoted = true;
            row_has_content = true;
        } else if (c == delim) {
            end_field();
            row_has_content = true;
        } else if (c == '\r') {
            if (i + 1 < data.size() && data[i + 1] == '\n') ++i;
            end_record();
        } else if (c == '\n') {
            end_record();
        } else {
            field.push_back(c);
            row_has_content = true;
        }
    }
    if (row_has_content || !field.empty()) end_record();
    return records;
}

inline std::string quote_field(std::string_view s, char delim) {
    const bool needs = s.find(delim) != std::string_view::npos || s.find('"') != std::string_view::npos ||
                       s.find('\n') != std::string_view::npos || s.find('\r') != std::string_view::npos;
    if (!needs) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace csv

struct LoadResult {
    Dataset dataset;
    std::vector<std::string> warnings;
};

inline bool is_null_token(std::string_view cell, const std::vector<std::string>& tokens) {
    for (const auto& t : tokens)
        if (text::iequals(cell, t)) return true;
    return false;
}

// Decode CSV bytes into a typed Dataset. Short rows are padded with missing
// cells and long rows truncated; both are reported in `warnings`.
inline LoadResult load_table(std::string_view bytes, const LoadOptions& options = {},
                             std::string project_id = "local") {
    if (text::trim(bytes).empty()) fail(ErrorCode::EmptyInput, "input is empty");
    if (!text::is_valid_utf8(bytes)) fail(ErrorCode::UndecodableBytes, "input is not valid UTF-8");
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);

    auto records = csv::parse_records(bytes, options.delimiter);
    if (records.empty()) fail(ErrorCode::EmptyInput, "input has no records");

    std::vector<std::string> names;
    std::size_t first_data = 0;
    if (options.has_header) {
        for (std::size_t i = 0; i < records[0].fields.size(); ++i) {
            auto n = std::string(text::trim(records[0].fields[i]));
            names.push_back(n.empty() ? "column_" + std::to_string(i + 1) : n);
        }
        first_data = 1;
    } else {
        for (std::size_t i = 0; i < records[0].fields.size(); ++i) names.push_back("column_" + std::to_string(i + 1));
    }
    {
        std::set<std::string> seen;
        for (const auto& n : names)
            if (!seen.insert(text::normalize_name(n)).second)
                fail(ErrorCode::HeaderDuplicate, "duplicate column name '" + n + "'");
    }
    if (records.size() <= first_data) fail(ErrorCode::EmptyInput, "input has a header but no data rows");

    const std::size_t width = names.size();
    std::vector<std::vector<std::string>> cells(width);
    std::vector<std::string> warnings;
    for (std::size_t r = first_data; r < records.size(); ++r) {
        auto& rec = records[r];
        const std::size_t row = r - first_data;
        if (rec.fields.size() < width) {
            warnings.push_back("row " + std::to_string(row) + ": " + std::to_string(rec.fields.size()) + " of " +
                               std::to_string(width) + " fields; padded with missing cells");
        } else if (rec.fields.size() > width) {
            warnings.push_back("row " + std::to_string(row) + ": " + std::to_string(rec.fields.size()) +
                               " fields; extra fields dropped");
        }
        for (std::size_t c = 0; c < width; ++c) {
            std::string v;
            if (c < rec.fields.size()) {
                v = rec.quoted[c] ? rec.fields[c] : std::string(text::trim(rec.fields[c]));
                if (!rec.quoted[c] && is_null_token(v, options.null_tokens)) v.clear();
                if (rec.quoted[c] && is_null_token(text::trim(v), options.null_tokens)) v.clear();
            }
            cells[c].push_back(std::move(v));
        }
    }

    std::vector<Column> columns;
    columns.reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
        ColumnType type = ColumnType::Numeric;
        try {
            type = detect_column_type(cells[c], options.detection);
        } catch (const Error&) {
            // all cells missing: typed numeric so profiling yields null entries
        }
        std::size_t invalid = 0;
        columns.push_back(make_column(names[c], std::move(cells[c]), type, &invalid));
        if (invalid > 0)
            warnings.push_back("column '" + names[c] + "': " + std::to_string(invalid) + " cells not parseable as " +
                               std::string(to_string(type)) + "; treated as missing");
    }
    Dataset ds(std::move(project_id), std::move(columns), warnings);
    return {std::move(ds), std::move(warnings)};
}

// Serialize cells back to RFC-4180 CSV (missing cells are empty).
inline std::string write_csv(const Dataset& ds, char delim = ',') {
    std::ostringstream out;
    const auto& cols = ds.columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) out << delim;
        out << csv::quote_field(cols[c].name, delim);
    }
    out << '\n';
    for (std::size_t r = 0; r < ds.row_count(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) out << delim;
            out << csv::quote_field(cols[c].cells[r], delim);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace tabula
