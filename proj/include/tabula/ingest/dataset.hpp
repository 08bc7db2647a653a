#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tabula/core/error.hpp"
#include "tabula/core/text.hpp"

namespace tabula {

enum class ColumnType { Numeric, Categorical, Datetime, Boolean, Text };

constexpr std::string_view to_string(ColumnType t) noexcept {
    switch (t) {
        case ColumnType::Numeric: return "numeric";
        case ColumnType::Categorical: return "categorical";
        case ColumnType::Datetime: return "datetime";
        case ColumnType::Boolean: return "boolean";
        case ColumnType::Text: return "text";
    }
    return "text";
}

inline ColumnType column_type_from_string(std::string_view s) {
    for (auto t : {ColumnType::Numeric, ColumnType::Categorical, ColumnType::Datetime,
                   ColumnType::Boolean, ColumnType::Text}) {
        if (s == to_string(t)) return t;
    }
    fail(ErrorCode::BadRequest, "unknown column type '" + std::string(s) + "'");
}

// Columns whose cells carry a number (dates map to fractional days).
constexpr bool is_quantitative(ColumnType t) noexcept {
    return t == ColumnType::Numeric || t == ColumnType::Datetime;
}
// Columns that behave as a finite set of levels.
constexpr bool is_categorical_like(ColumnType t) noexcept {
    return t == ColumnType::Categorical || t == ColumnType::Boolean;
}

// Fixed type-detection constants; overridable per load.
struct DetectionConfig {
    double numeric_share = 0.95;
    double datetime_share = 0.95;
    double categorical_distinct_ratio = 0.5;
    std::size_t categorical_distinct_cap = 100;
};

namespace datetime {

// Days since 1970-01-01 for a proleptic Gregorian date.
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) noexcept {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
    std::int64_t year;
    unsigned month;
    unsigned day;
};

constexpr Civil civil_from_days(std::int64_t z) noexcept {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return {y + (m <= 2), m, d};
}

inline bool leap(std::int64_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

inline unsigned days_in_month(std::int64_t y, unsigned m) {
    static constexpr std::array<unsigned, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && leap(y) ? 29 : kDays[m - 1];
}

namespace detail {
inline bool read_digits(std::string_view s, std::size_t pos, std::size_t count, int& out) {
    if (pos + count > s.size()) return false;
    int v = 0;
    for (std::size_t i = pos; i < pos + count; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        v = v * 10 + (s[i] - '0');
    }
    out = v;
    return true;
}

inline std::optional<double> time_of_day(std::string_view s) {
    // HH:MM[:SS[.fff]][Z|+HH:MM|-HH:MM]; offsets are accepted but ignored
    int hh = 0, mm = 0, ss = 0;
    if (!read_digits(s, 0, 2, hh) || s.size() < 5 || s[2] != ':' || !read_digits(s, 3, 2, mm))
        return std::nullopt;
    std::size_t pos = 5;
    double frac = 0.0;
    if (pos < s.size() && s[pos] == ':') {
        if (!read_digits(s, pos + 1, 2, ss)) return std::nullopt;
        pos += 3;
        if (pos < s.size() && s[pos] == '.') {
            ++pos;
            double scale = 0.1;
            const std::size_t start = pos;
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
                frac += scale * (s[pos] - '0');
                scale /= 10.0;
                ++pos;
            }
            if (pos == start) return std::nullopt;
        }
    }
    if (pos < s.size()) {
        const auto rest = s.substr(pos);
        int oh = 0, om = 0;
        const bool offset = (rest[0] == '+' || rest[0] == '-') && rest.size() == 6 &&
                            read_digits(rest, 1, 2, oh) && rest[3] == ':' &&
                            read_digits(rest, 4, 2, om);
        if (!(rest == "Z" || offset)) return std::nullopt;
    }
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    return (hh * 3600.0 + mm * 60.0 + ss + frac) / 86400.0;
}
}  // namespace detail

// Accepted forms: ISO-8601 date and datetime (T or space separator),
// YYYY/MM/DD and MM/DD/YYYY (month first). Returns fractional days since
// the Unix epoch.
inline std::optional<double> parse(std::string_view raw) {
    const auto s = text::trim(raw);
    int y = 0, m = 0, d = 0;
    std::size_t consumed = 0;
    if (s.size() >= 10 && (s[4] == '-' || s[4] == '/') && s[7] == s[4] &&
        detail::read_digits(s, 0, 4, y) && detail::read_digits(s, 5, 2, m) &&
        detail::read_digits(s, 8, 2, d)) {
        consumed = 10;
    } else if (s.size() >= 10 && s[2] == '/' && s[5] == '/' && detail::read_digits(s, 0, 2, m) &&
               detail::read_digits(s, 3, 2, d) && detail::read_digits(s, 6, 4, y)) {
        consumed = 10;
    } else {
        return std::nullopt;
    }
    if (m < 1 || m > 12 || d < 1 || static_cast<unsigned>(d) > days_in_month(y, static_cast<unsigned>(m)))
        return std::nullopt;
    double days = static_cast<double>(days_from_civil(y, static_cast<unsigned>(m), static_cast<unsigned>(d)));
    if (consumed == s.size()) return days;
    // times only follow the ISO layout
    if (s[4] != '-' || (s[10] != 'T' && s[10] != ' ')) return std::nullopt;
    const auto tod = detail::time_of_day(s.substr(11));
    if (!tod) return std::nullopt;
    return days + *tod;
}

inline std::string format_date(double days) {
    const auto c = civil_from_days(static_cast<std::int64_t>(std::floor(days)));
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02u", static_cast<long long>(c.year), c.month, c.day);
    return buf;
}

}  // namespace datetime

inline bool is_boolean_token(std::string_view s) {
    const auto l = text::to_lower(text::trim(s));
    return l == "true" || l == "false" || l == "yes" || l == "no" || l == "0" || l == "1";
}

inline double boolean_value(std::string_view s) {
    const auto l = text::to_lower(text::trim(s));
    return (l == "true" || l == "yes" || l == "1") ? 1.0 : 0.0;
}

// Type detection over the non-missing cells of one column.
inline ColumnType detect_column_type(const std::vector<std::string>& values,
                                     const DetectionConfig& config = {}) {
    std::size_t present = 0, numeric = 0, dated = 0;
    bool all_boolean = true;
    std::set<std::string> distinct;
    std::set<std::string> boolean_levels;
    for (const auto& raw : values) {
        const auto v = text::trim(raw);
        if (v.empty()) continue;
        ++present;
        if (text::parse_number(v)) ++numeric;
        if (datetime::parse(v)) ++dated;
        if (is_boolean_token(v)) {
            boolean_levels.insert(text::to_lower(v));
        } else {
            all_boolean = false;
        }
        distinct.emplace(v);
    }
    if (present == 0) fail(ErrorCode::AllMissing, "column has no non-missing cells");
    const auto share = [&](std::size_t k) { return static_cast<double>(k) / static_cast<double>(present); };
    if (share(numeric) >= config.numeric_share) return ColumnType::Numeric;
    if (share(dated) >= config.datetime_share) return ColumnType::Datetime;
    if (all_boolean && boolean_levels.size() <= 2) return ColumnType::Boolean;
    if (share(distinct.size()) <= config.categorical_distinct_ratio &&
        distinct.size() <= config.categorical_distinct_cap)
        return ColumnType::Categorical;
    return ColumnType::Text;
}

// One typed column. `cells` holds the trimmed raw text ("" when missing);
// `values` holds the numeric view (NaN when missing) for quantitative and
// boolean columns and is empty otherwise.
struct Column {
    std::string name;
    ColumnType type = ColumnType::Text;
    std::vector<std::string> cells;
    std::vector<std::uint8_t> missing;
    std::vector<double> values;

    std::size_t size() const noexcept { return cells.size(); }
    bool is_missing(std::size_t row) const { return missing[row] != 0; }
    bool quantitative() const noexcept { return is_quantitative(type); }
    bool has_values() const noexcept { return !values.empty(); }

    std::size_t present_count() const {
        std::size_t n = 0;
        for (auto m : missing) n += m == 0;
        return n;
    }

    // Non-missing numeric values in row order.
    std::vector<double> present_values() const {
        std::vector<double> out;
        out.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!missing[i]) out.push_back(values[i]);
        return out;
    }
};

// Build a typed column from raw cells. Cells equal to a null token are
// missing; in numeric and datetime columns, cells that do not parse are also
// treated as missing (reported through `invalid`).
inline Column make_column(std::string name, std::vector<std::string> raw, ColumnType type,
                          std::size_t* invalid = nullptr) {
    Column col;
    col.name = std::move(name);
    col.type = type;
    col.cells = std::move(raw);
    col.missing.assign(col.cells.size(), 0);
    std::size_t bad = 0;
    const bool numeric_view = is_quantitative(type) || type == ColumnType::Boolean;
    if (numeric_view) col.values.assign(col.cells.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < col.cells.size(); ++i) {
        auto& cell = col.cells[i];
        if (cell.empty()) {
            col.missing[i] = 1;
            continue;
        }
        if (!numeric_view) continue;
        std::optional<double> v;
        switch (type) {
            case ColumnType::Numeric: v = text::parse_number(cell); break;
            case ColumnType::Datetime: v = datetime::parse(cell); break;
            case ColumnType::Boolean:
                if (is_boolean_token(cell)) v = boolean_value(cell);
                break;
            default: break;
        }
        if (v) {
            col.values[i] = *v;
        } else {
            col.missing[i] = 1;
            ++bad;
        }
    }
    if (invalid) *invalid = bad;
    return col;
}

inline Column make_numeric_column(std::string name, const std::vector<double>& values) {
    Column col;
    col.name = std::move(name);
    col.type = ColumnType::Numeric;
    col.values = values;
    col.cells.reserve(values.size());
    col.missing.reserve(values.size());
    for (double v : values) {
        const bool miss = std::isnan(v);
        col.missing.push_back(miss ? 1 : 0);
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        col.cells.emplace_back(miss ? "" : buf);
    }
    return col;
}

class Dataset {
public:
    Dataset() = default;

    // Validates equal lengths and unique normalized names.
    Dataset(std::string project_id, std::vector<Column> columns, std::vector<std::string> warnings = {})
        : project_id_(std::move(project_id)), columns_(std::move(columns)), warnings_(std::move(warnings)) {
        row_count_ = columns_.empty() ? 0 : columns_.front().size();
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (columns_[i].size() != row_count_)
                fail(ErrorCode::SchemaMismatch, "column '" + columns_[i].name + "' has a different length");
            const auto key = text::normalize_name(columns_[i].name);
            if (!index_.emplace(key, i).second)
                fail(ErrorCode::HeaderDuplicate, "duplicate column name '" + columns_[i].name + "'");
        }
    }

    const std::string& project_id() const noexcept { return project_id_; }
    std::size_t row_count() const noexcept { return row_count_; }
    std::size_t column_count() const noexcept { return columns_.size(); }
    const std::vector<Column>& columns() const noexcept { return columns_; }
    const Column& column(std::size_t i) const { return columns_.at(i); }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    std::optional<std::size_t> find(std::string_view name) const {
        const auto it = index_.find(text::normalize_name(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const Column& column(std::string_view name) const {
        const auto idx = find(name);
        if (!idx) fail(ErrorCode::UnknownColumn, "unknown column '" + std::string(name) + "'");
        return columns_[*idx];
    }

    std::vector<std::string> column_names() const {
        std::vector<std::string> out;
        for (const auto& c : columns_) out.push_back(c.name);
        return out;
    }

    // Rows where keep[i] != 0, same schema.
    Dataset filter_rows(const std::vector<std::uint8_t>& keep) const {
        std::vector<Column> out;
        out.reserve(columns_.size());
        for (const auto& c : columns_) {
            Column nc;
            nc.name = c.name;
            nc.type = c.type;
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (!keep[i]) continue;
                nc.cells.push_back(c.cells[i]);
                nc.missing.push_back(c.missing[i]);
                if (c.has_values()) nc.values.push_back(c.values[i]);
            }
            out.push_back(std::move(nc));
        }
        return Dataset(project_id_, std::move(out), warnings_);
    }

    Dataset with_column(Column extra) const {
        auto cols = columns_;
        cols.push_back(std::move(extra));
        return Dataset(project_id_, std::move(cols), warnings_);
    }

private:
    std::string project_id_;
    std::vector<Column> columns_;
    std::size_t row_count_ = 0;
    std::vector<std::string> warnings_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Convenience for building datasets from string cells with detection.
inline Dataset make_dataset(std::vector<std::pair<std::string, std::vector<std::string>>> columns,
                            std::string project_id = "local", const DetectionConfig& config = {}) {
    std::vector<Column> out;
    for (auto& [name, cells] : columns) {
        for (auto& c : cells) c = std::string(text::trim(c));
        ColumnType t = ColumnType::Numeric;
        try {
            t = detect_column_type(cells, config);
        } catch (const Error&) {
            t = ColumnType::Numeric;
        }
        out.push_back(make_column(name, std::move(cells), t));
    }
    return Dataset(std::move(project_id), std::move(out));
}

}  // namespace tabula
