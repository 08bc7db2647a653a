#pragma once

#include <regex>
#include <set>
#include <string>
#include <vector>

#include "tabula/analysis/result.hpp"
#include "tabula/core/text.hpp"

namespace tabula::insight {

// Numbers in generated prose always go through this formatter: four
// significant digits, whole numbers from 10000 up, exponent form below 1e-4.
inline std::string num(double v) {
    if (!std::isfinite(v) || v == 0.0) return text::format_number(v, 4);
    char buf[64];
    if (std::fabs(v) >= 1e4) {
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    if (std::fabs(v) < 1e-4) {
        std::snprintf(buf, sizeof buf, "%.2e", v);
        return buf;
    }
    return text::format_number(v, 4);
}

// Numerals in `s`, ignoring digits glued to letters or underscores (x2, q_3).
inline std::vector<std::string> numerals(const std::string& s) {
    static const std::regex re(R"((^|[^A-Za-z0-9_.\-])(-?[0-9]+(\.[0-9]+)?(e[-+]?[0-9]+)?)(?![A-Za-z0-9_]|\.[0-9]))");
    std::vector<std::string> out;
    for (std::sregex_iterator it(s.begin(), s.end(), re), end; it != end; ++it) out.push_back((*it)[2].str());
    return out;
}

// Numerals in `text` that are not the formatted form of any source value,
// after blanking every literal (column names, labels, quoted snippets).
inline std::vector<std::string> untraceable_numerals(std::string text, const std::vector<double>& sources,
                                                     std::vector<std::string> literals) {
    std::sort(literals.begin(), literals.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    for (const auto& lit : literals) {
        if (lit.empty()) continue;
        for (auto at = text.find(lit); at != std::string::npos; at = text.find(lit, at + 1))
            text.replace(at, lit.size(), std::string(lit.size(), ' '));
    }
    std::set<std::string> allowed;
    for (double v : sources) allowed.insert(num(v));
    std::vector<std::string> out;
    for (const auto& n : numerals(text))
        if (!allowed.count(n)) out.push_back(n);
    return out;
}

inline std::vector<double> result_numbers(const analysis::AnalysisResult& r) {
    std::vector<double> out;
    for (const auto& t : r.tables)
        for (const auto& row : t.rows) out.insert(out.end(), row.begin(), row.end());
    for (const auto& f : r.findings)
        if (f.number) out.push_back(*f.number);
    return out;
}

inline std::vector<std::string> result_literals(const analysis::AnalysisResult& r) {
    std::vector<std::string> out;
    for (const auto& t : r.tables) {
        out.insert(out.end(), t.row_labels.begin(), t.row_labels.end());
        out.insert(out.end(), t.columns.begin(), t.columns.end());
    }
    for (const auto& f : r.findings)
        if (!f.number) out.push_back(f.text);
    for (const auto& m : r.plan.mentions) out.push_back(m.column);
    out.insert(out.end(), r.warnings.begin(), r.warnings.end());
    return out;
}

}  // namespace tabula::insight
