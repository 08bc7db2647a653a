#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tabula/core/error.hpp"
#include "tabula/core/text.hpp"

namespace tabula::matcher {

inline const std::unordered_map<std::string, int>& number_words() {
    static const std::unordered_map<std::string, int> kWords{
        {"zero", 0},     {"one", 1},       {"two", 2},        {"three", 3},     {"four", 4},
        {"five", 5},     {"six", 6},       {"seven", 7},      {"eight", 8},     {"nine", 9},
        {"ten", 10},     {"eleven", 11},   {"twelve", 12},    {"thirteen", 13}, {"fourteen", 14},
        {"fifteen", 15}, {"sixteen", 16},  {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19},
        {"twenty", 20},  {"thirty", 30},   {"forty", 40},     {"fifty", 50},    {"sixty", 60},
        {"seventy", 70}, {"eighty", 80},   {"ninety", 90}};
    return kWords;
}

inline bool is_numeral(std::string_view token) { return text::parse_number(token).has_value(); }

inline std::optional<double> numeral_value(std::string_view token) { return text::parse_number(token); }

namespace detail {

// "1,000" / "$5" / "50%" / "3.5," -> the bare number, if the chunk is one.
inline std::optional<std::string> numeric_chunk(std::string_view chunk) {
    std::string s;
    for (char c : chunk)
        if (c != ',' && c != '$' && c != '%') s.push_back(c);
    while (!s.empty() && (s.back() == '.' || s.back() == '?' || s.back() == '!' || s.back() == ';' ||
                          s.back() == ':' || s.back() == ')' || s.back() == '"' || s.back() == '\''))
        s.pop_back();
    while (!s.empty() && (s.front() == '(' || s.front() == '"' || s.front() == '\'')) s.erase(s.begin());
    if (s.empty()) return std::nullopt;
    if (const auto v = text::parse_number(s)) return text::format_number(*v, 15);
    return std::nullopt;
}

}  // namespace detail

// Lower-cased, punctuation-free tokens with number words rewritten as
// numerals. Underscores and hyphens split words, so "electrical_test" and
// "electrical test" tokenize identically.
inline std::vector<std::string> tokenize(std::string_view input) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < input.size()) {
        while (i < input.size() && std::isspace(static_cast<unsigned char>(input[i]))) ++i;
        const std::size_t start = i;
        while (i < input.size() && !std::isspace(static_cast<unsigned char>(input[i]))) ++i;
        if (start == i) break;
        const auto chunk = input.substr(start, i - start);
        if (auto num = detail::numeric_chunk(chunk)) {
            tokens.push_back(*num);
            continue;
        }
        std::string word;
        const auto flush = [&] {
            if (word.empty()) return;
            const auto it = number_words().find(word);
            tokens.push_back(it != number_words().end() ? std::to_string(it->second) : word);
            word.clear();
        };
        for (char c : chunk) {
            const auto uc = static_cast<unsigned char>(c);
            if (c == '\'') continue;  // "what's" -> "whats"
            if (std::isalnum(uc) || uc >= 0x80) {
                word.push_back(static_cast<char>(std::tolower(uc)));
            } else {
                flush();
            }
        }
        flush();
    }
    return tokens;
}

inline std::vector<std::string> normalize(std::string_view question) {
    if (text::trim(question).empty()) fail(ErrorCode::EmptyQuestion, "question is empty");
    auto tokens = tokenize(question);
    if (tokens.empty()) fail(ErrorCode::EmptyQuestion, "question has no words");
    return tokens;
}

inline bool is_stopword(std::string_view t) {
    static const std::vector<std::string_view> kStop{
        "a",    "an",   "the",  "of",   "in",    "on",  "for",  "to",    "and",   "or",    "by",   "with",
        "is",   "are",  "was",  "were", "be",    "do",  "does", "did",   "what",  "which", "who",  "how",
        "show", "me",   "give", "list", "there", "any", "all",  "each",  "per",   "from",  "at",   "as",
        "it",   "its",  "this", "that", "these", "our", "we",   "between", "than", "has",  "have", "can"};
    for (auto s : kStop)
        if (s == t) return true;
    return false;
}

}  // namespace tabula::matcher
