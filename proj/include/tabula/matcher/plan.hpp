#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tabula/core/error.hpp"

namespace tabula {

// The fourteen restriction kinds a question can carry.
enum class RestrictionKind {
    Average,
    Median,
    Sum,
    GreaterThan,
    EqualTo,
    LessThan,
    Plus,
    Minus,
    Multiply,
    Divide,
    Top,
    Last,
    Maximum,
    Minimum,
};

inline constexpr std::array<RestrictionKind, 14> kAllRestrictionKinds{
    RestrictionKind::Average, RestrictionKind::Median,   RestrictionKind::Sum,     RestrictionKind::GreaterThan,
    RestrictionKind::EqualTo, RestrictionKind::LessThan, RestrictionKind::Plus,    RestrictionKind::Minus,
    RestrictionKind::Multiply, RestrictionKind::Divide,  RestrictionKind::Top,     RestrictionKind::Last,
    RestrictionKind::Maximum, RestrictionKind::Minimum};

constexpr std::string_view to_string(RestrictionKind k) noexcept {
    switch (k) {
        case RestrictionKind::Average: return "Average";
        case RestrictionKind::Median: return "Median";
        case RestrictionKind::Sum: return "Sum";
        case RestrictionKind::GreaterThan: return "GreaterThan";
        case RestrictionKind::EqualTo: return "EqualTo";
        case RestrictionKind::LessThan: return "LessThan";
        case RestrictionKind::Plus: return "Plus";
        case RestrictionKind::Minus: return "Minus";
        case RestrictionKind::Multiply: return "Multiply";
        case RestrictionKind::Divide: return "Divide";
        case RestrictionKind::Top: return "Top";
        case RestrictionKind::Last: return "Last";
        case RestrictionKind::Maximum: return "Maximum";
        case RestrictionKind::Minimum: return "Minimum";
    }
    return "Average";
}

inline RestrictionKind restriction_kind_from_string(std::string_view s) {
    for (auto k : kAllRestrictionKinds)
        if (s == to_string(k)) return k;
    fail(ErrorCode::BadRequest, "unknown restriction kind '" + std::string(s) + "'");
}

constexpr bool needs_operand(RestrictionKind k) noexcept {
    switch (k) {
        case RestrictionKind::GreaterThan:
        case RestrictionKind::EqualTo:
        case RestrictionKind::LessThan:
        case RestrictionKind::Plus:
        case RestrictionKind::Minus:
        case RestrictionKind::Multiply:
        case RestrictionKind::Divide:
        case RestrictionKind::Top:
        case RestrictionKind::Last:
            return true;
        default:
            return false;
    }
}

constexpr bool is_filter(RestrictionKind k) noexcept {
    return k == RestrictionKind::GreaterThan || k == RestrictionKind::EqualTo || k == RestrictionKind::LessThan;
}
constexpr bool is_arithmetic(RestrictionKind k) noexcept {
    return k == RestrictionKind::Plus || k == RestrictionKind::Minus || k == RestrictionKind::Multiply ||
           k == RestrictionKind::Divide;
}
constexpr bool is_aggregate(RestrictionKind k) noexcept {
    return k == RestrictionKind::Average || k == RestrictionKind::Median || k == RestrictionKind::Sum ||
           k == RestrictionKind::Maximum || k == RestrictionKind::Minimum;
}
constexpr bool is_rank_limit(RestrictionKind k) noexcept {
    return k == RestrictionKind::Top || k == RestrictionKind::Last;
}

struct Restriction {
    RestrictionKind kind = RestrictionKind::Average;
    std::optional<double> operand;
    std::optional<std::string> target_column;

    friend bool operator==(const Restriction&, const Restriction&) = default;
};

// The eleven analysis intentions, listed in tie-break priority order.
enum class Intention {
    RootCause,
    Comparison,
    Forecast,
    Anomaly,
    Normality,
    Relationship,
    Ranking,
    Trend,
    Proportion,
    Aggregation,
    Distribution,
};

inline constexpr std::array<Intention, 11> kIntentionPriority{
    Intention::RootCause, Intention::Comparison, Intention::Forecast,   Intention::Anomaly,
    Intention::Normality, Intention::Relationship, Intention::Ranking,  Intention::Trend,
    Intention::Proportion, Intention::Aggregation, Intention::Distribution};

constexpr std::size_t priority_rank(Intention i) noexcept { return static_cast<std::size_t>(i); }

constexpr std::string_view to_string(Intention i) noexcept {
    switch (i) {
        case Intention::Distribution: return "Distribution";
        case Intention::Trend: return "Trend";
        case Intention::Forecast: return "Forecast";
        case Intention::Comparison: return "Comparison";
        case Intention::RootCause: return "RootCause";
        case Intention::Anomaly: return "Anomaly";
        case Intention::Normality: return "Normality";
        case Intention::Relationship: return "Relationship";
        case Intention::Ranking: return "Ranking";
        case Intention::Proportion: return "Proportion";
        case Intention::Aggregation: return "Aggregation";
    }
    return "Distribution";
}

inline Intention intention_from_string(std::string_view s) {
    for (auto i : kIntentionPriority)
        if (s == to_string(i)) return i;
    fail(ErrorCode::UnknownIntention, "unknown intention '" + std::string(s) + "'");
}

struct TokenSpan {
    std::size_t begin = 0;  // inclusive
    std::size_t end = 0;    // exclusive

    bool overlaps(const TokenSpan& o) const noexcept { return begin < o.end && o.begin < end; }
    std::size_t length() const noexcept { return end - begin; }
    friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct ColumnMention {
    std::string column;
    double score = 0.0;
    TokenSpan span;

    friend bool operator==(const ColumnMention&, const ColumnMention&) = default;
};

struct QueryPlan {
    std::vector<ColumnMention> mentions;
    std::vector<Restriction> restrictions;
    Intention intention = Intention::Distribution;
    double confidence = 0.0;

    std::vector<std::string> columns() const {
        std::vector<std::string> out;
        for (const auto& m : mentions) out.push_back(m.column);
        return out;
    }
    friend bool operator==(const QueryPlan&, const QueryPlan&) = default;
};

struct MatchResult {
    std::vector<std::string> tokens;
    std::vector<QueryPlan> candidates;

    const QueryPlan& top() const { return candidates.front(); }
};

}  // namespace tabula
