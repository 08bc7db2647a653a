#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tabula/ingest/profile.hpp"
#include "tabula/matcher/lexicon.hpp"

namespace tabula::matcher {

struct MatcherConfig {
    double fuzzy_threshold = 0.8;
    std::size_t binding_window = 4;
    std::size_t max_candidates = 3;
    // alias phrase -> column name; alias hits count as exact matches
    std::map<std::string, std::string> aliases;
};

// The column catalogue a question is matched against.
struct ColumnInfo {
    std::string name;
    ColumnType type = ColumnType::Text;
    std::vector<std::string> tokens;
};

inline std::vector<ColumnInfo> catalogue(const TableProfile& profile) {
    std::vector<ColumnInfo> out;
    for (const auto& p : profile.column_profiles) out.push_back({p.name, p.ctype, tokenize(p.name)});
    return out;
}

namespace detail {

struct SpanCandidate {
    ColumnMention mention;
    std::size_t column_index = 0;
};

inline double similarity(const std::string& a, const std::string& b) {
    const auto longest = std::max(a.size(), b.size());
    if (longest == 0) return 1.0;
    return 1.0 - static_cast<double>(text::levenshtein(a, b)) / static_cast<double>(longest);
}

inline std::string joined(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        if (i > begin) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

inline std::vector<SpanCandidate> span_candidates(const std::vector<std::string>& tokens,
                                                  const std::vector<ColumnInfo>& columns,
                                                  const MatcherConfig& config) {
    std::vector<SpanCandidate> out;
    const auto n = tokens.size();
    const auto column_index = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (text::normalize_name(columns[i].name) == text::normalize_name(name)) return i;
        return std::nullopt;
    };

    for (const auto& [alias, column] : config.aliases) {
        const auto idx = column_index(column);
        if (!idx) continue;
        const auto at = tokenize(alias);
        if (at.empty()) continue;
        for (std::size_t b = 0; b + at.size() <= n; ++b)
            if (std::equal(at.begin(), at.end(), tokens.begin() + static_cast<std::ptrdiff_t>(b)))
                out.push_back({{columns[*idx].name, 1.0, {b, b + at.size()}}, *idx});
    }

    for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto& ct = columns[c].tokens;
        if (ct.empty()) continue;
        const auto target = joined(ct, 0, ct.size());
        const std::size_t lo = ct.size() > 1 ? ct.size() - 1 : 1;
        const std::size_t hi = ct.size() + 1;
        for (std::size_t len = lo; len <= hi; ++len) {
            for (std::size_t b = 0; b + len <= n; ++b) {
                const auto e = b + len;
                if (len == ct.size() && std::equal(ct.begin(), ct.end(), tokens.begin() + static_cast<std::ptrdiff_t>(b))) {
                    out.push_back({{columns[c].name, 1.0, {b, e}}, c});
                    continue;
                }
                // fuzzy windows never start/end on filler or contain numerals
                if (is_stopword(tokens[b]) || is_stopword(tokens[e - 1])) continue;
                bool has_numeral = false;
                for (std::size_t k = b; k < e; ++k) has_numeral = has_numeral || is_numeral(tokens[k]);
                if (has_numeral) continue;
                const auto window = joined(tokens, b, e);
                if (window.size() < 4 || target.size() < 4) continue;
                const double s = similarity(window, target);
                if (s >= config.fuzzy_threshold && s < 1.0) out.push_back({{columns[c].name, s, {b, e}}, c});
            }
        }
    }
    // longest span first, then score, then position, then column order
    std::stable_sort(out.begin(), out.end(), [](const SpanCandidate& a, const SpanCandidate& b) {
        if (a.mention.span.length() != b.mention.span.length()) return a.mention.span.length() > b.mention.span.length();
        if (a.mention.score != b.mention.score) return a.mention.score > b.mention.score;
        if (a.mention.span.begin != b.mention.span.begin) return a.mention.span.begin < b.mention.span.begin;
        return a.column_index < b.column_index;
    });
    return out;
}

inline std::vector<ColumnMention> select_mentions(const std::vector<SpanCandidate>& cands) {
    std::vector<ColumnMention> chosen;
    for (const auto& c : cands) {
        const bool clash = std::any_of(chosen.begin(), chosen.end(), [&](const ColumnMention& m) {
            return m.span.overlaps(c.mention.span) || m.column == c.mention.column;
        });
        if (!clash) chosen.push_back(c.mention);
    }
    std::sort(chosen.begin(), chosen.end(),
              [](const ColumnMention& a, const ColumnMention& b) { return a.span.begin < b.span.begin; });
    return chosen;
}

inline std::vector<bool> blocked_by(const std::vector<ColumnMention>& mentions, std::size_t n) {
    std::vector<bool> blocked(n, false);
    for (const auto& m : mentions)
        for (std::size_t i = m.span.begin; i < m.span.end && i < n; ++i) blocked[i] = true;
    return blocked;
}

}  // namespace detail

inline std::vector<ColumnMention> match_columns(const std::vector<std::string>& tokens,
                                                const std::vector<ColumnInfo>& columns,
                                                const MatcherConfig& config = {}) {
    return detail::select_mentions(detail::span_candidates(tokens, columns, config));
}

inline std::vector<ColumnMention> match_columns(const std::vector<std::string>& tokens, const TableProfile& profile,
                                                const MatcherConfig& config = {}) {
    return match_columns(tokens, catalogue(profile), config);
}

// Restriction phrases found in a token stream. Phrases whose kind needs an
// operand but has none adjacent are reported in `dangling`.
struct RestrictionScan {
    std::vector<Restriction> restrictions;
    std::vector<RestrictionKind> dangling;

    double completeness() const {
        const auto total = restrictions.size() + dangling.size();
        return total == 0 ? 1.0 : static_cast<double>(restrictions.size()) / static_cast<double>(total);
    }
};

namespace detail {

inline bool is_operand_filler(std::string_view t) { return t == "the" || t == "of" || t == "a" || t == "to"; }

// Aggregates and rank limits read forward ("sum of sales"); filters and
// arithmetic read backward ("humidity above 50").
constexpr bool prefers_following(RestrictionKind k) { return is_aggregate(k) || is_rank_limit(k); }

inline std::optional<std::string> bind_target(RestrictionKind kind, TokenSpan phrase,
                                              const std::vector<ColumnMention>& mentions, std::size_t window) {
    std::optional<std::string> best;
    std::size_t best_dist = window + 1;
    bool best_preferred = false;
    for (const auto& m : mentions) {
        std::size_t dist = 0;
        bool following = false;
        if (m.span.begin >= phrase.end) {
            dist = m.span.begin - phrase.end;
            following = true;
        } else if (m.span.end <= phrase.begin) {
            dist = phrase.begin - m.span.end;
        } else {
            continue;
        }
        if (dist > window) continue;
        const bool preferred = following == prefers_following(kind);
        if (dist < best_dist || (dist == best_dist && preferred && !best_preferred)) {
            best = m.column;
            best_dist = dist;
            best_preferred = preferred;
        }
    }
    return best;
}

}  // namespace detail

inline RestrictionScan scan_restrictions(const std::vector<std::string>& tokens,
                                         const std::vector<ColumnMention>& mentions = {},
                                         const MatcherConfig& config = {}) {
    RestrictionScan scan;
    const auto blocked = detail::blocked_by(mentions, tokens.size());
    const auto hits = restriction_lexicon().scan(tokens, blocked);
    std::vector<bool> used(tokens.size(), false);
    for (const auto& h : hits) {
        Restriction r;
        r.kind = h.label;
        TokenSpan span = h.span;
        if (needs_operand(h.label)) {
            std::size_t at = span.end;
            if (at < tokens.size() && detail::is_operand_filler(tokens[at]) && at + 1 < tokens.size() &&
                is_numeral(tokens[at + 1]))
                ++at;
            std::optional<double> operand;
            if (at < tokens.size() && !used[at] && !blocked[at]) operand = numeral_value(tokens[at]);
            if (operand && is_rank_limit(h.label) && (*operand <= 0 || std::floor(*operand) != *operand))
                operand.reset();
            if (!operand) {
                scan.dangling.push_back(h.label);
                continue;
            }
            used[at] = true;
            r.operand = operand;
            span.end = at + 1;
        }
        r.target_column = detail::bind_target(h.label, span, mentions, config.binding_window);
        scan.restrictions.push_back(std::move(r));
    }
    return scan;
}

// Strict form: any restriction missing its operand is an error.
inline std::vector<Restriction> parse_restrictions(const std::vector<std::string>& tokens,
                                                   const std::vector<ColumnMention>& mentions = {},
                                                   const MatcherConfig& config = {}) {
    auto scan = scan_restrictions(tokens, mentions, config);
    if (!scan.dangling.empty())
        fail(ErrorCode::DanglingOperandRequired,
             std::string(to_string(scan.dangling.front())) + " requires a numeric operand");
    return std::move(scan.restrictions);
}

struct IntentionScore {
    Intention intention;
    double score;
    bool keyword;  // fired from the lexicon rather than a fallback
};

namespace detail {

inline std::optional<Intention> arity_fallback(const std::vector<ColumnMention>& mentions,
                                               const std::vector<ColumnInfo>& columns) {
    std::size_t numeric = 0, categorical = 0, dated = 0;
    for (const auto& m : mentions) {
        for (const auto& c : columns) {
            if (c.name != m.column) continue;
            if (c.type == ColumnType::Numeric) ++numeric;
            else if (c.type == ColumnType::Datetime) ++dated;
            else ++categorical;
        }
    }
    if (numeric == 1 && categorical == 0 && dated == 0) return Intention::Distribution;
    if (numeric == 2 && categorical == 0 && dated == 0) return Intention::Relationship;
    if (numeric >= 1 && categorical >= 1) return Intention::Comparison;
    if (numeric >= 1 && dated >= 1) return Intention::Trend;
    if (numeric == 0 && categorical == 1 && dated == 0) return Intention::Proportion;
    if (numeric == 0 && categorical >= 2) return Intention::Relationship;
    if (numeric > 2) return Intention::Relationship;
    return std::nullopt;
}

}  // namespace detail

// Ranked intention hypotheses. Keyword hits score by their share of all
// hits; ties go to the fixed priority order. The arity fallback follows at
// a fixed low score, then every remaining intention at a floor score.
inline std::vector<IntentionScore> classify_intention(const std::vector<std::string>& tokens,
                                                      const std::vector<ColumnMention>& mentions,
                                                      const std::vector<ColumnInfo>& columns) {
    const auto blocked = detail::blocked_by(mentions, tokens.size());
    std::array<double, 11> counts{};
    double total = 0.0;
    for (const auto& h : intention_lexicon().scan(tokens, blocked)) {
        counts[priority_rank(h.label)] += 1.0;
        total += 1.0;
    }
    std::vector<IntentionScore> out;
    for (auto i : kIntentionPriority)
        if (counts[priority_rank(i)] > 0) out.push_back({i, counts[priority_rank(i)] / total, true});
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.score > b.score; });

    const auto listed = [&](Intention i) {
        return std::any_of(out.begin(), out.end(), [&](const IntentionScore& s) { return s.intention == i; });
    };
    if (auto fb = detail::arity_fallback(mentions, columns); fb && !listed(*fb))
        out.push_back({*fb, out.empty() ? 0.6 : 0.2, false});
    for (auto i : kIntentionPriority)
        if (!listed(i)) out.push_back({i, 0.05, false});
    return out;
}

namespace detail {

inline double mean_mention_score(const std::vector<ColumnMention>& mentions) {
    if (mentions.empty()) return 0.5;
    double s = 0.0;
    for (const auto& m : mentions) s += m.score;
    return s / static_cast<double>(mentions.size());
}

// Up to two column-binding hypotheses: the best non-overlapping selection,
// then either the runner-up column for the weakest mention's span or the
// selection without its weakest mention.
inline std::vector<std::vector<ColumnMention>> binding_hypotheses(const std::vector<SpanCandidate>& cands) {
    std::vector<std::vector<ColumnMention>> out;
    auto best = select_mentions(cands);
    out.push_back(best);
    if (best.empty()) return out;

    const auto weakest = std::min_element(best.begin(), best.end(), [](const auto& a, const auto& b) {
        return a.score < b.score;
    });
    for (const auto& c : cands) {
        if (!c.mention.span.overlaps(weakest->span) || c.mention.column == weakest->column) continue;
        const bool already = std::any_of(best.begin(), best.end(),
                                         [&](const ColumnMention& m) { return m.column == c.mention.column; });
        if (already) continue;
        auto alt = best;
        auto& slot = alt[static_cast<std::size_t>(weakest - best.begin())];
        slot = c.mention;
        bool overlap = false;
        for (std::size_t i = 0; i < alt.size(); ++i)
            for (std::size_t j = i + 1; j < alt.size(); ++j) overlap = overlap || alt[i].span.overlaps(alt[j].span);
        if (overlap) continue;
        std::sort(alt.begin(), alt.end(), [](const auto& a, const auto& b) { return a.span.begin < b.span.begin; });
        out.push_back(std::move(alt));
        return out;
    }
    if (best.size() >= 2) {
        auto alt = best;
        alt.erase(alt.begin() + (weakest - best.begin()));
        out.push_back(std::move(alt));
    }
    return out;
}

}  // namespace detail

// Compose the three detectors into at most `max_candidates` ranked plans.
inline MatchResult match_question(std::string_view question, const std::vector<ColumnInfo>& columns,
                                  const MatcherConfig& config = {}) {
    MatchResult result;
    result.tokens = normalize(question);
    const auto& tokens = result.tokens;
    const auto cands = detail::span_candidates(tokens, columns, config);
    const auto hypotheses = detail::binding_hypotheses(cands);
    const auto intentions = classify_intention(tokens, hypotheses.front(), columns);
    const bool any_keyword = !intentions.empty() && intentions.front().keyword;
    if (hypotheses.front().empty() && !any_keyword)
        fail(ErrorCode::NoSignal, "no column, restriction or intention keyword recognized");

    std::vector<QueryPlan> plans;
    const std::size_t n_int = std::min<std::size_t>(2, intentions.size());
    for (std::size_t i = 0; i < n_int; ++i) {
        for (const auto& mentions : hypotheses) {
            QueryPlan plan;
            plan.mentions = mentions;
            plan.intention = intentions[i].intention;
            const auto scan = scan_restrictions(tokens, mentions, config);
            plan.restrictions = scan.restrictions;
            const double product = detail::mean_mention_score(mentions) * intentions[i].score * scan.completeness();
            plan.confidence = std::clamp(std::cbrt(product), 0.0, 1.0);
            const bool dup = std::any_of(plans.begin(), plans.end(), [&](const QueryPlan& p) {
                return p.mentions == plan.mentions && p.intention == plan.intention &&
                       p.restrictions == plan.restrictions;
            });
            if (!dup) plans.push_back(std::move(plan));
        }
    }
    std::stable_sort(plans.begin(), plans.end(),
                     [](const QueryPlan& a, const QueryPlan& b) { return a.confidence > b.confidence; });
    if (plans.size() > config.max_candidates) plans.resize(config.max_candidates);
    result.candidates = std::move(plans);
    return result;
}

inline MatchResult match_question(std::string_view question, const TableProfile& profile,
                                  const MatcherConfig& config = {}) {
    if (!profile.ready()) fail(ErrorCode::ProfileNotReady, "profile is not ready");
    return match_question(question, catalogue(profile), config);
}

}  // namespace tabula::matcher
