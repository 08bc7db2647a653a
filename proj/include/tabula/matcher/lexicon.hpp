#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "tabula/matcher/normalize.hpp"
#include "tabula/matcher/plan.hpp"

namespace tabula::matcher {

// A phrase lexicon mapping token sequences to a label. Scanning is greedy
// left to right, longest phrase first, without overlaps.
template <typename Label>
class PhraseLexicon {
public:
    struct Entry {
        std::vector<std::string> tokens;
        Label label;
    };
    struct Hit {
        TokenSpan span;
        Label label;
    };

    PhraseLexicon() = default;
    PhraseLexicon(std::initializer_list<std::pair<const char*, Label>> phrases) {
        for (const auto& [p, l] : phrases) add(p, l);
    }

    void add(std::string_view phrase, Label label) {
        entries_.push_back({tokenize(phrase), label});
        std::stable_sort(entries_.begin(), entries_.end(),
                         [](const Entry& a, const Entry& b) { return a.tokens.size() > b.tokens.size(); });
    }

    const std::vector<Entry>& entries() const noexcept { return entries_; }

    // `blocked[i]` tokens (e.g. inside column mentions) never start or
    // continue a phrase.
    std::vector<Hit> scan(const std::vector<std::string>& tokens, const std::vector<bool>& blocked = {}) const {
        std::vector<Hit> hits;
        std::size_t i = 0;
        while (i < tokens.size()) {
            const Entry* best = nullptr;
            for (const auto& e : entries_) {
                if (matches_at(tokens, blocked, i, e.tokens)) {
                    best = &e;
                    break;  // entries are sorted longest first
                }
            }
            if (best) {
                hits.push_back({{i, i + best->tokens.size()}, best->label});
                i += best->tokens.size();
            } else {
                ++i;
            }
        }
        return hits;
    }

private:
    static bool matches_at(const std::vector<std::string>& tokens, const std::vector<bool>& blocked, std::size_t at,
                           const std::vector<std::string>& phrase) {
        if (phrase.empty() || at + phrase.size() > tokens.size()) return false;
        for (std::size_t k = 0; k < phrase.size(); ++k) {
            if (!blocked.empty() && blocked[at + k]) return false;
            if (tokens[at + k] != phrase[k]) return false;
        }
        return true;
    }

    std::vector<Entry> entries_;
};

inline const PhraseLexicon<RestrictionKind>& restriction_lexicon() {
    using K = RestrictionKind;
    static const PhraseLexicon<K> kLexicon{
        {"average", K::Average},
        {"mean", K::Average},
        {"avg", K::Average},
        {"averaged", K::Average},
        {"median", K::Median},
        {"middle value", K::Median},
        {"sum", K::Sum},
        {"total", K::Sum},
        {"summed", K::Sum},
        {"greater than", K::GreaterThan},
        {"more than", K::GreaterThan},
        {"higher than", K::GreaterThan},
        {"larger than", K::GreaterThan},
        {"bigger than", K::GreaterThan},
        {"above", K::GreaterThan},
        {"exceeds", K::GreaterThan},
        {"exceeding", K::GreaterThan},
        {"at least", K::GreaterThan},
        {"equal to", K::EqualTo},
        {"equals", K::EqualTo},
        {"equal", K::EqualTo},
        {"exactly", K::EqualTo},
        {"less than", K::LessThan},
        {"lower than", K::LessThan},
        {"smaller than", K::LessThan},
        {"fewer than", K::LessThan},
        {"below", K::LessThan},
        {"under", K::LessThan},
        {"at most", K::LessThan},
        {"plus", K::Plus},
        {"added to", K::Plus},
        {"increased by", K::Plus},
        {"minus", K::Minus},
        {"subtract", K::Minus},
        {"decreased by", K::Minus},
        {"reduced by", K::Minus},
        {"multiplied by", K::Multiply},
        {"multiply by", K::Multiply},
        {"times", K::Multiply},
        {"divided by", K::Divide},
        {"divide by", K::Divide},
        {"top", K::Top},
        {"last", K::Last},
        {"bottom", K::Last},
        {"maximum", K::Maximum},
        {"max", K::Maximum},
        {"highest", K::Maximum},
        {"largest", K::Maximum},
        {"biggest", K::Maximum},
        {"peak", K::Maximum},
        {"minimum", K::Minimum},
        {"min", K::Minimum},
        {"lowest", K::Minimum},
        {"smallest", K::Minimum},
    };
    return kLexicon;
}

inline const PhraseLexicon<Intention>& intention_lexicon() {
    using I = Intention;
    static const PhraseLexicon<I> kLexicon{
        // root cause / differential
        {"root cause", I::RootCause},
        {"root causes", I::RootCause},
        {"cause", I::RootCause},
        {"causes", I::RootCause},
        {"why", I::RootCause},
        {"difference between", I::RootCause},
        {"differences between", I::RootCause},
        {"key differences", I::RootCause},
        {"drives", I::RootCause},
        {"drive", I::RootCause},
        {"driver", I::RootCause},
        {"drivers", I::RootCause},
        {"factor", I::RootCause},
        {"factors", I::RootCause},
        {"affect", I::RootCause},
        {"affects", I::RootCause},
        {"influence", I::RootCause},
        {"influences", I::RootCause},
        {"explains", I::RootCause},
        // comparison
        {"compare", I::Comparison},
        {"compared", I::Comparison},
        {"comparison", I::Comparison},
        {"comparing", I::Comparison},
        {"versus", I::Comparison},
        {"vs", I::Comparison},
        {"across", I::Comparison},
        {"among", I::Comparison},
        {"differ", I::Comparison},
        {"differs", I::Comparison},
        {"difference in", I::Comparison},
        // forecast
        {"forecast", I::Forecast},
        {"forecasting", I::Forecast},
        {"predict", I::Forecast},
        {"prediction", I::Forecast},
        {"predictions", I::Forecast},
        {"projection", I::Forecast},
        {"future", I::Forecast},
        {"upcoming", I::Forecast},
        {"next", I::Forecast},
        {"will be", I::Forecast},
        // anomaly
        {"anomaly", I::Anomaly},
        {"anomalies", I::Anomaly},
        {"anomalous", I::Anomaly},
        {"outlier", I::Anomaly},
        {"outliers", I::Anomaly},
        {"unusual", I::Anomaly},
        {"abnormal", I::Anomaly},
        {"spike", I::Anomaly},
        {"spikes", I::Anomaly},
        {"irregular", I::Anomaly},
        {"extreme values", I::Anomaly},
        // normality
        {"normally distributed", I::Normality},
        {"normal distribution", I::Normality},
        {"normality", I::Normality},
        {"normal", I::Normality},
        {"gaussian", I::Normality},
        {"bell curve", I::Normality},
        {"bell shaped", I::Normality},
        {"skewed", I::Normality},
        {"skewness", I::Normality},
        // relationship
        {"relationship", I::Relationship},
        {"relationships", I::Relationship},
        {"relation", I::Relationship},
        {"related", I::Relationship},
        {"relate", I::Relationship},
        {"correlation", I::Relationship},
        {"correlated", I::Relationship},
        {"correlate", I::Relationship},
        {"correlates", I::Relationship},
        {"association", I::Relationship},
        {"associated", I::Relationship},
        {"linked", I::Relationship},
        {"depend on", I::Relationship},
        {"depends on", I::Relationship},
        {"vary with", I::Relationship},
        {"varies with", I::Relationship},
        {"change with", I::Relationship},
        {"changes with", I::Relationship},
        // ranking
        {"rank", I::Ranking},
        {"ranking", I::Ranking},
        {"ranked", I::Ranking},
        {"top", I::Ranking},
        {"bottom", I::Ranking},
        {"last", I::Ranking},
        {"best", I::Ranking},
        {"worst", I::Ranking},
        {"highest", I::Ranking},
        {"lowest", I::Ranking},
        {"leading", I::Ranking},
        {"sorted", I::Ranking},
        {"order by", I::Ranking},
        // trend
        {"trend", I::Trend},
        {"trends", I::Trend},
        {"trending", I::Trend},
        {"over time", I::Trend},
        {"time series", I::Trend},
        {"evolve", I::Trend},
        {"evolved", I::Trend},
        {"evolution", I::Trend},
        {"growth", I::Trend},
        {"monthly", I::Trend},
        {"yearly", I::Trend},
        {"daily", I::Trend},
        {"weekly", I::Trend},
        {"historical", I::Trend},
        // proportion
        {"proportion", I::Proportion},
        {"proportions", I::Proportion},
        {"share", I::Proportion},
        {"shares", I::Proportion},
        {"percentage", I::Proportion},
        {"percent", I::Proportion},
        {"fraction", I::Proportion},
        {"breakdown", I::Proportion},
        {"composition", I::Proportion},
        {"makeup", I::Proportion},
        // aggregation
        {"average", I::Aggregation},
        {"mean", I::Aggregation},
        {"avg", I::Aggregation},
        {"median", I::Aggregation},
        {"total", I::Aggregation},
        {"sum", I::Aggregation},
        {"how much", I::Aggregation},
        {"how many", I::Aggregation},
        {"count", I::Aggregation},
        {"number of", I::Aggregation},
        {"maximum", I::Aggregation},
        {"minimum", I::Aggregation},
        {"max", I::Aggregation},
        {"min", I::Aggregation},
        {"aggregate", I::Aggregation},
        {"overall", I::Aggregation},
        // distribution
        {"distribution", I::Distribution},
        {"distributed", I::Distribution},
        {"histogram", I::Distribution},
        {"spread", I::Distribution},
        {"range", I::Distribution},
        {"variation", I::Distribution},
        {"variability", I::Distribution},
        {"dispersion", I::Distribution},
        {"frequency", I::Distribution},
        {"look like", I::Distribution},
        {"looks like", I::Distribution},
    };
    return kLexicon;
}

}  // namespace tabula::matcher
