#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tabula/core/text.hpp"
#include "tabula/insight/client.hpp"

namespace tabula::insight {

struct PromptCandidate {
    std::string text;
    std::string task;
    std::size_t generation = 0;
};

struct PromptEvalRecord {
    PromptCandidate candidate;
    double score = 0.0;
    bool accepted = false;
};

struct EvalExample {
    std::string input;
    std::string gold;
};

// Caller-supplied agreement between a client output and the gold answer, in [0, 1].
using OutputScorer = std::function<double(const std::string& output, const std::string& gold)>;

inline double exact_match(const std::string& output, const std::string& gold) {
    return text::trim(output) == text::trim(gold) ? 1.0 : 0.0;
}

struct PromptOptimization {
    std::vector<PromptEvalRecord> records;  // one per iteration
    PromptEvalRecord result;                // accepted record, or best so far
};

inline std::string default_prompt(std::string_view task) {
    return "You are a data analysis assistant. Task: " + std::string(task) + ". Answer the input concisely.";
}

// Score the current prompt on the eval set; accept once the mean score
// reaches `threshold`, otherwise ask `generator` for a replacement prompt.
inline PromptOptimization optimize_prompt(const std::string& task, const std::vector<EvalExample>& eval_set,
                                          ModelClient& client, ModelClient& generator, double threshold,
                                          std::size_t max_iters, const OutputScorer& scorer = exact_match,
                                          std::string initial_prompt = "") {
    if (eval_set.empty()) fail(ErrorCode::EmptyEvalSet, "prompt optimization needs at least one example");
    PromptOptimization out;
    PromptCandidate cand{initial_prompt.empty() ? default_prompt(task) : std::move(initial_prompt), task, 0};
    for (std::size_t it = 0; it < max_iters; ++it) {
        double total = 0.0;
        for (const auto& ex : eval_set) {
            const double s = scorer(client.complete(cand.text + "\n\nINPUT:\n" + ex.input), ex.gold);
            total += std::clamp(s, 0.0, 1.0);
        }
        PromptEvalRecord rec{cand, total / static_cast<double>(eval_set.size()), false};
        rec.accepted = rec.score >= threshold;
        out.records.push_back(rec);
        if (out.records.size() == 1 || rec.score > out.result.score) out.result = rec;
        if (rec.accepted) {
            out.result = rec;
            return out;
        }
        if (it + 1 == max_iters) break;
        const std::string meta = "The following prompt for the task '" + task + "' scored " + text::format_number(rec.score, 4) +
                                 " on its evaluation set. Write an improved prompt.\n\nPROMPT:\n" + cand.text;
        cand = PromptCandidate{generator.complete(meta), task, it + 1};
    }
    out.result.accepted = false;
    return out;
}

}  // namespace tabula::insight
