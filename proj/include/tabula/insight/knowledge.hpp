#pragma once

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tabula/core/error.hpp"
#include "tabula/core/text.hpp"

namespace tabula::insight {

inline std::vector<std::string> word_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

struct KnowledgeSnippet {
    std::string snippet_id;
    std::string text;
    std::string source;
    std::map<std::string, std::size_t> term_counts;
};

struct RetrievedSnippet {
    const KnowledgeSnippet* snippet = nullptr;
    double score = 0.0;
};

struct Retrieval {
    std::vector<RetrievedSnippet> hits;
    bool empty_store = false;
};

// Lexical store: score(q, s) = sum over distinct query terms t present in s
// of tf(t, s) * idf(t), with idf(t) = ln(1 + N / df(t)).
class KnowledgeStore {
public:
    void add(std::string id, std::string text, std::string source = "") {
        if (text.empty()) fail(ErrorCode::BadRequest, "snippet '" + id + "' has no text");
        KnowledgeSnippet s{std::move(id), std::move(text), std::move(source), {}};
        for (auto& t : word_tokens(s.text)) ++s.term_counts[t];
        for (const auto& [t, n] : s.term_counts) ++df_[t];
        snippets_.push_back(std::move(s));
    }

    // Newline-delimited {"id", "text", "source"} records; blank lines skipped.
    static KnowledgeStore from_jsonl(std::string_view content) {
        KnowledgeStore store;
        std::istringstream in{std::string(content)};
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            const auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.contains("id") || !j.contains("text"))
                fail(ErrorCode::BadRequest, "malformed knowledge record");
            store.add(j.at("id").get<std::string>(), j.at("text").get<std::string>(), j.value("source", ""));
        }
        return store;
    }

    const std::vector<KnowledgeSnippet>& snippets() const noexcept { return snippets_; }
    bool empty() const noexcept { return snippets_.empty(); }

    double idf(const std::string& term) const {
        const auto it = df_.find(term);
        if (it == df_.end()) return 0.0;
        return std::log(1.0 + static_cast<double>(snippets_.size()) / static_cast<double>(it->second));
    }

    double score(const std::vector<std::string>& query_terms, const KnowledgeSnippet& s) const {
        std::vector<std::string> q = query_terms;
        std::sort(q.begin(), q.end());
        q.erase(std::unique(q.begin(), q.end()), q.end());
        double total = 0.0;
        for (const auto& t : q) {
            const auto it = s.term_counts.find(t);
            if (it != s.term_counts.end()) total += static_cast<double>(it->second) * idf(t);
        }
        return total;
    }

    // Top-k positive scores, descending; ties by snippet id.
    Retrieval retrieve(std::string_view query, std::size_t k = 3) const {
        Retrieval r;
        if (snippets_.empty()) {
            r.empty_store = true;
            return r;
        }
        const auto q = word_tokens(query);
        for (const auto& s : snippets_) {
            const double sc = score(q, s);
            if (sc > 0.0) r.hits.push_back({&s, sc});
        }
        std::sort(r.hits.begin(), r.hits.end(), [](const auto& a, const auto& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.snippet->snippet_id < b.snippet->snippet_id;
        });
        if (r.hits.size() > k) r.hits.resize(k);
        return r;
    }

private:
    std::vector<KnowledgeSnippet> snippets_;
    std::map<std::string, std::size_t> df_;
};

}  // namespace tabula::insight
