#include <gtest/gtest.h>

#include <cctype>
#include <map>

#include "tabula/ingest/project.hpp"
#include "tabula/matcher/evaluate.hpp"
#include "tabula/matcher/json_io.hpp"

using namespace tabula;
using namespace tabula::matcher;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::Internal;
}

const std::vector<ColumnInfo>& bundled(const std::string& dataset) {
    static std::map<std::string, std::vector<ColumnInfo>> cache;
    auto it = cache.find(dataset);
    if (it == cache.end()) {
        const auto bytes = read_file(std::string(TABULA_DATA_DIR) + "/datasets/" + dataset + ".csv");
        const auto profile = profile_table(load_table(bytes).dataset);
        it = cache.emplace(dataset, catalogue(profile)).first;
    }
    return it->second;
}

std::string dataset_for(const std::string& source) {
    std::string s;
    for (char c : source) s.push_back(c == ' ' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return s;
}

std::vector<ColumnInfo> cols(std::initializer_list<std::pair<const char*, ColumnType>> list) {
    std::vector<ColumnInfo> out;
    for (const auto& [n, t] : list) out.push_back({n, t, tokenize(n)});
    return out;
}

std::vector<LabeledQuestion> bundled_corpus() {
    return parse_corpus(read_file(std::string(TABULA_DATA_DIR) + "/corpus/questions.jsonl"));
}

}  // namespace

TEST(Normalize, Examples) {
    EXPECT_EQ(normalize("Top TEN products!"), (std::vector<std::string>{"top", "10", "products"}));
    EXPECT_EQ(normalize("greater than 5"), (std::vector<std::string>{"greater", "than", "5"}));
    EXPECT_EQ(code_of([] { normalize(""); }), ErrorCode::EmptyQuestion);
    EXPECT_EQ(code_of([] { normalize("  ?! "); }), ErrorCode::EmptyQuestion);
    EXPECT_EQ(normalize("twenty and ninety"), (std::vector<std::string>{"20", "and", "90"}));
}

TEST(MatchColumns, ExactAndFuzzy) {
    const auto c = cols({{"quality", ColumnType::Numeric}, {"humidity", ColumnType::Numeric}});
    auto m = match_columns(normalize("difference between high quality and low quality"), c);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].column, "quality");
    EXPECT_DOUBLE_EQ(m[0].score, 1.0);

    m = match_columns(normalize("qualty"), c);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].column, "quality");
    EXPECT_NEAR(m[0].score, 6.0 / 7.0, 1e-12);

    EXPECT_TRUE(match_columns(normalize("nothing relevant here"), c).empty());
}

TEST(MatchColumns, AliasesAndLongestSpan) {
    auto c = cols({{"defect_count", ColumnType::Numeric}, {"defect", ColumnType::Numeric}});
    auto m = match_columns(normalize("show defect count"), c);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].column, "defect_count");

    MatcherConfig cfg;
    cfg.aliases["faults"] = "defect_count";
    m = match_columns(normalize("how many faults"), c, cfg);
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m[0].column, "defect_count");
    EXPECT_DOUBLE_EQ(m[0].score, 1.0);
}

TEST(ParseRestrictions, Examples) {
    auto r = parse_restrictions(normalize("top ten"));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].kind, RestrictionKind::Top);
    EXPECT_EQ(r[0].operand, 10.0);

    const auto c = cols({{"humidity", ColumnType::Numeric}});
    const auto tokens = normalize("average humidity greater than 50");
    r = parse_restrictions(tokens, match_columns(tokens, c));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0].kind, RestrictionKind::Average);
    EXPECT_EQ(r[0].target_column, "humidity");
    EXPECT_FALSE(r[0].operand);
    EXPECT_EQ(r[1].kind, RestrictionKind::GreaterThan);
    EXPECT_EQ(r[1].operand, 50.0);
    EXPECT_EQ(r[1].target_column, "humidity");

    EXPECT_TRUE(parse_restrictions(normalize("show quality")).empty());
}

TEST(ParseRestrictions, OperandRules) {
    EXPECT_EQ(code_of([] { parse_restrictions(normalize("values greater than")); }),
              ErrorCode::DanglingOperandRequired);
    EXPECT_EQ(code_of([] { parse_restrictions(normalize("top products")); }), ErrorCode::DanglingOperandRequired);
    EXPECT_EQ(code_of([] { parse_restrictions(normalize("top 2.5")); }), ErrorCode::DanglingOperandRequired);
    auto r = parse_restrictions(normalize("last 3 rows"));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].kind, RestrictionKind::Last);
    EXPECT_EQ(r[0].operand, 3.0);
    r = parse_restrictions(normalize("price divided by 4"));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].kind, RestrictionKind::Divide);
    EXPECT_EQ(r[0].operand, 4.0);
    // target binding stays inside the window
    const auto c = cols({{"sales", ColumnType::Numeric}});
    const auto tokens = normalize("sum for the very many other things of sales");
    r = parse_restrictions(tokens, match_columns(tokens, c));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_FALSE(r[0].target_column);
}

TEST(ClassifyIntention, Examples) {
    const auto c = cols({{"quality", ColumnType::Numeric},
                         {"humidity", ColumnType::Numeric},
                         {"line", ColumnType::Categorical},
                         {"date", ColumnType::Datetime}});
    const auto top = [&](const std::string& q) {
        const auto t = normalize(q);
        return classify_intention(t, match_columns(t, c), c).front().intention;
    };
    EXPECT_EQ(top("difference between high quality and low quality"), Intention::RootCause);
    EXPECT_EQ(top("is humidity normally distributed"), Intention::Normality);
    EXPECT_EQ(top("humidity"), Intention::Distribution);
    EXPECT_EQ(top("humidity quality"), Intention::Relationship);
    EXPECT_EQ(top("humidity line"), Intention::Comparison);

    const auto t = normalize("humidity");
    const auto ranked = classify_intention(t, match_columns(t, c), c);
    EXPECT_EQ(ranked.size(), 11u);
}

TEST(MatchQuestion, PaperQuestion) {
    const auto& c = bundled("manufacture");
    const auto r = match_question("What is the difference between high quality and low quality", c);
    ASSERT_FALSE(r.candidates.empty());
    const auto& p = r.top();
    ASSERT_EQ(p.mentions.size(), 1u);
    EXPECT_EQ(p.mentions[0].column, "quality");
    EXPECT_EQ(p.intention, Intention::RootCause);
    EXPECT_TRUE(p.restrictions.empty());
}

TEST(MatchQuestion, TopTenProductsBySumOfSales) {
    const auto r = match_question("top ten products by sum of sales", bundled("sales"));
    const auto& p = r.top();
    ASSERT_EQ(p.mentions.size(), 2u);
    EXPECT_EQ(p.mentions[0].column, "products");
    EXPECT_EQ(p.mentions[1].column, "sales");
    EXPECT_EQ(p.intention, Intention::Ranking);
    ASSERT_EQ(p.restrictions.size(), 2u);
    EXPECT_EQ(p.restrictions[0].kind, RestrictionKind::Top);
    EXPECT_EQ(p.restrictions[0].operand, 10.0);
    EXPECT_EQ(p.restrictions[1].kind, RestrictionKind::Sum);
    EXPECT_EQ(p.restrictions[1].target_column, "sales");
}

TEST(MatchQuestion, NoSignalAndProfileState) {
    for (const auto* ds : {"manufacture", "sport", "sales", "food", "health_care", "banking"})
        EXPECT_EQ(code_of([&] { match_question("hello", bundled(ds)); }), ErrorCode::NoSignal) << ds;
    TableProfile pending;
    pending.status = ProfileStatus::Pending;
    EXPECT_EQ(code_of([&] { match_question("quality", pending); }), ErrorCode::ProfileNotReady);
}

TEST(MatchQuestion, Properties) {
    const auto corpus = bundled_corpus();
    for (const auto& q : corpus) {
        const auto& c = bundled(dataset_for(q.source));
        MatchResult a, b, upper;
        try {
            a = match_question(q.question, c);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::NoSignal) << q.question;
            continue;
        }
        b = match_question(q.question, c);
        std::string up = q.question;
        for (auto& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        upper = match_question(up + "?!", c);
        EXPECT_EQ(json(a).dump(), json(b).dump()) << q.question;
        EXPECT_EQ(json(a).dump(), json(upper).dump()) << q.question;

        ASSERT_FALSE(a.candidates.empty());
        EXPECT_LE(a.candidates.size(), 3u);
        for (std::size_t i = 0; i < a.candidates.size(); ++i) {
            const auto& p = a.candidates[i];
            EXPECT_GE(p.confidence, 0.0);
            EXPECT_LE(p.confidence, 1.0);
            if (i > 0) EXPECT_LE(p.confidence, a.candidates[i - 1].confidence);
            for (std::size_t x = 0; x < p.mentions.size(); ++x) {
                EXPECT_GE(p.mentions[x].score, 0.8);
                EXPECT_LE(p.mentions[x].score, 1.0);
                for (std::size_t y = x + 1; y < p.mentions.size(); ++y)
                    EXPECT_FALSE(p.mentions[x].span.overlaps(p.mentions[y].span)) << q.question;
            }
            const auto names = p.columns();
            for (const auto& r : p.restrictions) {
                if (r.target_column)
                    EXPECT_NE(std::find(names.begin(), names.end(), *r.target_column), names.end()) << q.question;
                if (needs_operand(r.kind)) EXPECT_TRUE(r.operand.has_value());
                else EXPECT_FALSE(r.operand.has_value());
            }
        }
    }
}

TEST(MatchResultJson, RoundTrip) {
    const auto r = match_question("top ten products by sum of sales", bundled("sales"));
    const json j = r;
    const auto back = j.get<MatchResult>();
    EXPECT_EQ(json(back).dump(), j.dump());
}

TEST(Evaluate, SingleQuestionAllHit) {
    const auto c = cols({{"quality", ColumnType::Numeric}});
    LabeledQuestion q;
    q.question = "Is quality normally distributed?";
    q.source = "X";
    q.gold_columns = {"quality"};
    q.gold_intention = Intention::Normality;
    const auto rep = evaluate_matcher({q}, [&](const std::string&) -> const std::vector<ColumnInfo>& { return c; });
    ASSERT_EQ(rep.rows.size(), 1u);
    const auto& row = rep.rows[0];
    for (double v : {row.column_top1, row.column_top3, row.intention_top1, row.intention_top3, row.restriction_top1,
                     row.restriction_top3})
        EXPECT_DOUBLE_EQ(v, 100.0);
}

TEST(Evaluate, AdversarialIntentionAndEmptyCorpus) {
    const auto c = cols({{"quality", ColumnType::Numeric}});
    std::vector<LabeledQuestion> corpus;
    for (const auto* text : {"quality", "show quality", "quality please"}) {
        LabeledQuestion q;
        q.question = text;
        q.source = "X";
        q.gold_columns = {"quality"};
        q.gold_intention = Intention::Forecast;
        corpus.push_back(q);
    }
    const auto lookup = [&](const std::string&) -> const std::vector<ColumnInfo>& { return c; };
    const auto rep = evaluate_matcher(corpus, lookup);
    EXPECT_DOUBLE_EQ(rep.rows[0].intention_top1, 0.0);
    EXPECT_EQ(code_of([&] { evaluate_matcher({}, lookup); }), ErrorCode::EmptyCorpus);
}

TEST(Evaluate, BundledCorpusTable) {
    const auto corpus = bundled_corpus();
    ASSERT_EQ(corpus.size(), 180u);
    const auto rep = evaluate_matcher(corpus, [](const std::string& s) -> const std::vector<ColumnInfo>& {
        return bundled(dataset_for(s));
    });
    ASSERT_EQ(rep.rows.size(), 6u);
    for (const auto& r : rep.rows) {
        EXPECT_EQ(r.questions, 30u);
        EXPECT_GE(r.column_top3, r.column_top1);
        EXPECT_GE(r.intention_top3, r.intention_top1);
        EXPECT_GE(r.restriction_top3, r.restriction_top1);
    }
    const auto csv = accuracy_csv(rep);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
    std::cout << csv;

    std::vector<LabeledQuestion> clear;
    for (const auto& q : corpus)
        if (q.unambiguous) clear.push_back(q);
    std::size_t col = 0, in = 0, res = 0;
    for (const auto& q : clear) {
        const auto r = match_question(q.question, bundled(dataset_for(q.source)));
        const auto h = score_question(q, r);
        col += h.column_top1;
        in += h.intention_top1;
        res += h.restriction_top1;
        if (!(h.column_top1 && h.intention_top1 && h.restriction_top1))
            std::cout << "miss: " << q.question << " -> " << json(r.top()).dump() << "\n";
    }
    const double n = static_cast<double>(clear.size());
    EXPECT_GE(col / n, 0.90);
    EXPECT_GE(in / n, 0.90);
    EXPECT_GE(res / n, 0.90);
}

TEST(Restrictions, VocabularyCoverage) {
    std::map<RestrictionKind, int> hits;
    for (const auto& q : bundled_corpus()) {
        const auto r = match_question(q.question, bundled(dataset_for(q.source)));
        const auto& p = r.top();
        for (const auto& g : q.gold_restrictions) {
            const bool found = std::any_of(p.restrictions.begin(), p.restrictions.end(), [&](const Restriction& x) {
                return x.kind == g.kind && x.operand == g.operand;
            });
            if (found) ++hits[g.kind];
        }
    }
    for (auto k : kAllRestrictionKinds) EXPECT_GE(hits[k], 3) << to_string(k);
}
