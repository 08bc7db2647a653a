#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tabula/analysis/executors.hpp"
#include "tabula/insight/explain.hpp"
#include "tabula/insight/report.hpp"
#include "tabula/matcher/matcher.hpp"

namespace tabula::guidance {

using SessionSettings = insight::ReportSettings;

// Roles a session may declare, and for each role the intentions whose
// recommendations move to the front (in that order).
struct GuidanceConfig {
    std::vector<std::string> roles{"operations", "quality", "sales", "finance", "general"};
    std::map<std::string, std::vector<Intention>> biases{
        {"quality", {Intention::RootCause, Intention::Anomaly}},
        {"sales", {Intention::Ranking, Intention::Comparison, Intention::Trend}},
        {"operations", {Intention::Forecast, Intention::Trend, Intention::Anomaly}},
        {"finance", {Intention::Aggregation, Intention::Forecast, Intention::Trend}},
    };
    std::size_t depth_limit = 5;
};

enum class SessionStatus { Active, SummaryProposed, Closed };

inline std::string_view to_string(SessionStatus s) {
    switch (s) {
        case SessionStatus::Active: return "active";
        case SessionStatus::SummaryProposed: return "summary_proposed";
        case SessionStatus::Closed: return "closed";
    }
    return "active";
}

inline SessionStatus session_status_from_string(std::string_view s) {
    if (s == "active") return SessionStatus::Active;
    if (s == "summary_proposed") return SessionStatus::SummaryProposed;
    if (s == "closed") return SessionStatus::Closed;
    fail(ErrorCode::BadRequest, "unknown session status '" + std::string(s) + "'");
}

struct Recommendation {
    std::string question;
    QueryPlan plan;
    std::string rationale;
};

struct HistoryEntry {
    std::string question;
    QueryPlan plan;
    analysis::AnalysisResult result;
};

struct Session {
    std::string session_id;
    std::string project_id;
    SessionSettings settings;
    std::vector<HistoryEntry> history;
    SessionStatus status = SessionStatus::Active;
    std::vector<Recommendation> recommendations;  // offered after the latest step
    std::string report_id;                        // set once closed
};

struct SummaryDecision {
    bool propose = false;
    std::string reason;  // "depth", "novelty" or empty
};

// A typed question, or the index of one of the session's current recommendations.
using StepInput = std::variant<std::string, std::size_t>;

struct StepOutcome {
    analysis::AnalysisResult result;
    std::vector<Recommendation> recommendations;
    SummaryDecision summary;
};

inline void validate_settings(const SessionSettings& s, const TableProfile& p, const GuidanceConfig& cfg = {}) {
    if (!p.ready()) fail(ErrorCode::ProfileNotReady, "profile is not ready");
    if (std::find(cfg.roles.begin(), cfg.roles.end(), s.role) == cfg.roles.end())
        fail(ErrorCode::InvalidSettings, "unknown role '" + s.role + "'");
    if (s.target_column.empty() || !p.find(s.target_column))
        fail(ErrorCode::UnknownTarget, "target column '" + s.target_column + "' is not in the project");
}

namespace detail {

inline std::string spoken(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '_', ' ');
    return s;
}

inline std::string question_for(Intention i, const std::vector<std::string>& c) {
    const auto a = spoken(c.at(0));
    switch (i) {
        case Intention::Distribution: return "What is the distribution of " + a + "?";
        case Intention::Proportion: return "What is the proportion of each " + a + "?";
        case Intention::RootCause: return "What are the main factors behind " + a + "?";
        case Intention::Relationship: return "What is the relationship between " + a + " and " + spoken(c.at(1)) + "?";
        case Intention::Comparison: return "Compare " + a + " across " + spoken(c.at(1));
        case Intention::Forecast: return "Forecast the future " + a;
        case Intention::Anomaly: return "Are there any outliers in " + a + "?";
        case Intention::Trend: return "How does " + a + " change over time?";
        case Intention::Normality: return "Is " + a + " normally distributed?";
        case Intention::Ranking: return "What are the top 5 " + spoken(c.at(1)) + " by total " + a + "?";
        case Intention::Aggregation: return "What is the average " + a + " for each " + spoken(c.at(1)) + "?";
    }
    return "";
}

struct Proposal {
    Intention intention;
    std::vector<std::string> columns;
    std::string rationale;
};

inline bool is_group_column(const TableProfile& p, const std::string& name) {
    const auto* c = p.find(name);
    return c && (c->ctype == ColumnType::Categorical || c->ctype == ColumnType::Boolean);
}

inline bool has_datetime(const TableProfile& p) {
    return std::any_of(p.column_profiles.begin(), p.column_profiles.end(),
                       [](const auto& c) { return c.ctype == ColumnType::Datetime; });
}

// Columns a step is "about": the top factor for root cause, the grouping
// column for comparison, the plan's columns otherwise.
inline std::vector<std::string> focus_columns(const HistoryEntry& e, const TableProfile& p) {
    if (e.plan.intention == Intention::RootCause) {
        if (const auto* f = e.result.finding("top_factor")) return {f->text};
    }
    auto cols = e.plan.columns();
    if (e.plan.intention == Intention::Comparison) {
        for (const auto& c : cols)
            if (is_group_column(p, c)) return {c};
    }
    return cols;
}

// Column most associated with `target` that no step has touched yet.
inline std::optional<std::string> strongest_unexplored(const TableProfile& p, const std::string& target,
                                                       const std::set<std::string>& covered) {
    const auto t = p.association.index_of(target);
    if (!t) return std::nullopt;
    std::optional<std::string> best;
    double best_v = -1.0;
    for (std::size_t j = 0; j < p.association.size(); ++j) {
        const auto& name = p.association.labels[j];
        if (j == *t || covered.count(name)) continue;
        const auto v = p.association.at(*t, j);
        if (v && *v > best_v) best_v = *v, best = name;
    }
    return best;
}

// Rule table; see docs/guidance_rules.md.
inline std::vector<Proposal> proposals(const Session& s, const TableProfile& p) {
    const auto& target = s.settings.target_column;
    const auto* tp = p.find(target);
    const bool numeric_target = tp && tp->ctype == ColumnType::Numeric;
    const auto& last = s.history.back();
    std::set<std::string> covered;
    for (const auto& e : s.history)
        for (const auto& c : e.plan.columns()) covered.insert(c);

    std::vector<Proposal> out;
    switch (last.plan.intention) {
        case Intention::Distribution:
        case Intention::Proportion:
            out.push_back({Intention::RootCause, {target}, "after-distribution"});
            break;
        case Intention::RootCause: {
            const auto* factors = last.result.table("factors");
            if (const auto* f = last.result.finding("top_factor"))
                out.push_back({Intention::Relationship, {target, f->text}, "after-root-cause"});
            if (factors && numeric_target)
                for (const auto& name : factors->row_labels)
                    if (is_group_column(p, name)) {
                        out.push_back({Intention::Comparison, {target, name}, "after-root-cause"});
                        break;
                    }
            break;
        }
        case Intention::Relationship:
            if (numeric_target && has_datetime(p))
                out.push_back({Intention::Forecast, {target}, "after-relationship"});
            else if (numeric_target)
                out.push_back({Intention::Anomaly, {target}, "after-relationship"});
            break;
        default: break;
    }
    if (out.empty()) {
        if (const auto other = strongest_unexplored(p, target, covered))
            out.push_back({Intention::Relationship, {target, *other}, "explore"});
        if (numeric_target) out.push_back({Intention::Anomaly, {target}, "explore"});
    }
    return out;
}

inline void apply_bias(std::vector<Recommendation>& recs, const std::string& role, const GuidanceConfig& cfg) {
    const auto it = cfg.biases.find(role);
    if (it == cfg.biases.end()) return;
    const auto rank = [&](Intention i) {
        const auto at = std::find(it->second.begin(), it->second.end(), i);
        return static_cast<std::size_t>(at - it->second.begin());
    };
    std::stable_sort(recs.begin(), recs.end(),
                     [&](const auto& a, const auto& b) { return rank(a.plan.intention) < rank(b.plan.intention); });
}

// Phrase the proposal, keep it only when the matcher reads it back with the
// same intention and columns and the plan executes; skip repeats of history.
inline std::optional<Recommendation> realize(const Proposal& pr, const Session& s, const Dataset& ds,
                                             const TableProfile& p) {
    const auto q = question_for(pr.intention, pr.columns);
    for (const auto& e : s.history)
        if (e.question == q) return std::nullopt;
    MatchResult m;
    try {
        m = matcher::match_question(q, p);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (m.candidates.empty() || m.top().intention != pr.intention) return std::nullopt;
    const auto have = m.top().columns();
    for (const auto& c : pr.columns)
        if (std::find(have.begin(), have.end(), c) == have.end()) return std::nullopt;
    try {
        analysis::execute(m.top(), ds, &p);
    } catch (const Error&) {
        return std::nullopt;
    }
    return Recommendation{q, m.top(), pr.rationale};
}

inline std::vector<Recommendation> recommend(const Session& s, const Dataset& ds, const TableProfile& p,
                                             const GuidanceConfig& cfg) {
    std::vector<Recommendation> out;
    for (const auto& pr : proposals(s, p)) {
        auto r = realize(pr, s, ds, p);
        if (r && std::none_of(out.begin(), out.end(), [&](const auto& x) { return x.question == r->question; }))
            out.push_back(std::move(*r));
    }
    apply_bias(out, s.settings.role, cfg);
    return out;
}

}  // namespace detail

inline Recommendation first_recommendation(const Session& s, const Dataset& ds, const TableProfile& p) {
    const auto* t = p.find(s.settings.target_column);
    const auto intention = t->ctype == ColumnType::Numeric ? Intention::Distribution : Intention::Proportion;
    auto r = detail::realize({intention, {t->name}, "first-look"}, s, ds, p);
    if (!r) fail(ErrorCode::UnknownTarget, "target column '" + t->name + "' cannot be analysed");
    return *r;
}

inline std::pair<Session, Recommendation> start_session(std::string session_id, std::string project_id,
                                                        const SessionSettings& settings, const Dataset& ds,
                                                        const TableProfile& p, const GuidanceConfig& cfg = {}) {
    validate_settings(settings, p, cfg);
    Session s;
    s.session_id = std::move(session_id);
    s.project_id = std::move(project_id);
    s.settings = settings;
    auto first = first_recommendation(s, ds, p);
    s.recommendations = {first};
    return {std::move(s), std::move(first)};
}

inline SummaryDecision should_summarize(const Session& s, const TableProfile& p, const GuidanceConfig& cfg = {}) {
    if (s.history.size() >= cfg.depth_limit) return {true, "depth"};
    if (s.history.size() >= 3) {
        std::set<std::string> earlier;
        for (std::size_t i = 0; i + 2 < s.history.size(); ++i) {
            for (const auto& c : s.history[i].plan.columns()) earlier.insert(c);
            for (const auto& c : detail::focus_columns(s.history[i], p)) earlier.insert(c);
        }
        bool repeated = true;
        for (std::size_t i = s.history.size() - 2; i < s.history.size(); ++i)
            for (const auto& c : detail::focus_columns(s.history[i], p)) repeated = repeated && earlier.count(c) > 0;
        if (repeated) return {true, "novelty"};
    }
    return {};
}

// Execute a plan the way a step does: result plus insight text.
inline HistoryEntry run_step(std::string question, const QueryPlan& plan, const Dataset& ds, const TableProfile& p) {
    HistoryEntry e{std::move(question), plan, analysis::execute(plan, ds, &p)};
    e.result.insight_text = insight::explain_result(e.result);
    return e;
}

// Record an executed step, then refresh follow-ups and the summary proposal.
inline SummaryDecision append_step(Session& s, HistoryEntry e, const Dataset& ds, const TableProfile& p,
                                   const GuidanceConfig& cfg) {
    s.history.push_back(std::move(e));
    s.recommendations = detail::recommend(s, ds, p, cfg);
    for (const auto& r : s.recommendations) s.history.back().result.followups.push_back(r.question);
    const auto decision = should_summarize(s, p, cfg);
    if (decision.propose) s.status = SessionStatus::SummaryProposed;
    return decision;
}

// Matches and executes one question; the session is only modified on success.
inline StepOutcome step(Session& s, const StepInput& input, const Dataset& ds, const TableProfile& p,
                        const GuidanceConfig& cfg = {}) {
    if (s.status == SessionStatus::Closed) fail(ErrorCode::SessionClosed, "session " + s.session_id + " is closed");
    std::string question;
    QueryPlan plan;
    if (const auto* pick = std::get_if<std::size_t>(&input)) {
        if (*pick >= s.recommendations.size())
            fail(ErrorCode::BadRequest, "no recommendation at index " + std::to_string(*pick));
        question = s.recommendations[*pick].question;
        plan = s.recommendations[*pick].plan;
    } else {
        question = std::get<std::string>(input);
        plan = matcher::match_question(question, p).top();
    }
    Session next = s;
    const auto decision = append_step(next, run_step(question, plan, ds, p), ds, p, cfg);
    StepOutcome out{next.history.back().result, next.recommendations, decision};
    s = std::move(next);
    return out;
}

inline insight::Report summarize(Session& s, std::string report_id) {
    if (s.status == SessionStatus::Closed) fail(ErrorCode::SessionClosed, "session " + s.session_id + " is closed");
    std::vector<insight::AnalysisStep> steps;
    for (const auto& e : s.history) steps.push_back({e.question, e.result});
    auto report = insight::compile_report(s.settings, steps, report_id);
    s.status = SessionStatus::Closed;
    s.report_id = std::move(report_id);
    s.recommendations.clear();
    return report;
}

}  // namespace tabula::guidance
