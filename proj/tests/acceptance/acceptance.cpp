// Acceptance criteria AC01..AC13. With no arguments every criterion runs;
// otherwise only the named ones. One PASS/FAIL line per criterion; the exit
// status is nonzero if any of them failed.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/random_csp.hpp"
#include "propkit/consistency.hpp"
#include "propkit/error.hpp"
#include "propkit/models.hpp"
#include "propkit/oracle.hpp"
#include "propkit/parser.hpp"
#include "propkit/render.hpp"
#include "propkit/rules.hpp"
#include "propkit/scheduler.hpp"
#include "propkit/search.hpp"

using namespace propkit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            out_.pass = false;
            note("FAILED " + what);
        }
    }
    void note(const std::string& s) {
        if (!out_.detail.empty()) out_.detail += "; ";
        out_.detail += s;
    }
    Outcome done() { return out_; }

private:
    Outcome out_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt_seconds(double s) {
    std::ostringstream o;
    o.precision(3);
    o << s << "s";
    return o.str();
}

Csp model(const std::string& name) { return load_model(std::string(PROPKIT_MODELS_DIR) + "/" + name + ".csp"); }

Domain dom(const Csp& csp, const std::string& name) { return csp.domain(*csp.find(name)); }

bool is_range(const Csp& csp, const std::string& name, std::int64_t lo, std::int64_t hi) {
    return dom(csp, name) == Domain::interval(lo, hi);
}

std::string ranges(const Csp& csp, const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ", ") + render_range(csp, *csp.find(n));
    return out;
}

// A solved leaf stands for every tuple of its remaining domains.
std::set<Assignment> expanded(const std::vector<Csp>& solutions, std::size_t n) {
    std::set<Assignment> out;
    for (const auto& s : solutions) {
        auto part = testing::expand_solved(s, n);
        out.insert(part.begin(), part.end());
    }
    return out;
}

const std::vector<std::string> kSend = {"S", "E", "N", "D", "M", "O", "R", "Y"};

bool send_fixpoint(const Csp& c) {
    return is_range(c, "S", 9, 9) && is_range(c, "E", 4, 7) && is_range(c, "N", 5, 8) && is_range(c, "D", 2, 8) &&
           is_range(c, "M", 1, 1) && is_range(c, "O", 0, 0) && is_range(c, "R", 2, 8) && is_range(c, "Y", 2, 8);
}

// ---------------------------------------------------------------------------

Outcome ac01() {
    Check ck;
    Csp csp = model("sendmory");
    auto t0 = Clock::now();
    auto res = propagate(csp, all_rules());
    double dt = seconds_since(t0);
    ck.expect(res.status == FixpointStatus::Closed, "status closed");
    ck.expect(send_fixpoint(res.final), "domains " + ranges(res.final, kSend));
    ck.expect(dt < 1.0, "time < 1s");
    ck.note(ranges(res.final, kSend) + " in " + std::to_string(res.steps.size()) + " steps, " + fmt_seconds(dt));
    return ck.done();
}

Outcome ac02() {
    Check ck;
    Csp csp = model("sendmory");
    auto script = parse_script(csp, sendmory_script_text());
    auto res = replay(csp, script);
    const auto& steps = res.steps;
    ck.note(std::to_string(script.size()) + " scripted steps, " + std::to_string(steps.size()) + " relevant");
    ck.expect(steps.size() == 24, "24 relevant steps (got " + std::to_string(steps.size()) + ")");

    // Walk the recorded steps to see the intermediate domains.
    std::vector<Csp> states{csp.without_solved()};
    for (const auto& s : steps) states.push_back(apply_delta(states.back(), s.delta));
    if (!steps.empty()) {
        const Csp& first = states[1];
        bool ok = steps[0].rule == RuleId::LIN_EQ && is_range(first, "S", 9, 9) && is_range(first, "M", 1, 1) &&
                  is_range(first, "O", 0, 1);
        ck.expect(ok, "first LIN_EQ gives S=9, M=1, O in [0..1] (got " + ranges(first, {"S", "M", "O"}) + ")");
    }
    const std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> want = {
        {{2, 7}, {3, 8}}, {{3, 7}, {3, 8}}, {{3, 7}, {4, 8}}, {{4, 7}, {4, 8}}, {{4, 7}, {5, 8}}};
    if (steps.size() >= 5) {
        std::string seq;
        bool ok = true;
        for (std::size_t k = 0; k < 5; ++k) {
            std::size_t i = steps.size() - 5 + k;
            const Csp& s = states[i + 1];
            ok = ok && steps[i].rule == RuleId::LIN_EQ && is_range(s, "E", want[k].first.first, want[k].first.second) &&
                 is_range(s, "N", want[k].second.first, want[k].second.second);
            seq += (k ? " -> " : "") + dom(s, "E").to_string() + "/" + dom(s, "N").to_string();
        }
        ck.expect(ok, "final five LIN_EQ steps");
        ck.note("E/N: " + seq);
    }
    ck.expect(send_fixpoint(res.final), "replay ends at the fixpoint");
    return ck.done();
}

Outcome ac03() {
    Check ck;
    Csp csp = model("sendmory");
    auto t0 = Clock::now();
    SolveLimits lim;
    lim.solution_limit = 0;
    auto res = solve(csp, all_rules(), std::vector<SplitRuleId>{SplitRuleId::ENUMERATION}, {}, lim);
    double dt = seconds_since(t0);
    ck.expect(res.complete, "search complete");
    ck.expect(res.solutions.size() == 1, "exactly one solution (got " + std::to_string(res.solutions.size()) + ")");

    auto residual = propagate(csp, all_rules()).final;
    auto oracle = solutions_bruteforce(residual, 1'000'000);
    auto found = expanded(res.solutions, csp.num_vars());
    ck.expect(project(oracle, csp.num_vars()) == found, "matches brute force over the residual CSP");
    ck.expect(dt < 5.0, "time < 5s");
    if (res.solutions.size() == 1) {
        std::string sol;
        for (const auto& n : kSend) sol += n + "=" + std::to_string(dom(res.solutions[0], n).value()) + " ";
        ck.note(sol + "(oracle: " + std::to_string(oracle.size()) + " over " +
                std::to_string(search_space_size(residual.domains())) + " tuples), " + fmt_seconds(dt));
    }
    return ck.done();
}

Outcome ac04() {
    Check ck;
    Csp csp = model("lin1");
    const Rule& r = rule(RuleId::LIN_EQ);
    Constraint c = *csp.constraints().begin();
    std::vector<std::string> seen;
    for (int i = 1; i <= 3; ++i) {
        auto raw = r.apply(csp, Target{c, std::nullopt});
        auto d = raw ? settle(csp, *raw) : std::nullopt;
        if (i == 3) {
            ck.expect(!d, "third application not relevant");
            break;
        }
        if (!d) {
            ck.expect(false, "application " + std::to_string(i) + " relevant");
            break;
        }
        csp = apply_delta(csp, *d);
        seen.push_back(ranges(csp, {"x", "y"}));
        std::int64_t xhi = i == 1 ? 9 : 8;
        ck.expect(is_range(csp, "x", 3, xhi) && is_range(csp, "y", 1, 4), "application " + std::to_string(i));
    }
    for (std::size_t i = 0; i < seen.size(); ++i) ck.note(std::to_string(i + 1) + ": " + seen[i]);
    return ck.done();
}

Outcome ac05() {
    Check ck;
    Csp csp = model("twoeq");
    ck.expect(is_closed_under(csp, rule(RuleId::LIN_EQ)), "closed under LIN_EQ");
    auto fp = propagate(csp, rules_from_ids(std::vector<RuleId>{RuleId::LIN_EQ}));
    ck.expect(fp.steps.empty(), "zero relevant steps");
    auto res = solve(csp, all_rules(), std::vector<SplitRuleId>{SplitRuleId::ENUMERATION});
    bool found = res.solutions.size() == 1 && solution_values(res.solutions[0], 2) == Assignment{5, 5};
    ck.expect(found, "solve finds (5,5)");
    ck.expect(res.stats.splits > 0, "solution needs splitting");
    ck.note(std::to_string(fp.steps.size()) + " LIN_EQ steps; (5,5) after " + std::to_string(res.stats.splits) + " splits");
    return ck.done();
}

Outcome ac06() {
    Check ck;
    Csp csp = model("parity");
    auto iv = check_interval_consistent(csp);
    auto bd = check_bound_consistent(csp);
    ck.expect(iv.verdict, "interval consistent");
    ck.expect(!bd.verdict && !bd.failed, "not bound consistent");
    SolveLimits lim;
    lim.solution_limit = 0;
    auto res = solve(csp, all_rules(), std::vector<SplitRuleId>{SplitRuleId::ENUMERATION}, {}, lim);
    ck.expect(res.complete && res.solutions.empty() && res.stats.stuck_leaves == 0, "UNSAT");
    ck.note(std::string("interval ") + (iv.verdict ? "consistent" : "inconsistent") + ", bound " +
            (bd.verdict ? "consistent" : "inconsistent") + ", solve " + (res.solutions.empty() ? "UNSAT" : "SAT") + " (" +
            std::to_string(res.stats.failed_leaves) + " failed leaves)");
    return ck.done();
}

Outcome suite_outcome(SuiteResult (*fn)(const SuiteConfig&), double max_seconds) {
    Check ck;
    auto t0 = Clock::now();
    SuiteResult r = fn(SuiteConfig{});
    double dt = seconds_since(t0);
    ck.expect(r.passed && r.counterexamples == 0, r.name);
    if (max_seconds > 0) ck.expect(dt < max_seconds, "time");
    ck.note(r.name + ": " + std::to_string(r.instances) + " instances, " + std::to_string(r.counterexamples) +
            " counterexamples, seed " + std::to_string(r.seed) + ", " + fmt_seconds(dt));
    for (const auto& d : r.details) ck.note(d);
    return ck.done();
}

Outcome ac07() { return suite_outcome(suite_arc_consistency, 30.0); }
Outcome ac08() { return suite_outcome(suite_idempotence, 0); }
Outcome ac09() { return suite_outcome(suite_non_termination, 0); }
Outcome ac10() { return suite_outcome(suite_interval_consistency, 0); }

// AC11 ----------------------------------------------------------------------

struct Tally {
    std::map<std::string, std::size_t> applications;
    std::size_t counterexamples = 0;
    std::vector<std::string> examples;

    void record(const std::string& rule, bool ok, const Csp& csp) {
        ++applications[rule];
        if (ok) return;
        ++counterexamples;
        if (examples.size() < 3) {
            std::string m = render_model(csp);
            std::replace(m.begin(), m.end(), '\n', ' ');
            examples.push_back(rule + " on " + m);
        }
    }
};

void check_deterministic(const Csp& csp, Tally& t) {
    const std::size_t n = csp.num_vars();
    auto before = testing::solutions_on(csp, n);
    for (const Rule* r : all_rules()) {
        for (const auto& c : csp.constraints()) {
            if (!r->handles(c.kind())) continue;
            for (const auto& target : r->targets(csp, c)) {
                auto d = r->apply(csp, target);
                if (!d) continue;
                Csp after = apply_delta(csp, *d);
                t.record(std::string(to_string(r->id())), testing::solutions_on(after, n) == before, csp);
            }
        }
    }
}

void check_splits(const Csp& csp, Tally& t, std::mt19937_64& rng) {
    const std::size_t n = csp.num_vars();
    auto before = testing::solutions_on(csp, n);
    auto try_split = [&](SplitRuleId id, const SplitTarget& target) {
        auto parts = split(csp, id, target);
        if (!parts) return;
        auto u = testing::solutions_on(parts->first, n);
        auto v = testing::solutions_on(parts->second, n);
        u.insert(v.begin(), v.end());
        t.record(std::string(to_string(id)), u == before, csp);
    };
    for (std::uint32_t i = 0; i < n; ++i) {
        VarId x{i};
        const Domain& d = csp.domain(x);
        try_split(SplitRuleId::ENUMERATION, SplitTarget{x, std::nullopt, std::nullopt});
        if (!d.empty()) {
            auto vals = d.values();
            std::int64_t a = vals[static_cast<std::size_t>(testing::pick(rng, 0, static_cast<std::int64_t>(vals.size()) - 1))];
            try_split(SplitRuleId::ENUMERATION, SplitTarget{x, a, std::nullopt});
        }
        try_split(SplitRuleId::INTERVAL_SPLIT_1, SplitTarget{x, std::nullopt, std::nullopt});
        try_split(SplitRuleId::INTERVAL_SPLIT_2, SplitTarget{x, std::nullopt, std::nullopt});
    }
    for (const auto& c : csp.constraints()) {
        try_split(SplitRuleId::INTERVAL_SPLIT_3, SplitTarget{std::nullopt, std::nullopt, c});
        try_split(SplitRuleId::ABS_SPLIT, SplitTarget{std::nullopt, std::nullopt, c});
    }
}

// BISECTION works on rational boxes, outside the reach of the enumeration
// oracle: the two halves must cover the box and meet at its midpoint.
void check_bisection(std::mt19937_64& rng, Tally& t) {
    Csp csp;
    Rational lo(testing::pick(rng, -20, 20), testing::pick(rng, 1, 4));
    Rational hi = lo + Rational(testing::pick(rng, 0, 20), testing::pick(rng, 1, 4));
    VarId x = csp.add_variable("x", Domain::real(lo, hi));
    VarId y = csp.add_variable("y", Domain::real(0, 1));
    csp.add_constraint(Constraint::eq(LinearForm{{{x, 1}, {y, -1}}, 0}));
    auto parts = split(csp, SplitRuleId::BISECTION, SplitTarget{x, std::nullopt, std::nullopt});
    if (!parts) return;
    const RealBox& a = parts->first.domain(x).as_real();
    const RealBox& b = parts->second.domain(x).as_real();
    bool ok = a.lo == lo && b.hi == hi && a.hi == b.lo && a.hi == (lo + hi) / Rational(2) &&
              parts->first.constraints() == csp.constraints() && parts->second.constraints() == csp.constraints();
    t.record("BISECTION", ok, csp);
}

Outcome ac11() {
    Check ck;
    auto t0 = Clock::now();
    std::mt19937_64 rng(11);
    Tally t;
    std::size_t instances = 0;
    for (; instances < 1000; ++instances) {
        Csp csp = testing::random_csp(rng);
        if (search_space_size(csp.domains()) > 1'000'000) continue;
        check_deterministic(csp, t);
        check_splits(csp, t, rng);
        // Also a state part-way through propagation, where fresh variables,
        // substituted constraints and narrowed domains occur.
        SchedulerConfig cfg;
        cfg.budget = static_cast<std::size_t>(testing::pick(rng, 1, 6));
        cfg.shuffle_seed = rng();
        auto mid = propagate(csp, all_rules(), cfg).final;
        if (!mid.is_failed() && search_space_size(mid.domains()) <= 1'000'000) {
            check_deterministic(mid, t);
            check_splits(mid, t, rng);
        }
        check_bisection(rng, t);
    }
    double dt = seconds_since(t0);
    ck.expect(t.counterexamples == 0, std::to_string(t.counterexamples) + " counterexamples");
    std::string missing;
    for (RuleId id : all_rule_ids())
        if (!t.applications.count(std::string(to_string(id)))) missing += std::string(to_string(id)) + " ";
    for (SplitRuleId id : all_split_rule_ids())
        if (!t.applications.count(std::string(to_string(id)))) missing += std::string(to_string(id)) + " ";
    ck.expect(missing.empty(), "rules never applied: " + missing);
    ck.expect(dt < 120.0, "time < 2 min");
    std::size_t total = 0;
    for (const auto& [_, k] : t.applications) total += k;
    ck.note(std::to_string(instances) + " CSPs, " + std::to_string(total) + " applications over " +
            std::to_string(t.applications.size()) + " rules, " + fmt_seconds(dt));
    for (const auto& e : t.examples) ck.note(e);
    return ck.done();
}

// AC12 ----------------------------------------------------------------------

Outcome ac12() {
    Check ck;
    auto t0 = Clock::now();
    const std::vector<std::pair<int, std::size_t>> cases = {{3, 12}, {4, 576}};
    for (auto [n, want] : cases) {
        Csp csp = model("latin" + std::to_string(n));
        std::set<Assignment> oracle = n == 3 ? solutions_bruteforce(csp, 1'000'000) : solutions_backtracking(csp);
        SolveLimits lim;
        lim.solution_limit = 0;
        auto res = solve(csp, all_rules(), std::vector<SplitRuleId>{SplitRuleId::ENUMERATION}, {}, lim);
        auto found = expanded(res.solutions, csp.num_vars());
        ck.expect(oracle.size() == want, "oracle count for n=" + std::to_string(n));
        ck.expect(res.solutions.size() == want && found.size() == want, "solve count for n=" + std::to_string(n));
        ck.expect(found == oracle, "solutions equal oracle for n=" + std::to_string(n));
        ck.note("latin(" + std::to_string(n) + "): " + std::to_string(res.solutions.size()) + " solutions, oracle " +
                std::to_string(oracle.size()));
    }
    double dt = seconds_since(t0);
    ck.expect(dt < 30.0, "time < 30s");
    ck.note(fmt_seconds(dt));
    return ck.done();
}

// AC13 ----------------------------------------------------------------------

std::size_t count_stuck(const ProofNode& n, std::size_t& leaves) {
    if (n.children.empty()) {
        ++leaves;
        bool stuck = !n.leaf_status || *n.leaf_status == DerivationStatus::Stuck ||
                     (*n.leaf_status == DerivationStatus::Successful && !n.end.is_solved()) ||
                     (*n.leaf_status == DerivationStatus::Failed && !n.end.is_failed());
        return stuck ? 1 : 0;
    }
    std::size_t k = 0;
    for (const auto& c : n.children) k += count_stuck(*c, leaves);
    return k;
}

Outcome ac13() {
    Check ck;
    std::mt19937_64 rng(13);
    const std::vector<RuleId> ids{RuleId::DELETION, RuleId::SUBSTITUTION};
    auto rules = rules_from_ids(ids);
    const std::vector<SplitRuleId> splits{SplitRuleId::ENUMERATION};
    std::size_t leaves = 0, stuck = 0, mismatched = 0;
    for (int i = 0; i < 200; ++i) {
        Csp csp = testing::random_csp(rng);
        SolveLimits lim;
        lim.solution_limit = 0;
        auto res = solve(csp, rules, splits, {}, lim);
        std::size_t here = res.tree ? count_stuck(*res.tree, leaves) : 1;
        stuck += here;
        auto found = expanded(res.solutions, csp.num_vars());
        if (found != solutions_bruteforce(csp)) ++mismatched;
    }
    ck.expect(stuck == 0, std::to_string(stuck) + " stuck leaves");
    ck.expect(mismatched == 0, std::to_string(mismatched) + " searches disagree with the oracle");
    ck.note("200 CSPs, " + std::to_string(leaves) + " leaves, all solved or failed");
    return ck.done();
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> all = {
        {"AC01", ac01}, {"AC02", ac02}, {"AC03", ac03}, {"AC04", ac04}, {"AC05", ac05}, {"AC06", ac06}, {"AC07", ac07},
        {"AC08", ac08}, {"AC09", ac09}, {"AC10", ac10}, {"AC11", ac11}, {"AC12", ac12}, {"AC13", ac13}};
    std::vector<std::string> wanted(argv + 1, argv + argc);
    bool all_ok = true;
    for (const auto& [id, fn] : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = Outcome{false, std::string("exception: ") + e.what()};
        }
        all_ok = all_ok && o.pass;
        std::cout << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    }
    return all_ok ? 0 : 1;
}
