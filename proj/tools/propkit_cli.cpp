#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "propkit/consistency.hpp"
#include "propkit/error.hpp"
#include "propkit/models.hpp"
#include "propkit/parser.hpp"
#include "propkit/render.hpp"
#include "propkit/rules.hpp"
#include "propkit/scheduler.hpp"
#include "propkit/search.hpp"
#include "propkit/trace.hpp"

using namespace propkit;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;
constexpr int kBudget = 3;

std::size_t step_budget(std::size_t flag) {
    const char* env = std::getenv("PROPKIT_BUDGET");
    if (!env || !*env) return flag;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw Error("PROPKIT_BUDGET must be a non-negative integer");
    return static_cast<std::size_t>(v);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

void print_ranges(const Csp& csp, std::size_t n) {
    for (std::uint32_t i = 0; i < n; ++i) std::cout << render_range(csp, VarId{i}) << "\n";
}

std::vector<const Rule*> rule_set(const std::string& list) { return list.empty() ? all_rules() : parse_rule_list(list); }

std::vector<SplitRuleId> split_set(const std::string& list) {
    if (list.empty())
        return {SplitRuleId::ENUMERATION, SplitRuleId::INTERVAL_SPLIT_1, SplitRuleId::INTERVAL_SPLIT_2,
                SplitRuleId::INTERVAL_SPLIT_3, SplitRuleId::ABS_SPLIT};
    std::vector<SplitRuleId> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        auto comma = list.find(',', start);
        std::string name = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        auto id = split_rule_id_from_string(name);
        if (!id) throw Error("unknown splitting rule '" + name + "'");
        out.push_back(*id);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct PropagateOpts {
    std::string model, rules, trace;
    std::size_t budget = kDefaultBudget;
    std::optional<std::uint64_t> seed;
};

int cmd_propagate(const PropagateOpts& o) {
    Csp csp = load_model(o.model);
    if (csp.has_real_domains()) throw Error("propagate needs integer domains; real models are handled by 'check' and 'suite'");
    auto rules = rule_set(o.rules);
    SchedulerConfig cfg;
    cfg.budget = step_budget(o.budget);
    cfg.shuffle_seed = o.seed;
    auto res = propagate(csp, rules, cfg);
    if (!o.trace.empty()) write_file(o.trace, trace_text(csp.without_solved(), res.steps));
    std::cout << "status: " << to_string(res.status) << "\n";
    std::cout << "steps: " << res.steps.size() << "\n";
    print_ranges(res.final, csp.num_vars());
    switch (res.status) {
        case FixpointStatus::Closed: return kOk;
        case FixpointStatus::Failed: return kNegative;
        case FixpointStatus::BudgetExhausted: return kBudget;
    }
    return kError;
}

struct SolveOpts {
    std::string model, rules, splits, tree, var_order = "declaration", value_order = "ascending";
    bool all = false, constraint_first = false;
    std::size_t limit = 0, time_ms = 0, parallel = 1, budget = kDefaultBudget, max_solutions = 0;
    std::uint64_t seed = 0;
};

int cmd_solve(const SolveOpts& o) {
    Csp csp = load_model(o.model);
    auto rules = rule_set(o.rules);
    auto splits = split_set(o.splits);
    Strategy st;
    if (o.var_order == "smallest")
        st.var_order = Strategy::VarOrder::SmallestDomain;
    else if (o.var_order == "random")
        st.var_order = Strategy::VarOrder::Random;
    st.value_order = o.value_order == "descending" ? Strategy::ValueOrder::Descending : Strategy::ValueOrder::Ascending;
    st.constraint_splits_first = o.constraint_first;
    st.seed = o.seed;
    if (!splits.empty() && splits.front() != SplitRuleId::INTERVAL_SPLIT_3 && splits.front() != SplitRuleId::ABS_SPLIT &&
        splits.front() != SplitRuleId::BISECTION)
        st.domain_split = splits.front();
    SolveLimits lim;
    lim.node_limit = o.limit;
    lim.solution_limit = o.all ? o.max_solutions : 1;
    lim.time_limit = std::chrono::milliseconds(o.time_ms);
    lim.step_budget = step_budget(o.budget);
    lim.build_tree = !o.tree.empty();
    lim.parallel = std::max<std::size_t>(1, o.parallel);
    auto res = solve(csp, rules, splits, st, lim);

    if (!o.tree.empty() && res.tree) {
        bool as_json = o.tree.size() >= 5 && o.tree.substr(o.tree.size() - 5) == ".json";
        write_file(o.tree, as_json ? tree_to_json(*res.tree) : tree_to_dot(*res.tree));
    }
    for (std::size_t k = 0; k < res.solutions.size(); ++k) {
        std::cout << "solution " << k + 1 << ":";
        for (std::uint32_t i = 0; i < csp.num_vars(); ++i) {
            const Domain& d = res.solutions[k].domain(VarId{i});
            // Variables left unconstrained keep their whole domain.
            if (d.is_singleton())
                std::cout << " " << csp.name(VarId{i}) << "=" << d.value();
            else
                std::cout << " " << csp.name(VarId{i}) << " in " << d.to_string();
        }
        std::cout << "\n";
    }
    const auto& s = res.stats;
    std::cout << "solutions: " << res.solutions.size() << "\n";
    std::cout << "nodes: " << s.nodes << " splits: " << s.splits << " steps: " << s.steps << " failed: " << s.failed_leaves
              << " stuck: " << s.stuck_leaves << "\n";
    if (!res.solutions.empty()) {
        std::cout << "status: sat\n";
        return kOk;
    }
    if (res.complete && s.stuck_leaves == 0) {
        std::cout << "status: unsat\n";
        return kNegative;
    }
    std::cout << "status: unknown\n";
    return kBudget;
}

int cmd_check(const std::string& model, const std::string& kind_name, std::uint64_t cap, bool as_json) {
    Csp csp = load_model(model);
    auto kind = consistency_kind_from_string(kind_name);
    if (!kind) throw Error("kind must be arc, bound or interval");
    ConsistencyReport rep;
    switch (*kind) {
        case ConsistencyKind::Arc: rep = check_arc_consistent(csp, cap); break;
        case ConsistencyKind::Bound: rep = check_bound_consistent(csp, cap); break;
        case ConsistencyKind::Interval: rep = check_interval_consistent(csp); break;
    }
    if (as_json) {
        std::cout << report_to_json(csp, rep) << "\n";
    } else {
        std::cout << to_string(rep.kind) << ": " << (rep.verdict ? "consistent" : "inconsistent")
                  << (rep.failed ? " (failed CSP)" : "") << "\n";
        for (const auto& w : rep.witnesses) {
            std::cout << (w.supported ? "  supported   " : "  unsupported ") << csp.name(w.var) << "=" << w.value.to_string()
                      << " (" << w.point << ") in " << w.constraint;
            if (w.supported) {
                std::cout << " by (";
                for (std::size_t i = 0; i < w.tuple.size(); ++i) std::cout << (i ? ", " : "") << w.tuple[i].to_string();
                std::cout << ")";
            }
            std::cout << "\n";
        }
    }
    return rep.verdict ? kOk : kNegative;
}

int cmd_gen(const std::string& name, int n, const std::string& out) {
    std::string text = gen_example(name, n);
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    return kOk;
}

int cmd_suite(const SuiteConfig& cfg, const std::string& only, bool as_json) {
    std::vector<SuiteResult> results;
    if (only.empty()) {
        results = theorem_suite(cfg);
    } else if (only == "T1i") {
        results.push_back(suite_arc_consistency(cfg));
    } else if (only == "T1ii") {
        results.push_back(suite_idempotence(cfg));
    } else if (only == "T1iii") {
        results.push_back(suite_non_termination(cfg));
    } else if (only == "T2") {
        results.push_back(suite_interval_consistency(cfg));
    } else {
        throw Error("unknown suite '" + only + "'");
    }
    bool ok = true;
    if (as_json) std::cout << suites_to_json(results);
    for (const auto& r : results) {
        ok = ok && r.passed;
        if (as_json) continue;
        std::cout << r.name << ": " << (r.passed ? "pass" : "FAIL") << " (" << r.instances << " instances, "
                  << r.counterexamples << " counterexamples, seed " << r.seed << ")\n";
        for (const auto& d : r.details) std::cout << "  " << d << "\n";
    }
    return ok ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"propkit: rule-based constraint propagation and search"};
    app.require_subcommand(1);

    PropagateOpts p;
    auto* prop = app.add_subcommand("propagate", "Propagate a model to a fixpoint");
    prop->add_option("model", p.model, "Model file")->required();
    prop->add_option("--rules", p.rules, "Comma-separated RuleId names (default: all)");
    prop->add_option("--trace", p.trace, "Write JSON-lines trace to FILE");
    prop->add_option("--budget", p.budget, "Maximum relevant steps");
    prop->add_option("--seed", p.seed, "Pick pending rule applications at random with this seed");

    SolveOpts s;
    auto* sol = app.add_subcommand("solve", "Search for solutions");
    sol->add_option("model", s.model, "Model file")->required();
    sol->add_flag("--all", s.all, "Enumerate all solutions");
    sol->add_option("--max-solutions", s.max_solutions, "With --all, stop after N solutions (0 = no cap)");
    sol->add_option("--tree", s.tree, "Export the proof tree (.dot or .json)");
    sol->add_option("--limit", s.limit, "Node limit (0 = none)");
    sol->add_option("--time-limit", s.time_ms, "Time limit in ms (0 = none)");
    sol->add_option("--rules", s.rules, "Deterministic rules (default: all)");
    sol->add_option("--splits", s.splits, "Splitting rules, first domain split preferred");
    sol->add_option("--var-order", s.var_order, "declaration|smallest|random")
        ->check(CLI::IsMember({"declaration", "smallest", "random"}));
    sol->add_option("--value-order", s.value_order, "ascending|descending")->check(CLI::IsMember({"ascending", "descending"}));
    sol->add_flag("--constraint-splits-first", s.constraint_first, "Try constraint splits before domain splits");
    sol->add_option("--parallel", s.parallel, "Worker threads for subtrees");
    sol->add_option("--budget", s.budget, "Step budget per node");
    sol->add_option("--seed", s.seed, "Seed for random variable order");

    std::string cmodel, ckind;
    std::uint64_t ccap = 1'000'000;
    bool cjson = false;
    auto* chk = app.add_subcommand("check", "Check arc, bound or interval consistency");
    chk->add_option("model", cmodel, "Model file")->required();
    chk->add_option("kind", ckind, "arc|bound|interval")->required();
    chk->add_option("--cap", ccap, "Tuple cap per constraint");
    chk->add_flag("--json", cjson, "Print the report as JSON");

    std::string gname, gout;
    int gn = 0;
    auto* gen = app.add_subcommand("gen", "Print a bundled example model");
    gen->add_option("name", gname, "sendmory|latin|lin1|lin1_fixpoint|parity|davis|twoeq")->required();
    gen->add_option("n", gn, "Order for latin");
    gen->add_option("-o,--output", gout, "Write to FILE");

    SuiteConfig scfg;
    std::string sonly;
    bool sjson = false;
    auto* sui = app.add_subcommand("suite", "Run the randomized property suites");
    sui->add_option("--seed", scfg.seed, "Seed");
    sui->add_option("--instances", scfg.instances, "Instances per random suite");
    sui->add_option("--steps", scfg.davis_steps, "Alternating steps for T1iii");
    sui->add_option("--only", sonly, "T1i|T1ii|T1iii|T2");
    sui->add_flag("--json", sjson, "JSON lines output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kError;
    }

    try {
        if (*prop) return cmd_propagate(p);
        if (*sol) return cmd_solve(s);
        if (*chk) return cmd_check(cmodel, ckind, ccap, cjson);
        if (*gen) return cmd_gen(gname, gn, gout);
        if (*sui) return cmd_suite(scfg, sonly, sjson);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
