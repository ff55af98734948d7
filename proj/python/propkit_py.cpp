#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "propkit/consistency.hpp"
#include "propkit/error.hpp"
#include "propkit/models.hpp"
#include "propkit/parser.hpp"
#include "propkit/render.hpp"
#include "propkit/rules.hpp"
#include "propkit/scheduler.hpp"
#include "propkit/search.hpp"
#include "propkit/trace.hpp"

namespace py = pybind11;
using namespace propkit;

namespace {

std::vector<const Rule*> rule_set(const std::optional<std::vector<std::string>>& names) {
    if (!names) return all_rules();
    std::vector<const Rule*> out;
    for (const auto& n : *names) {
        auto id = rule_id_from_string(n);
        if (!id) throw Error("unknown rule '" + n + "'");
        out.push_back(&rule(*id));
    }
    return out;
}

std::vector<SplitRuleId> split_set(const std::optional<std::vector<std::string>>& names) {
    if (!names)
        return {SplitRuleId::ENUMERATION, SplitRuleId::INTERVAL_SPLIT_1, SplitRuleId::INTERVAL_SPLIT_2,
                SplitRuleId::INTERVAL_SPLIT_3, SplitRuleId::ABS_SPLIT};
    std::vector<SplitRuleId> out;
    for (const auto& n : *names) {
        auto id = split_rule_id_from_string(n);
        if (!id) throw Error("unknown splitting rule '" + n + "'");
        out.push_back(*id);
    }
    return out;
}

// name -> int for fixed variables, name -> domain text otherwise.
py::dict values(const Csp& csp, std::size_t n) {
    py::dict d;
    for (std::uint32_t i = 0; i < n; ++i) {
        const Domain& dom = csp.domain(VarId{i});
        if (dom.is_integer() && dom.is_singleton())
            d[py::str(csp.name(VarId{i}))] = dom.value();
        else
            d[py::str(csp.name(VarId{i}))] = dom.to_string();
    }
    return d;
}

py::dict py_propagate(const std::string& text, std::optional<std::vector<std::string>> rules, std::size_t budget,
                      std::optional<std::uint64_t> seed) {
    Csp csp = parse_model(text);
    if (csp.has_real_domains()) throw Error("propagate needs integer domains");
    auto rs = rule_set(rules);
    SchedulerConfig cfg;
    cfg.budget = budget;
    cfg.shuffle_seed = seed;
    FixpointResult res;
    {
        py::gil_scoped_release release;
        res = propagate(csp, rs, cfg);
    }
    py::dict out;
    out["status"] = std::string(to_string(res.status));
    out["steps"] = res.steps.size();
    out["domains"] = values(res.final, csp.num_vars());
    out["trace"] = trace_text(csp.without_solved(), res.steps);
    return out;
}

py::dict py_solve(const std::string& text, bool all, std::size_t max_solutions,
                  std::optional<std::vector<std::string>> rules, std::optional<std::vector<std::string>> splits,
                  std::size_t node_limit, std::size_t parallel) {
    Csp csp = parse_model(text);
    auto rs = rule_set(rules);
    auto ss = split_set(splits);
    Strategy st;
    if (!ss.empty() && (ss.front() == SplitRuleId::ENUMERATION || ss.front() == SplitRuleId::INTERVAL_SPLIT_1 ||
                        ss.front() == SplitRuleId::INTERVAL_SPLIT_2))
        st.domain_split = ss.front();
    SolveLimits lim;
    lim.solution_limit = all ? max_solutions : 1;
    lim.node_limit = node_limit;
    lim.build_tree = false;
    lim.parallel = std::max<std::size_t>(1, parallel);
    SolveResult res;
    {
        py::gil_scoped_release release;
        res = solve(csp, rs, ss, st, lim);
    }
    py::list sols;
    for (const auto& s : res.solutions) sols.append(values(s, csp.num_vars()));
    py::dict out;
    out["solutions"] = sols;
    out["complete"] = res.complete;
    out["nodes"] = res.stats.nodes;
    out["stuck"] = res.stats.stuck_leaves;
    std::string status = !res.solutions.empty()                         ? "sat"
                         : res.complete && res.stats.stuck_leaves == 0 ? "unsat"
                                                                        : "unknown";
    out["status"] = status;
    return out;
}

py::dict py_check(const std::string& text, const std::string& kind_name, std::uint64_t cap) {
    Csp csp = parse_model(text);
    auto kind = consistency_kind_from_string(kind_name);
    if (!kind) throw Error("kind must be arc, bound or interval");
    ConsistencyReport rep;
    switch (*kind) {
        case ConsistencyKind::Arc: rep = check_arc_consistent(csp, cap); break;
        case ConsistencyKind::Bound: rep = check_bound_consistent(csp, cap); break;
        case ConsistencyKind::Interval: rep = check_interval_consistent(csp); break;
    }
    py::list ws;
    for (const auto& w : rep.witnesses) {
        py::dict d;
        d["constraint"] = w.constraint;
        d["var"] = csp.name(w.var);
        d["point"] = w.point;
        d["value"] = w.value.to_string();
        d["supported"] = w.supported;
        ws.append(d);
    }
    py::dict out;
    out["kind"] = std::string(to_string(rep.kind));
    out["consistent"] = rep.verdict;
    out["failed"] = rep.failed;
    out["witnesses"] = ws;
    return out;
}

py::list py_suite(std::uint64_t seed, std::size_t instances, std::size_t steps) {
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.instances = instances;
    cfg.davis_steps = steps;
    std::vector<SuiteResult> results;
    {
        py::gil_scoped_release release;
        results = theorem_suite(cfg);
    }
    py::list out;
    for (const auto& r : results) {
        py::dict d;
        d["name"] = r.name;
        d["passed"] = r.passed;
        d["instances"] = r.instances;
        d["counterexamples"] = r.counterexamples;
        d["details"] = r.details;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_propkit, m) {
    m.doc() = "Constraint propagation as proof rules";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<ParseError> parse_error(m, "ParseError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::object exc = py::handle(parse_error.ptr())(e.what());
            py::setattr(exc, "line", py::int_(e.line()));
            py::setattr(exc, "column", py::int_(e.column()));
            PyErr_SetObject(parse_error.ptr(), exc.ptr());
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    m.def("normalize", [](const std::string& text) { return render_model(parse_model(text)); },
          "Parse a model and print it back in canonical form.", py::arg("text"));
    m.def("propagate", &py_propagate, py::arg("text"), py::arg("rules") = py::none(),
          py::arg("budget") = kDefaultBudget, py::arg("seed") = py::none());
    m.def("solve", &py_solve, py::arg("text"), py::arg("all") = false, py::arg("max_solutions") = 0,
          py::arg("rules") = py::none(), py::arg("splits") = py::none(), py::arg("node_limit") = 0,
          py::arg("parallel") = 1);
    m.def("check", &py_check, py::arg("text"), py::arg("kind"), py::arg("cap") = 1'000'000);
    m.def("gen", &gen_example, py::arg("name"), py::arg("n") = 0);
    m.def("example_names", &example_names);
    m.def("suite", &py_suite, py::arg("seed") = 0, py::arg("instances") = 100, py::arg("steps") = 1000);
    m.def("rule_names", [] {
        std::vector<std::string> out;
        for (RuleId id : all_rule_ids()) out.emplace_back(to_string(id));
        return out;
    });
    m.def("split_rule_names", [] {
        std::vector<std::string> out;
        for (SplitRuleId id : all_split_rule_ids()) out.emplace_back(to_string(id));
        return out;
    });
}
