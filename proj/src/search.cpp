#include "propkit/search.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <random>

#include "propkit/error.hpp"

namespace propkit {

namespace {

constexpr std::array<std::pair<SplitRuleId, std::string_view>, 6> kSplitNames{{
    {SplitRuleId::ENUMERATION, "ENUMERATION"},
    {SplitRuleId::INTERVAL_SPLIT_1, "INTERVAL_SPLIT_1"},
    {SplitRuleId::INTERVAL_SPLIT_2, "INTERVAL_SPLIT_2"},
    {SplitRuleId::INTERVAL_SPLIT_3, "INTERVAL_SPLIT_3"},
    {SplitRuleId::BISECTION, "BISECTION"},
    {SplitRuleId::ABS_SPLIT, "ABS_SPLIT"},
}};

std::pair<Csp, Csp> with_domains(const Csp& csp, VarId v, Domain a, Domain b) {
    std::pair<Csp, Csp> out{csp, csp};
    out.first.set_domain(v, std::move(a));
    out.second.set_domain(v, std::move(b));
    return out;
}

}  // namespace

std::string_view to_string(SplitRuleId id) { return kSplitNames.at(static_cast<std::size_t>(id)).second; }

std::optional<SplitRuleId> split_rule_id_from_string(std::string_view name) {
    for (const auto& [id, n] : kSplitNames)
        if (n == name) return id;
    return std::nullopt;
}

std::span<const SplitRuleId> all_split_rule_ids() {
    static const std::array<SplitRuleId, 6> ids{SplitRuleId::ENUMERATION,      SplitRuleId::INTERVAL_SPLIT_1,
                                                SplitRuleId::INTERVAL_SPLIT_2, SplitRuleId::INTERVAL_SPLIT_3,
                                                SplitRuleId::BISECTION,        SplitRuleId::ABS_SPLIT};
    return ids;
}

std::string_view to_string(DerivationStatus s) {
    switch (s) {
        case DerivationStatus::Successful: return "successful";
        case DerivationStatus::Failed: return "failed";
        case DerivationStatus::Stuck: return "stuck";
    }
    return "?";
}

std::optional<std::pair<Csp, Csp>> split(const Csp& csp, SplitRuleId rule, const SplitTarget& target) {
    switch (rule) {
        case SplitRuleId::ENUMERATION:
        case SplitRuleId::INTERVAL_SPLIT_1:
        case SplitRuleId::INTERVAL_SPLIT_2: {
            if (!target.var || target.var->index >= csp.num_vars()) return std::nullopt;
            const Domain& d = csp.domain(*target.var);
            if (!d.is_integer() || d.size() < 2) return std::nullopt;
            if (rule == SplitRuleId::ENUMERATION) {
                std::int64_t a = target.value.value_or(d.min());
                if (!d.contains(a)) return std::nullopt;
                return with_domains(csp, *target.var, d.clamp(a, a), d.remove(a));
            }
            if (!d.is_interval()) return std::nullopt;
            std::int64_t a = d.min(), b = d.max();
            if (rule == SplitRuleId::INTERVAL_SPLIT_1)
                return with_domains(csp, *target.var, Domain::interval(a, a), Domain::interval(a + 1, b));
            return with_domains(csp, *target.var, Domain::interval(b, b), Domain::interval(a, b - 1));
        }
        case SplitRuleId::INTERVAL_SPLIT_3: {
            if (!target.constraint || !csp.has_constraint(*target.constraint)) return std::nullopt;
            auto* p = target.constraint->get_if<VarDiseqConst>();
            if (!p) return std::nullopt;
            const Domain& d = csp.domain(p->x);
            if (!d.is_interval() || d.empty() || !(d.min() < p->c && p->c < d.max())) return std::nullopt;
            auto out = with_domains(csp, p->x, Domain::interval(d.min(), p->c - 1), Domain::interval(p->c + 1, d.max()));
            out.first.remove_constraint(*target.constraint);
            out.second.remove_constraint(*target.constraint);
            return out;
        }
        case SplitRuleId::BISECTION: {
            if (!target.var || target.var->index >= csp.num_vars()) return std::nullopt;
            const Domain& d = csp.domain(*target.var);
            if (!d.is_real() || !(d.as_real().lo < d.as_real().hi)) return std::nullopt;
            Rational mid = (d.as_real().lo + d.as_real().hi) / Rational(2);
            return with_domains(csp, *target.var, Domain::real(d.as_real().lo, mid), Domain::real(mid, d.as_real().hi));
        }
        case SplitRuleId::ABS_SPLIT: {
            if (!target.constraint || !csp.has_constraint(*target.constraint)) return std::nullopt;
            auto* p = target.constraint->get_if<AbsDiffEq>();
            if (!p) return std::nullopt;
            AffineExpr diff = AffineExpr::of_var(p->x);
            diff -= AffineExpr::of_var(p->y);
            std::pair<Csp, Csp> out{csp, csp};
            out.first.remove_constraint(*target.constraint);
            out.second.remove_constraint(*target.constraint);
            out.first.add_constraint(Constraint::eq(LinearForm{diff.terms, p->a}));
            out.second.add_constraint(Constraint::eq(LinearForm{diff.terms, -p->a}));
            return out;
        }
    }
    return std::nullopt;
}

DerivationStatus classify(const Csp& last) {
    if (last.is_solved()) return DerivationStatus::Successful;
    if (last.is_failed()) return DerivationStatus::Failed;
    return DerivationStatus::Stuck;
}

DerivationStatus classify(std::span<const Csp> derivation) {
    if (derivation.empty()) throw Error("empty derivation");
    return classify(derivation.back());
}

Assignment solution_values(const Csp& solved, std::size_t n) {
    Assignment a;
    for (std::size_t i = 0; i < n && i < solved.num_vars(); ++i) a.push_back(solved.domain(VarId{static_cast<std::uint32_t>(i)}).value());
    return a;
}

namespace {

bool has(std::span<const SplitRuleId> rules, SplitRuleId id) { return std::find(rules.begin(), rules.end(), id) != rules.end(); }

class Searcher {
public:
    Searcher(std::span<const Rule* const> rules, std::span<const SplitRuleId> split_rules, const Strategy& strategy,
             const SolveLimits& limits)
        : rules_(rules), split_rules_(split_rules), strategy_(strategy), limits_(limits), rng_(strategy.seed),
          start_(std::chrono::steady_clock::now()) {}

    std::unique_ptr<ProofNode> explore(const Csp& csp) {
        if (stop()) {
            result.complete = false;
            return nullptr;
        }
        ++result.stats.nodes;
        SchedulerConfig cfg;
        cfg.budget = limits_.step_budget;
        auto fp = propagate(csp, rules_, cfg);
        result.stats.steps += fp.steps.size();

        auto node = std::make_unique<ProofNode>();
        if (limits_.build_tree) {
            node->start = csp;
            node->steps = std::move(fp.steps);
        }
        const Csp& end = fp.final;
        auto leaf = [&](DerivationStatus s) {
            node->leaf_status = s;
            if (s == DerivationStatus::Successful) ++result.stats.successful_leaves;
            if (s == DerivationStatus::Failed) ++result.stats.failed_leaves;
            if (s == DerivationStatus::Stuck) ++result.stats.stuck_leaves;
        };

        if (fp.status == FixpointStatus::BudgetExhausted) {
            result.complete = false;
            leaf(DerivationStatus::Stuck);
        } else if (end.is_failed()) {
            leaf(DerivationStatus::Failed);
        } else if (end.is_solved()) {
            leaf(DerivationStatus::Successful);
            result.solutions.push_back(end);
        } else if (auto choice = choose(end)) {
            auto children = split(end, choice->rule, choice->target);
            ++result.stats.splits;
            node->split = std::move(*choice);
            auto left = explore(children->first);
            if (left) node->children.push_back(std::move(left));
            auto right = explore(children->second);
            if (right) node->children.push_back(std::move(right));
        } else {
            leaf(DerivationStatus::Stuck);
        }
        if (limits_.build_tree) node->end = end;
        return node;
    }

    std::optional<SplitLabel> choose(const Csp& csp) {
        if (strategy_.constraint_splits_first) {
            if (auto c = constraint_split(csp)) return c;
            return domain_split(csp);
        }
        if (auto d = domain_split(csp)) return d;
        return constraint_split(csp);
    }

    SolveResult result;

private:
    bool stop() const {
        if (limits_.node_limit && result.stats.nodes >= limits_.node_limit) return true;
        if (limits_.solution_limit && result.solutions.size() >= limits_.solution_limit) return true;
        if (limits_.time_limit.count() > 0 && std::chrono::steady_clock::now() - start_ > limits_.time_limit) return true;
        return false;
    }

    std::optional<SplitLabel> constraint_split(const Csp& csp) {
        for (const auto& c : csp.constraints()) {
            SplitTarget t{std::nullopt, std::nullopt, c};
            if (c.kind() == ConstraintKind::AbsDiffEq && has(split_rules_, SplitRuleId::ABS_SPLIT))
                return SplitLabel{SplitRuleId::ABS_SPLIT, t};
            if (c.kind() == ConstraintKind::VarDiseqConst && has(split_rules_, SplitRuleId::INTERVAL_SPLIT_3) &&
                split(csp, SplitRuleId::INTERVAL_SPLIT_3, t))
                return SplitLabel{SplitRuleId::INTERVAL_SPLIT_3, t};
        }
        return std::nullopt;
    }

    std::optional<VarId> pick_var(const Csp& csp, bool intervals_only) {
        std::vector<VarId> open;
        for (std::uint32_t i = 0; i < csp.num_vars(); ++i) {
            const Domain& d = csp.domain(VarId{i});
            if (d.is_integer() && d.size() >= 2 && (!intervals_only || d.is_interval())) open.push_back(VarId{i});
        }
        if (open.empty()) return std::nullopt;
        switch (strategy_.var_order) {
            case Strategy::VarOrder::Declaration: return open.front();
            case Strategy::VarOrder::SmallestDomain:
                return *std::min_element(open.begin(), open.end(), [&](VarId a, VarId b) {
                    return csp.domain(a).size() < csp.domain(b).size();
                });
            case Strategy::VarOrder::Random: {
                std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
                return open[pick(rng_)];
            }
        }
        return open.front();
    }

    std::optional<SplitLabel> domain_split(const Csp& csp) {
        std::vector<SplitRuleId> order{strategy_.domain_split, SplitRuleId::ENUMERATION, SplitRuleId::INTERVAL_SPLIT_1,
                                       SplitRuleId::INTERVAL_SPLIT_2};
        for (auto id : order) {
            if (!has(split_rules_, id)) continue;
            if (id != SplitRuleId::ENUMERATION && id != SplitRuleId::INTERVAL_SPLIT_1 && id != SplitRuleId::INTERVAL_SPLIT_2)
                continue;
            auto v = pick_var(csp, id != SplitRuleId::ENUMERATION);
            if (!v) continue;
            SplitTarget t{v, std::nullopt, std::nullopt};
            if (id == SplitRuleId::ENUMERATION) {
                const Domain& d = csp.domain(*v);
                t.value = strategy_.value_order == Strategy::ValueOrder::Ascending ? d.min() : d.max();
            }
            return SplitLabel{id, t};
        }
        return std::nullopt;
    }

    std::span<const Rule* const> rules_;
    std::span<const SplitRuleId> split_rules_;
    Strategy strategy_;
    SolveLimits limits_;
    std::mt19937_64 rng_;
    std::chrono::steady_clock::time_point start_;
};

void merge(SolveResult& into, SolveResult&& part) {
    for (auto& s : part.solutions) into.solutions.push_back(std::move(s));
    into.stats.nodes += part.stats.nodes;
    into.stats.splits += part.stats.splits;
    into.stats.steps += part.stats.steps;
    into.stats.successful_leaves += part.stats.successful_leaves;
    into.stats.failed_leaves += part.stats.failed_leaves;
    into.stats.stuck_leaves += part.stats.stuck_leaves;
    into.complete = into.complete && part.complete;
}

// Parallel exploration: expand breadth-first until there are enough open
// subtrees, then search them concurrently and stitch the results back in
// left-to-right order.
SolveResult solve_parallel(const Csp& csp, std::span<const Rule* const> rules, std::span<const SplitRuleId> split_rules,
                           const Strategy& strategy, const SolveLimits& limits) {
    SolveLimits seq = limits;
    seq.parallel = 1;
    Searcher top(rules, split_rules, strategy, seq);

    struct Open {
        ProofNode* parent;
        Csp csp;
    };
    auto root = std::make_unique<ProofNode>();

    // Expand one node without recursing.
    auto expand = [&](const Csp& node_csp, ProofNode& node, std::vector<Open>& out) {
        ++top.result.stats.nodes;
        SchedulerConfig cfg;
        cfg.budget = limits.step_budget;
        auto fp = propagate(node_csp, rules, cfg);
        top.result.stats.steps += fp.steps.size();
        node.start = node_csp;
        node.steps = std::move(fp.steps);
        node.end = fp.final;
        const Csp& end = node.end;
        if (fp.status == FixpointStatus::BudgetExhausted) {
            top.result.complete = false;
            node.leaf_status = DerivationStatus::Stuck;
            ++top.result.stats.stuck_leaves;
        } else if (end.is_failed()) {
            node.leaf_status = DerivationStatus::Failed;
            ++top.result.stats.failed_leaves;
        } else if (end.is_solved()) {
            node.leaf_status = DerivationStatus::Successful;
            ++top.result.stats.successful_leaves;
        } else if (auto choice = top.choose(end)) {
            auto children = split(end, choice->rule, choice->target);
            ++top.result.stats.splits;
            node.split = *choice;
            out.push_back({&node, children->first});
            out.push_back({&node, children->second});
        } else {
            node.leaf_status = DerivationStatus::Stuck;
            ++top.result.stats.stuck_leaves;
        }
    };

    std::vector<Open> level;
    expand(csp, *root, level);
    while (!level.empty() && level.size() < limits.parallel) {
        std::vector<Open> next;
        for (auto& o : level) {
            o.parent->children.push_back(std::make_unique<ProofNode>());
            expand(o.csp, *o.parent->children.back(), next);
        }
        level = std::move(next);
    }

    std::vector<std::future<SolveResult>> jobs;
    for (auto& o : level) {
        jobs.push_back(std::async(std::launch::async, [&, c = o.csp] {
            Searcher s(rules, split_rules, strategy, seq);
            s.result.tree = s.explore(c);
            return std::move(s.result);
        }));
    }

    SolveResult out;
    std::vector<SolveResult> parts;
    for (auto& j : jobs) parts.push_back(j.get());
    for (std::size_t k = 0; k < level.size(); ++k) level[k].parent->children.push_back(std::move(parts[k].tree));
    // Solutions in left-to-right tree order.
    auto collect = [&](auto&& self, const ProofNode& n) -> void {
        if (n.leaf_status == DerivationStatus::Successful) out.solutions.push_back(n.end);
        for (const auto& ch : n.children) self(self, *ch);
    };
    collect(collect, *root);
    out.stats = top.result.stats;
    out.complete = top.result.complete;
    for (auto& p : parts) {
        p.solutions.clear();
        merge(out, std::move(p));
    }
    out.tree = std::move(root);
    return out;
}

}  // namespace

SolveResult solve(const Csp& csp, std::span<const Rule* const> rules, std::span<const SplitRuleId> split_rules,
                  const Strategy& strategy, const SolveLimits& limits) {
    if (csp.has_real_domains()) throw Error("solve needs finite integer domains");
    if (limits.parallel > 1 && limits.solution_limit == 0 && limits.node_limit == 0 && limits.build_tree)
        return solve_parallel(csp, rules, split_rules, strategy, limits);
    Searcher s(rules, split_rules, strategy, limits);
    s.result.tree = s.explore(csp);
    return std::move(s.result);
}

}  // namespace propkit
