#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "propkit/csp.hpp"
#include "propkit/oracle.hpp"
#include "propkit/rules.hpp"
#include "propkit/scheduler.hpp"

namespace propkit {

enum class SplitRuleId {
    ENUMERATION,
    INTERVAL_SPLIT_1,
    INTERVAL_SPLIT_2,
    INTERVAL_SPLIT_3,
    BISECTION,
    ABS_SPLIT,
};

std::string_view to_string(SplitRuleId id);
std::optional<SplitRuleId> split_rule_id_from_string(std::string_view name);
std::span<const SplitRuleId> all_split_rule_ids();

/// Where a splitting rule is applied. Domain splits use `var` (and `value` for
/// ENUMERATION); INTERVAL_SPLIT_3 and ABS_SPLIT use `constraint`.
struct SplitTarget {
    std::optional<VarId> var;
    std::optional<std::int64_t> value;
    std::optional<Constraint> constraint;
};

/// ψ₁ | ψ₂ for a splitting rule, or nullopt when its premise does not hold.
///   ENUMERATION       x ∈ D          → x = a | x ∈ D − {a}   (default a = min D)
///   INTERVAL_SPLIT_1  x ∈ [a..b]     → x = a | x ∈ [a+1..b]
///   INTERVAL_SPLIT_2  x ∈ [a..b]     → x = b | x ∈ [a..b−1]
///   INTERVAL_SPLIT_3  x ≠ c, a<c<b   → x ∈ [a..c−1] | x ∈ [c+1..b], x ≠ c dropped
///   BISECTION         x ∈ [a, b]     → x ∈ [a, (a+b)/2] | x ∈ [(a+b)/2, b]
///   ABS_SPLIT         |x − y| = a    → x − y = a | x − y = −a
std::optional<std::pair<Csp, Csp>> split(const Csp& csp, SplitRuleId rule, const SplitTarget& target);

enum class DerivationStatus { Successful, Failed, Stuck };

std::string_view to_string(DerivationStatus s);

/// Status of a finite derivation from its last CSP.
DerivationStatus classify(std::span<const Csp> derivation);
DerivationStatus classify(const Csp& last);

struct SplitLabel {
    SplitRuleId rule;
    SplitTarget target;
};

/// Proof tree with deterministic chains folded into their node: `steps` are
/// the one-child edges leading from `start` to `end`; `end` then has either
/// two children (split) or none (leaf).
struct ProofNode {
    Csp start;
    std::vector<DerivationStep> steps;
    Csp end;
    std::optional<SplitLabel> split;
    std::vector<std::unique_ptr<ProofNode>> children;
    std::optional<DerivationStatus> leaf_status;
};

struct Strategy {
    enum class VarOrder { Declaration, SmallestDomain, Random };
    enum class ValueOrder { Ascending, Descending };

    VarOrder var_order = VarOrder::Declaration;
    ValueOrder value_order = ValueOrder::Ascending;
    /// Domain splitting rule to prefer (ENUMERATION, INTERVAL_SPLIT_1/2).
    SplitRuleId domain_split = SplitRuleId::ENUMERATION;
    /// Try ABS_SPLIT / INTERVAL_SPLIT_3 on a constraint before domain splits.
    bool constraint_splits_first = false;
    std::uint64_t seed = 0;
};

struct SolveLimits {
    /// 0 = unlimited.
    std::size_t node_limit = 0;
    /// 0 = all solutions.
    std::size_t solution_limit = 1;
    /// 0 = unlimited.
    std::chrono::milliseconds time_limit{0};
    std::size_t step_budget = kDefaultBudget;
    bool build_tree = true;
    /// Worker threads for independent subtrees (1 = sequential).
    std::size_t parallel = 1;
};

struct SolveStats {
    std::size_t nodes = 0;
    std::size_t splits = 0;
    std::size_t steps = 0;
    std::size_t successful_leaves = 0;
    std::size_t failed_leaves = 0;
    std::size_t stuck_leaves = 0;
};

struct SolveResult {
    std::vector<Csp> solutions;
    std::unique_ptr<ProofNode> tree;
    SolveStats stats;
    /// False when a limit cut the search short.
    bool complete = true;
};

/// Depth-first proof-tree search: propagate to a fixpoint at every node,
/// stop on failure, emit solved CSPs, otherwise split by the strategy and
/// explore left then right.
SolveResult solve(const Csp& csp, std::span<const Rule* const> rules, std::span<const SplitRuleId> split_rules,
                  const Strategy& strategy = {}, const SolveLimits& limits = {});

/// Values of the first n variables of a solved CSP.
Assignment solution_values(const Csp& solved, std::size_t n);

}  // namespace propkit
