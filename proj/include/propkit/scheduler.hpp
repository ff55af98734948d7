#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "propkit/csp.hpp"
#include "propkit/rules.hpp"

namespace propkit {

/// One relevant rule application of a derivation.
struct DerivationStep {
    std::size_t index = 0;  // 1-based
    RuleId rule;
    Target target;
    Delta delta;
    bool relevant = true;
};

enum class FixpointStatus { Closed, Failed, BudgetExhausted };

std::string_view to_string(FixpointStatus s);

struct FixpointResult {
    Csp final;
    std::vector<DerivationStep> steps;
    FixpointStatus status = FixpointStatus::Closed;
};

inline constexpr std::size_t kDefaultBudget = 1'000'000;

struct SchedulerConfig {
    /// Maximum number of relevant steps.
    std::size_t budget = kDefaultBudget;
    /// Lower runs first. Defaults: solving/cheap rules 0, SUBSTITUTION 1,
    /// linear rules 2, cardinality rules and lifting 3.
    std::map<RuleId, int> priority;
    /// When set, the next (rule, target) pair is drawn at random from the
    /// worklist instead of by priority and FIFO order.
    std::optional<std::uint64_t> shuffle_seed;
    /// Called after each recorded step.
    std::function<void(const DerivationStep&, const Csp&)> on_step;
};

int default_priority(RuleId id);

/// Chaotic iteration: applies the given rules until the CSP is failed, closed
/// under all of them, or the budget runs out. Only relevant applications are
/// performed and recorded. Constraints that become solved are dropped as part
/// of the step that solved them, so every recorded delta replays exactly.
FixpointResult propagate(const Csp& csp, std::span<const Rule* const> rules, const SchedulerConfig& config = {});

/// Turns a rule's raw delta into the step actually performed: constraints it
/// leaves solved are moved to `removed`. Returns nullopt when the result is a
/// variant of csp (irrelevant application).
std::optional<Delta> settle(const Csp& csp, Delta delta);

/// True iff no application of `r` to csp is relevant.
bool is_closed_under(const Csp& csp, const Rule& r);

struct ScriptStep {
    RuleId rule;
    Target target;
};

/// Applies exactly the scripted steps in order. A step whose target is absent
/// or whose premise fails raises ReplayError; irrelevant steps are skipped and
/// not recorded.
FixpointResult replay(const Csp& csp, std::span<const ScriptStep> script);

}  // namespace propkit
