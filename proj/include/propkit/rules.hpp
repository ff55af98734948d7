#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "propkit/constraint.hpp"
#include "propkit/csp.hpp"
#include "propkit/domain.hpp"

namespace propkit {

enum class RuleId {
    LIN_INEQ_1,
    LIN_INEQ_2,
    LIN_EQ,
    LIN_EQ_UNARY,
    EQUALITY_1,
    EQUALITY_2,
    DISEQ_1,
    DISEQ_2,
    DISEQ_3,
    SIMPLE_DISEQ_1,
    SIMPLE_DISEQ_2,
    SIMPLE_DISEQ_3,
    DISEQ_LIFT,
    SUBSTITUTION,
    DELETION,
    EXACTLY_1,
    EXACTLY_2,
    EXACTLY_3,
    EXACTLY_4,
    ATMOST_TO_EXACTLY,
};

std::string_view to_string(RuleId id);
std::optional<RuleId> rule_id_from_string(std::string_view name);
std::span<const RuleId> all_rule_ids();

/// Reduction rules only shrink domains (and drop constraints they solve);
/// the rest are transformation rules.
bool is_reduction_rule(RuleId id);

struct DomainChange {
    Domain before;
    Domain after;
};

struct FreshVar {
    VarId var;
    std::string name;
    Domain domain;
};

/// What one rule application does to a CSP.
struct Delta {
    std::map<VarId, DomainChange> domain_changes;
    std::set<Constraint> removed;
    std::set<Constraint> added;
    std::vector<FreshVar> fresh_vars;

    bool is_noop() const {
        return domain_changes.empty() && removed.empty() && added.empty() && fresh_vars.empty();
    }
};

/// Applies d to csp. Fresh variables must continue csp's variable sequence.
Csp apply_delta(const Csp& csp, const Delta& d);

/// Where a rule is applied: a constraint of the CSP, plus the variable for
/// SUBSTITUTION.
struct Target {
    Constraint constraint;
    std::optional<VarId> var;
    auto operator<=>(const Target&) const = default;
};

/// A deterministic proof rule. Stateless; `apply` is a pure function of the
/// snapshot and returns nullopt when the rule's premise does not match.
class Rule {
public:
    virtual ~Rule() = default;

    virtual RuleId id() const = 0;
    virtual bool handles(ConstraintKind kind) const = 0;
    /// Candidate targets for constraint c (c itself for every rule except
    /// SUBSTITUTION, which yields one target per fixed variable of c).
    virtual std::vector<Target> targets(const Csp& csp, const Constraint& c) const;
    virtual std::optional<Delta> apply(const Csp& csp, const Target& target) const = 0;

    bool applicable(const Csp& csp, const Target& target) const { return apply(csp, target).has_value(); }
};

const Rule& rule(RuleId id);
/// Every deterministic rule, in RuleId order.
std::vector<const Rule*> all_rules();
std::vector<const Rule*> rules_from_ids(std::span<const RuleId> ids);
/// "LIN_EQ,SUBSTITUTION" → rule objects. Throws Error on unknown names.
std::vector<const Rule*> parse_rule_list(std::string_view csv);

// ---------------------------------------------------------------------------
// Rule building blocks
// ---------------------------------------------------------------------------

struct Bounds {
    std::int64_t lo;
    std::int64_t hi;
    auto operator<=>(const Bounds&) const = default;
};

/// LINEAR INEQUALITY narrowing for `form ≤ bound`, one entry per term.
/// POS terms keep lo and get hi' = min(hi, ⌊αⱼ⌋); NEG terms keep hi and get
/// lo' = max(lo, ⌈βⱼ⌉). Set domains contribute min/max. Domains must be
/// non-empty integer domains. The result may be an empty interval.
std::vector<Bounds> lin_ineq_bounds(const LinearForm& form, std::span<const Domain> doms);

/// LINEAR EQUALITY narrowing for `form = bound`: the inequality bounds plus
/// lo' = max(lo, ⌈γⱼ⌉) for POS and hi' = min(hi, ⌊δⱼ⌋) for NEG.
std::vector<Bounds> lin_eq_bounds(const LinearForm& form, std::span<const Domain> doms);

/// Rule that fired together with its delta.
struct Application {
    RuleId rule;
    Delta delta;
};

/// EQUALITY 1 / EQUALITY 2 on x = y (coefficients {1, −1}, bound 0) or the raw x = x.
std::optional<Application> apply_equality(const Csp& csp, const Constraint& c);
/// DISEQUALITY 1–3 and SIMPLE DISEQUALITY 1–3 on x ≠ y and x ≠ c.
std::optional<Application> apply_disequality(const Csp& csp, const Constraint& c);
/// DISEQUALITY 3 lifting: s ≠ t → u ≠ t, u = s with fresh u ∈ [s⁻..s⁺],
/// applied to each side that is neither a variable nor a constant.
std::optional<Delta> lift_disequality(const Csp& csp, const Constraint& c);
/// c with x replaced by value; nullopt when x does not occur or c's syntax
/// cannot hold a constant in x's place and some other variable is still free.
std::optional<Constraint> substitute(const Csp& csp, const Constraint& c, VarId x, std::int64_t value);
/// SUBSTITUTION of the fixed variable x into every constraint.
std::optional<Delta> apply_substitution(const Csp& csp, VarId x);
/// DELETION of ⊤.
std::optional<Delta> apply_deletion(const Csp& csp);
/// First applicable of EXACTLY 1–4.
std::optional<Application> apply_exactly(const Csp& csp, const Constraint& c);
/// atmost(x, l, z) → exactly(y, l, z), y ≤ x with fresh y ∈ [0..max D_x].
std::optional<Delta> apply_atmost(const Csp& csp, const Constraint& c);

}  // namespace propkit
