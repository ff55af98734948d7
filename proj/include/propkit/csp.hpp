#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "propkit/constraint.hpp"
#include "propkit/domain.hpp"

namespace propkit {

/// Prefix reserved for variables introduced by transformation rules.
inline constexpr std::string_view kFreshPrefix = "_t";

/// ⟨C ; x₁ ∈ D₁, …, xₙ ∈ Dₙ⟩: a variable sequence in declaration order, one
/// domain per variable and a set of constraints on them.
///
/// A Csp is a value: rule applications produce new values, never mutate
/// shared ones.
class Csp {
public:
    /// Appends a variable. Throws Error on a duplicate name.
    VarId add_variable(std::string name, Domain domain);
    /// Appends `_t<k>` for the next k of this lineage.
    VarId add_fresh_variable(Domain domain);
    std::string next_fresh_name() const;
    std::uint32_t fresh_counter() const { return fresh_counter_; }

    std::size_t num_vars() const { return names_.size(); }
    const std::string& name(VarId v) const { return names_.at(v.index); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<VarId> find(std::string_view name) const;

    const Domain& domain(VarId v) const { return domains_.at(v.index); }
    std::span<const Domain> domains() const { return domains_; }
    void set_domain(VarId v, Domain d) { domains_.at(v.index) = std::move(d); }

    const std::set<Constraint>& constraints() const { return constraints_; }
    /// Adds c (duplicates collapse). Throws Error if c mentions an unknown variable.
    bool add_constraint(Constraint c);
    bool remove_constraint(const Constraint& c) { return constraints_.erase(c) > 0; }
    bool has_constraint(const Constraint& c) const { return constraints_.count(c) > 0; }

    /// No constraints left and every domain non-empty.
    bool is_solved() const;
    /// Contains ⊥ or an empty domain.
    bool is_failed() const;
    bool has_real_domains() const;
    bool all_integer_finite() const { return !has_real_domains(); }

    /// The same CSP with its solved constraints removed.
    Csp without_solved() const;

    friend bool operator==(const Csp& a, const Csp& b);

private:
    std::vector<std::string> names_;
    std::vector<Domain> domains_;
    std::set<Constraint> constraints_;
    std::uint32_t fresh_counter_ = 0;
};

/// Whether c restricted to `doms` is the whole Cartesian product of its
/// variables' domains. Decided syntactically per constraint kind; may answer
/// false for exotic solved cases (never true for unsolved ones).
bool is_solved_constraint(const Constraint& c, std::span<const Domain> doms);

/// Equality after deleting solved constraints from both sides.
bool is_variant(const Csp& a, const Csp& b);

}  // namespace propkit
