#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "propkit/constraint.hpp"
#include "propkit/csp.hpp"

// Extensional reference semantics. Nothing in here uses the proof rules; the
// property tests compare rule results against these enumerations.
namespace propkit {

using Assignment = std::vector<std::int64_t>;

/// c ∩ (D₁ × … × Dₙ) over the constraint's scope.
struct Relation {
    std::vector<VarId> scope;
    std::set<Assignment> tuples;
};

/// Extension of c restricted to `doms`. Throws OracleTooLarge when the product
/// of the scope domains exceeds `cap`.
Relation restrict(const Constraint& c, std::span<const Domain> doms, std::uint64_t cap = 1'000'000);

/// Every solution of a CSP with finite integer domains, as full assignments in
/// variable order. Throws OracleTooLarge when Π|Dᵢ| > cap.
std::set<Assignment> solutions_bruteforce(const Csp& csp, std::uint64_t cap = 1'000'000);

/// Same set as solutions_bruteforce, by generate-and-test backtracking: each
/// constraint is evaluated once all its variables are assigned, singleton
/// domains first. No propagation. Throws OracleTooLarge after `node_cap`
/// partial assignments.
std::set<Assignment> solutions_backtracking(const Csp& csp, std::uint64_t node_cap = 100'000'000);

/// Restriction of each assignment to its first `n` variables.
std::set<Assignment> project(const std::set<Assignment>& sols, std::size_t n);

/// Π|Dᵢ|, saturating.
std::uint64_t search_space_size(std::span<const Domain> doms);

}  // namespace propkit
