#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "propkit/csp.hpp"
#include "propkit/domain.hpp"
#include "propkit/linear.hpp"
#include "propkit/rational.hpp"

// Real relaxation of the linear-equality rule and the arc / bound / interval
// consistency checks it is characterized by. All arithmetic is exact.
namespace propkit {

/// Boxes indexed by VarId.
using Boxes = std::vector<RealBox>;

/// Real-interval LINEAR EQUALITY: for POS j, [max(lⱼ, γⱼ), min(hⱼ, αⱼ)]; for
/// NEG j, [max(lⱼ, βⱼ), min(hⱼ, δⱼ)]. Boxes of variables outside the form
/// are returned unchanged. Input boxes must be non-empty.
Boxes r_linear_equality(const LinearForm& form, std::span<const RealBox> boxes);

enum class BoundSide { Lo, Hi };

/// Whether fixing `var` at its lo/hi bound leaves `form = bound` satisfiable
/// within the other boxes.
bool real_bound_support(const LinearForm& form, std::span<const RealBox> boxes, VarId var, BoundSide side);

/// A solution of `form = bound` inside `boxes` with var = value, built as the
/// convex combination of the residual's minimizing and maximizing corners.
/// Returned in term order; nullopt when none exists.
std::optional<std::vector<Rational>> support_witness(const LinearForm& form, std::span<const RealBox> boxes, VarId var,
                                                     const Rational& value);

/// The arc-consistency witness of the real rule: with αⱼ, γⱼ (POS) or
/// βⱼ, δⱼ (NEG) taken over the premise boxes, picks λ so the j-th coordinate
/// of the segment between the two extreme solutions equals d. Returned in
/// term order; nullopt when d lies outside that segment's projection.
std::optional<std::vector<Rational>> interpolation_witness(const LinearForm& form, std::span<const RealBox> premise,
                                                           VarId var, const Rational& d);

enum class ConsistencyKind { Arc, Bound, Interval };

std::string_view to_string(ConsistencyKind k);
std::optional<ConsistencyKind> consistency_kind_from_string(std::string_view s);

struct Witness {
    std::string constraint;
    VarId var;
    /// "lo", "hi" or "value".
    std::string point;
    Rational value;
    bool supported = false;
    /// Supporting tuple over the constraint's scope; empty when unsupported.
    std::vector<Rational> tuple;
};

struct ConsistencyReport {
    ConsistencyKind kind = ConsistencyKind::Arc;
    bool verdict = false;
    /// The CSP was failed; verdict is then false.
    bool failed = false;
    /// Unsupported items first when verdict is false; supports otherwise.
    std::vector<Witness> witnesses;
};

/// Every value of every constraint variable has a support. Integer domains
/// are enumerated (per-constraint tuple count ≤ cap, else OracleTooLarge);
/// rational boxes are handled for linear equalities through the convexity
/// witness.
ConsistencyReport check_arc_consistent(const Csp& csp, std::uint64_t cap = 1'000'000);

/// Both bounds of every constraint variable have a support.
ConsistencyReport check_bound_consistent(const Csp& csp, std::uint64_t cap = 1'000'000);

/// A CSP whose constraints are all linear equalities over interval or box
/// domains.
bool is_lineq(const Csp& csp);

/// The CSP with every integer interval [l..h] replaced by the box [l, h].
Csp real_relaxation(const Csp& csp);

/// Bound consistency of the real relaxation. Throws Error when csp is not a
/// LINEQ.
ConsistencyReport check_interval_consistent(const Csp& lineq);

// ---------------------------------------------------------------------------
// Theorem suites
// ---------------------------------------------------------------------------

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::size_t instances = 0;
    std::size_t counterexamples = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> details;
};

struct SuiteConfig {
    std::uint64_t seed = 0;
    std::size_t instances = 500;
    std::size_t davis_steps = 1000;
};

/// One random equation `form = bound` with its boxes (rational endpoints).
struct RealEquationInstance {
    LinearForm form;
    Boxes boxes;
};

/// 2–4 variables, coefficients in [−5..5]∖{0}, bound in [−20..20], box
/// endpoints in [−10, 10] with denominators up to 4.
RealEquationInstance random_real_equation(std::mt19937_64& rng);

/// 1–3 equations over 2–4 integer variables, same coefficient and bound
/// ranges, interval domains within [−10..10].
Csp random_lineq(std::mt19937_64& rng);

/// x = y, x = 2y over x, y ∈ [0, 100] (rational boxes).
Csp davis_instance();

/// Result of applying the real rule to the constraints of csp in turn.
struct AlternatingRun {
    std::size_t relevant_steps = 0;
    bool widths_strictly_decreasing = true;
    Boxes final_boxes;
};

/// Cycles through the equalities of csp applying the real rule, starting
/// from the first one whose application is relevant, for `steps` applications.
AlternatingRun alternate_r_linear_equality(const Csp& csp, std::size_t steps);

/// (T1i) real rule conclusions are failed or arc consistent.
SuiteResult suite_arc_consistency(const SuiteConfig& config);
/// (T1ii) a second application of the real rule is never relevant.
SuiteResult suite_idempotence(const SuiteConfig& config);
/// (T1iii) the davis instance never reaches a fixpoint.
SuiteResult suite_non_termination(const SuiteConfig& config);
/// (T2) integer LINEQ closed under LIN_EQ is failed or interval consistent.
SuiteResult suite_interval_consistency(const SuiteConfig& config);

std::vector<SuiteResult> theorem_suite(const SuiteConfig& config = {});

}  // namespace propkit
