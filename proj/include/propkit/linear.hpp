#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace propkit {

class Domain;

/// Dense index of a variable inside one Csp.
struct VarId {
    std::uint32_t index = 0;
    auto operator<=>(const VarId&) const = default;
};

struct Term {
    VarId var;
    std::int64_t coeff = 0;
    auto operator<=>(const Term&) const = default;
};

/// Σ coeffᵢ·xᵢ + constant with distinct variables and nonzero coefficients,
/// terms sorted by variable.
struct AffineExpr {
    std::vector<Term> terms;
    std::int64_t constant = 0;

    static AffineExpr of_var(VarId v) { return {{Term{v, 1}}, 0}; }
    static AffineExpr of_const(std::int64_t c) { return {{}, c}; }

    bool is_constant() const { return terms.empty(); }
    /// A bare variable: one term with coefficient 1 and no constant.
    bool is_variable() const { return terms.size() == 1 && terms[0].coeff == 1 && constant == 0; }

    AffineExpr& operator+=(const AffineExpr& o);
    AffineExpr& operator-=(const AffineExpr& o);
    AffineExpr& scale(std::int64_t k);
    AffineExpr negated() const;

    auto operator<=>(const AffineExpr&) const = default;
};

/// Left-hand side Σ coeffᵢ·xᵢ of a normal-form constraint `form op bound`.
/// POS are the terms with positive coefficient, NEG those with negative; the
/// aᵢ of the bound formulas is |coeff|.
struct LinearForm {
    std::vector<Term> terms;
    std::int64_t bound = 0;

    bool contains(VarId v) const;
    std::int64_t coeff(VarId v) const;

    auto operator<=>(const LinearForm&) const = default;
};

/// Minimum and maximum of Σ coeffᵢ·xᵢ over non-empty integer domains.
struct IntRange {
    std::int64_t lo;
    std::int64_t hi;
};
IntRange term_range(std::span<const Term> terms, std::span<const Domain> doms);

}  // namespace propkit
