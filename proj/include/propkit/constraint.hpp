#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "propkit/linear.hpp"

namespace propkit {

/// form ≤ bound
struct LinLeq {
    LinearForm form;
    auto operator<=>(const LinLeq&) const = default;
};

/// form = bound
struct LinEq {
    LinearForm form;
    auto operator<=>(const LinEq&) const = default;
};

/// x ≠ y (stored with x ≤ y by index)
struct VarDiseqVar {
    VarId x;
    VarId y;
    auto operator<=>(const VarDiseqVar&) const = default;
};

/// x ≠ c
struct VarDiseqConst {
    VarId x;
    std::int64_t c = 0;
    auto operator<=>(const VarDiseqConst&) const = default;
};

/// s ≠ t with at least one side neither a variable nor a constant. Exists only
/// until lifted into simple disequalities over fresh variables.
struct GenDiseq {
    AffineExpr lhs;
    AffineExpr rhs;
    auto operator<=>(const GenDiseq&) const = default;
};

/// Exactly `count` elements of `list` equal `value`.
struct Exactly {
    VarId count;
    std::vector<VarId> list;
    VarId value;
    auto operator<=>(const Exactly&) const = default;
};

/// At most `count` elements of `list` equal `value`.
struct Atmost {
    VarId count;
    std::vector<VarId> list;
    VarId value;
    auto operator<=>(const Atmost&) const = default;
};

/// |x − y| = a, a ≥ 0
struct AbsDiffEq {
    VarId x;
    VarId y;
    std::int64_t a = 0;
    auto operator<=>(const AbsDiffEq&) const = default;
};

struct TrueConstraint {
    auto operator<=>(const TrueConstraint&) const = default;
};

struct FalseConstraint {
    auto operator<=>(const FalseConstraint&) const = default;
};

enum class ConstraintKind {
    LinLeq,
    LinEq,
    VarDiseqVar,
    VarDiseqConst,
    GenDiseq,
    Exactly,
    Atmost,
    AbsDiffEq,
    True,
    False,
};

/// A constraint in canonical form. Identity is structural, so two constraints
/// compare equal exactly when their normalized representations match.
class Constraint {
public:
    using Rep = std::variant<LinLeq, LinEq, VarDiseqVar, VarDiseqConst, GenDiseq, Exactly, Atmost,
                             AbsDiffEq, TrueConstraint, FalseConstraint>;

    Constraint() : rep_(TrueConstraint{}) {}

    /// form ≤ bound; a form without variables collapses to ⊤ or ⊥.
    static Constraint leq(LinearForm form);
    /// form = bound; a form without variables collapses to ⊤ or ⊥.
    static Constraint eq(LinearForm form);
    /// form = bound without collapsing; only used to build the raw `x = x`
    /// residue handled by the EQUALITY 2 rule.
    static Constraint raw_eq(LinearForm form) { return Constraint(LinEq{std::move(form)}); }
    static Constraint diseq(VarId x, VarId y);
    static Constraint diseq(VarId x, std::int64_t c) { return Constraint(VarDiseqConst{x, c}); }
    /// s ≠ t, simplified to a simple disequality or ⊤/⊥ where possible.
    static Constraint diseq(const AffineExpr& lhs, const AffineExpr& rhs);
    static Constraint exactly(VarId count, std::vector<VarId> list, VarId value) {
        return Constraint(Exactly{count, std::move(list), value});
    }
    static Constraint atmost(VarId count, std::vector<VarId> list, VarId value) {
        return Constraint(Atmost{count, std::move(list), value});
    }
    /// |x − y| = a; ⊥ for negative a.
    static Constraint abs_diff(VarId x, VarId y, std::int64_t a);
    static Constraint truth() { return Constraint(TrueConstraint{}); }
    static Constraint falsity() { return Constraint(FalseConstraint{}); }

    ConstraintKind kind() const { return static_cast<ConstraintKind>(rep_.index()); }
    bool is_true() const { return kind() == ConstraintKind::True; }
    bool is_false() const { return kind() == ConstraintKind::False; }

    template <class T>
    const T& as() const { return std::get<T>(rep_); }
    template <class T>
    const T* get_if() const { return std::get_if<T>(&rep_); }
    const Rep& rep() const { return rep_; }

    /// Distinct variables in order of first occurrence.
    std::vector<VarId> scope() const;
    bool mentions(VarId v) const;

    /// Truth value under a full assignment indexed by VarId.
    bool satisfied(std::span<const std::int64_t> values) const;

    friend auto operator<=>(const Constraint&, const Constraint&) = default;
    friend bool operator==(const Constraint&, const Constraint&) = default;

private:
    template <class T>
    explicit Constraint(T rep) : rep_(std::move(rep)) {}

    Rep rep_;
};

}  // namespace propkit
