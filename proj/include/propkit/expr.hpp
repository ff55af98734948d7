#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "propkit/constraint.hpp"
#include "propkit/linear.hpp"

namespace propkit {

enum class RelOp { Lt, Le, Eq, Ne, Ge, Gt };

std::string_view to_string(RelOp op);

/// Expression tree produced by the model parser. Only linear trees normalize:
/// every product needs at least one constant operand.
class Expr {
public:
    enum class Op { Const, Var, Neg, Add, Sub, Mul };

    static Expr constant(std::int64_t v);
    static Expr var(VarId v);
    static Expr neg(Expr e);
    static Expr add(Expr a, Expr b);
    static Expr sub(Expr a, Expr b);
    static Expr mul(Expr a, Expr b);

    Op op() const;

    /// Collects like terms; throws NormalizationError on var·var products and
    /// OverflowError when a coefficient leaves 64-bit range.
    AffineExpr to_affine() const;
    /// Direct evaluation of the tree, independent of to_affine().
    std::int64_t evaluate(std::span<const std::int64_t> values) const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Brings `lhs op rhs` into canonical constraints:
///   s ≤ t → LinLeq(s − t ≤ 0)        s ≥ t → LinLeq(t − s ≤ 0)
///   s < t → LinLeq(s − t ≤ −1)       s > t → LinLeq(t − s ≤ −1)
///   s = t → LinEq(s − t = 0)         s ≠ t → simple disequality or GenDiseq
/// with constants moved into the bound. Variable-free results become ⊤ or ⊥.
std::vector<Constraint> normalize(const Expr& lhs, RelOp op, const Expr& rhs);
std::vector<Constraint> normalize(const AffineExpr& lhs, RelOp op, const AffineExpr& rhs);

}  // namespace propkit
