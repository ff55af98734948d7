#include "propkit/expr.hpp"

#include "propkit/checked.hpp"
#include "propkit/error.hpp"

namespace propkit {

struct Expr::Node {
    Op op;
    std::int64_t value = 0;
    VarId var;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

std::string_view to_string(RelOp op) {
    switch (op) {
        case RelOp::Lt: return "<";
        case RelOp::Le: return "<=";
        case RelOp::Eq: return "=";
        case RelOp::Ne: return "!=";
        case RelOp::Ge: return ">=";
        case RelOp::Gt: return ">";
    }
    return "?";
}

Expr Expr::constant(std::int64_t v) { return Expr(std::make_shared<const Node>(Node{Op::Const, v, {}, {}, {}})); }
Expr Expr::var(VarId v) { return Expr(std::make_shared<const Node>(Node{Op::Var, 0, v, {}, {}})); }
Expr Expr::neg(Expr e) { return Expr(std::make_shared<const Node>(Node{Op::Neg, 0, {}, e.node_, {}})); }
Expr Expr::add(Expr a, Expr b) { return Expr(std::make_shared<const Node>(Node{Op::Add, 0, {}, a.node_, b.node_})); }
Expr Expr::sub(Expr a, Expr b) { return Expr(std::make_shared<const Node>(Node{Op::Sub, 0, {}, a.node_, b.node_})); }
Expr Expr::mul(Expr a, Expr b) { return Expr(std::make_shared<const Node>(Node{Op::Mul, 0, {}, a.node_, b.node_})); }

Expr::Op Expr::op() const { return node_->op; }

AffineExpr Expr::to_affine() const {
    const Node& n = *node_;
    switch (n.op) {
        case Op::Const: return AffineExpr::of_const(n.value);
        case Op::Var: return AffineExpr::of_var(n.var);
        case Op::Neg: return Expr(n.a).to_affine().negated();
        case Op::Add: {
            auto e = Expr(n.a).to_affine();
            return e += Expr(n.b).to_affine();
        }
        case Op::Sub: {
            auto e = Expr(n.a).to_affine();
            return e -= Expr(n.b).to_affine();
        }
        case Op::Mul: {
            auto l = Expr(n.a).to_affine();
            auto r = Expr(n.b).to_affine();
            if (l.is_constant()) return r.scale(l.constant);
            if (r.is_constant()) return l.scale(r.constant);
            throw NormalizationError("nonlinear product of variables");
        }
    }
    throw Error("bad expression node");
}

std::int64_t Expr::evaluate(std::span<const std::int64_t> values) const {
    const Node& n = *node_;
    switch (n.op) {
        case Op::Const: return n.value;
        case Op::Var: return values[n.var.index];
        case Op::Neg: return checked::neg(Expr(n.a).evaluate(values));
        case Op::Add: return checked::add(Expr(n.a).evaluate(values), Expr(n.b).evaluate(values));
        case Op::Sub: return checked::sub(Expr(n.a).evaluate(values), Expr(n.b).evaluate(values));
        case Op::Mul: return checked::mul(Expr(n.a).evaluate(values), Expr(n.b).evaluate(values));
    }
    throw Error("bad expression node");
}

std::vector<Constraint> normalize(const Expr& lhs, RelOp op, const Expr& rhs) {
    return normalize(lhs.to_affine(), op, rhs.to_affine());
}

std::vector<Constraint> normalize(const AffineExpr& lhs, RelOp op, const AffineExpr& rhs) {
    if (op == RelOp::Ne) return {Constraint::diseq(lhs, rhs)};
    AffineExpr d = (op == RelOp::Ge || op == RelOp::Gt) ? rhs : lhs;
    d -= (op == RelOp::Ge || op == RelOp::Gt) ? lhs : rhs;
    LinearForm form{d.terms, checked::neg(d.constant)};
    if (op == RelOp::Lt || op == RelOp::Gt) form.bound = checked::sub(form.bound, 1);
    if (op == RelOp::Eq) return {Constraint::eq(std::move(form))};
    return {Constraint::leq(std::move(form))};
}

}  // namespace propkit
