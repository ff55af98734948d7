#include "propkit/constraint.hpp"

#include <algorithm>

#include "propkit/checked.hpp"

namespace propkit {

namespace {

std::int64_t evaluate(const std::vector<Term>& terms, std::span<const std::int64_t> values) {
    std::int64_t s = 0;
    for (const auto& t : terms) s = checked::add(s, checked::mul(t.coeff, values[t.var.index]));
    return s;
}

std::int64_t evaluate(const AffineExpr& e, std::span<const std::int64_t> values) {
    return checked::add(evaluate(e.terms, values), e.constant);
}

void push_unique(std::vector<VarId>& out, VarId v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

}  // namespace

Constraint Constraint::leq(LinearForm form) {
    if (form.terms.empty()) return form.bound >= 0 ? truth() : falsity();
    return Constraint(LinLeq{std::move(form)});
}

Constraint Constraint::eq(LinearForm form) {
    if (form.terms.empty()) return form.bound == 0 ? truth() : falsity();
    return Constraint(LinEq{std::move(form)});
}

Constraint Constraint::diseq(VarId x, VarId y) {
    if (y < x) std::swap(x, y);
    return Constraint(VarDiseqVar{x, y});
}

Constraint Constraint::diseq(const AffineExpr& lhs, const AffineExpr& rhs) {
    if (lhs.is_constant() && rhs.is_constant()) return lhs.constant != rhs.constant ? truth() : falsity();
    if (lhs.is_variable() && rhs.is_variable()) return diseq(lhs.terms[0].var, rhs.terms[0].var);
    if (lhs.is_variable() && rhs.is_constant()) return diseq(lhs.terms[0].var, rhs.constant);
    if (lhs.is_constant() && rhs.is_variable()) return diseq(rhs.terms[0].var, lhs.constant);
    return Constraint(GenDiseq{lhs, rhs});
}

Constraint Constraint::abs_diff(VarId x, VarId y, std::int64_t a) {
    if (a < 0) return falsity();
    return Constraint(AbsDiffEq{x, y, a});
}

std::vector<VarId> Constraint::scope() const {
    std::vector<VarId> out;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, LinLeq> || std::is_same_v<T, LinEq>) {
                for (const auto& t : c.form.terms) push_unique(out, t.var);
            } else if constexpr (std::is_same_v<T, VarDiseqVar>) {
                push_unique(out, c.x);
                push_unique(out, c.y);
            } else if constexpr (std::is_same_v<T, VarDiseqConst>) {
                out.push_back(c.x);
            } else if constexpr (std::is_same_v<T, GenDiseq>) {
                for (const auto& t : c.lhs.terms) push_unique(out, t.var);
                for (const auto& t : c.rhs.terms) push_unique(out, t.var);
            } else if constexpr (std::is_same_v<T, Exactly> || std::is_same_v<T, Atmost>) {
                push_unique(out, c.count);
                for (auto v : c.list) push_unique(out, v);
                push_unique(out, c.value);
            } else if constexpr (std::is_same_v<T, AbsDiffEq>) {
                push_unique(out, c.x);
                push_unique(out, c.y);
            }
        },
        rep_);
    return out;
}

bool Constraint::mentions(VarId v) const {
    auto s = scope();
    return std::find(s.begin(), s.end(), v) != s.end();
}

bool Constraint::satisfied(std::span<const std::int64_t> values) const {
    return std::visit(
        [&](const auto& c) -> bool {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, LinLeq>) {
                return evaluate(c.form.terms, values) <= c.form.bound;
            } else if constexpr (std::is_same_v<T, LinEq>) {
                return evaluate(c.form.terms, values) == c.form.bound;
            } else if constexpr (std::is_same_v<T, VarDiseqVar>) {
                return values[c.x.index] != values[c.y.index];
            } else if constexpr (std::is_same_v<T, VarDiseqConst>) {
                return values[c.x.index] != c.c;
            } else if constexpr (std::is_same_v<T, GenDiseq>) {
                return evaluate(c.lhs, values) != evaluate(c.rhs, values);
            } else if constexpr (std::is_same_v<T, Exactly> || std::is_same_v<T, Atmost>) {
                std::int64_t n = 0;
                for (auto v : c.list) n += values[v.index] == values[c.value.index];
                if constexpr (std::is_same_v<T, Exactly>)
                    return n == values[c.count.index];
                else
                    return n <= values[c.count.index];
            } else if constexpr (std::is_same_v<T, AbsDiffEq>) {
                std::int64_t d = checked::sub(values[c.x.index], values[c.y.index]);
                return (d < 0 ? checked::neg(d) : d) == c.a;
            } else if constexpr (std::is_same_v<T, TrueConstraint>) {
                return true;
            } else {
                return false;
            }
        },
        rep_);
}

}  // namespace propkit
