#include "propkit/csp.hpp"

#include <algorithm>

#include "propkit/error.hpp"

namespace propkit {

VarId Csp::add_variable(std::string name, Domain domain) {
    if (find(name)) throw Error("variable '" + name + "' declared twice");
    names_.push_back(std::move(name));
    domains_.push_back(std::move(domain));
    return VarId{static_cast<std::uint32_t>(names_.size() - 1)};
}

std::string Csp::next_fresh_name() const { return std::string(kFreshPrefix) + std::to_string(fresh_counter_); }

VarId Csp::add_fresh_variable(Domain domain) {
    auto v = add_variable(next_fresh_name(), std::move(domain));
    ++fresh_counter_;
    return v;
}

std::optional<VarId> Csp::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return VarId{static_cast<std::uint32_t>(i)};
    return std::nullopt;
}

bool Csp::add_constraint(Constraint c) {
    for (auto v : c.scope())
        if (v.index >= names_.size()) throw Error("constraint mentions unknown variable #" + std::to_string(v.index));
    return constraints_.insert(std::move(c)).second;
}

bool Csp::is_solved() const {
    return constraints_.empty() && std::none_of(domains_.begin(), domains_.end(), [](const Domain& d) { return d.empty(); });
}

bool Csp::is_failed() const {
    if (std::any_of(domains_.begin(), domains_.end(), [](const Domain& d) { return d.empty(); })) return true;
    return std::any_of(constraints_.begin(), constraints_.end(), [](const Constraint& c) { return c.is_false(); });
}

bool Csp::has_real_domains() const {
    return std::any_of(domains_.begin(), domains_.end(), [](const Domain& d) { return d.is_real(); });
}

Csp Csp::without_solved() const {
    Csp out = *this;
    for (auto it = out.constraints_.begin(); it != out.constraints_.end();) {
        if (is_solved_constraint(*it, domains_))
            it = out.constraints_.erase(it);
        else
            ++it;
    }
    return out;
}

bool operator==(const Csp& a, const Csp& b) {
    return a.names_ == b.names_ && a.domains_ == b.domains_ && a.constraints_ == b.constraints_;
}

namespace {

bool all_integer_nonempty(const std::vector<VarId>& scope, std::span<const Domain> doms) {
    return std::all_of(scope.begin(), scope.end(), [&](VarId v) {
        const Domain& d = doms[v.index];
        return d.is_integer() && !d.empty();
    });
}

// Count of list positions certainly equal to the value (same singleton) and
// of positions that may equal it (intersecting domains).
std::pair<std::size_t, std::size_t> match_bounds(const std::vector<VarId>& list, VarId value, std::span<const Domain> doms) {
    const Domain& z = doms[value.index];
    std::size_t sure = 0, maybe = 0;
    for (auto y : list) {
        const Domain& d = doms[y.index];
        if (d.disjoint(z)) continue;
        ++maybe;
        if (d.is_singleton() && z.is_singleton()) ++sure;
    }
    return {sure, maybe};
}

}  // namespace

bool is_solved_constraint(const Constraint& c, std::span<const Domain> doms) {
    if (c.is_true()) return true;
    if (c.is_false()) return false;
    auto scope = c.scope();
    if (!all_integer_nonempty(scope, doms)) return false;

    if (auto* p = c.get_if<LinLeq>()) return term_range(p->form.terms, doms).hi <= p->form.bound;
    if (auto* p = c.get_if<LinEq>()) {
        auto r = term_range(p->form.terms, doms);
        return r.lo == p->form.bound && r.hi == p->form.bound;
    }
    if (auto* p = c.get_if<VarDiseqVar>()) return p->x != p->y && doms[p->x.index].disjoint(doms[p->y.index]);
    if (auto* p = c.get_if<VarDiseqConst>()) return !doms[p->x.index].contains(p->c);
    if (auto* p = c.get_if<GenDiseq>()) {
        auto l = term_range(p->lhs.terms, doms);
        auto r = term_range(p->rhs.terms, doms);
        using W = __int128;
        W lc = p->lhs.constant, rc = p->rhs.constant;
        return W(l.hi) + lc < W(r.lo) + rc || W(r.hi) + rc < W(l.lo) + lc;
    }
    if (auto* p = c.get_if<Exactly>()) {
        const Domain& x = doms[p->count.index];
        auto [sure, maybe] = match_bounds(p->list, p->value, doms);
        return sure == maybe && x.is_singleton() && x.value() == static_cast<std::int64_t>(sure);
    }
    if (auto* p = c.get_if<Atmost>()) {
        auto [sure, maybe] = match_bounds(p->list, p->value, doms);
        return static_cast<std::int64_t>(maybe) <= doms[p->count.index].min();
    }
    if (auto* p = c.get_if<AbsDiffEq>()) {
        const Domain& x = doms[p->x.index];
        const Domain& y = doms[p->y.index];
        if (!x.is_singleton() || !y.is_singleton()) return false;
        __int128 d = __int128(x.value()) - y.value();
        return (d < 0 ? -d : d) == p->a;
    }
    return false;
}

bool is_variant(const Csp& a, const Csp& b) { return a.without_solved() == b.without_solved(); }

}  // namespace propkit
