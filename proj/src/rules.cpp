#include "propkit/rules.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>

#include "propkit/checked.hpp"
#include "propkit/error.hpp"

namespace propkit {

namespace {

constexpr std::array<std::pair<RuleId, std::string_view>, 20> kRuleNames{{
    {RuleId::LIN_INEQ_1, "LIN_INEQ_1"},
    {RuleId::LIN_INEQ_2, "LIN_INEQ_2"},
    {RuleId::LIN_EQ, "LIN_EQ"},
    {RuleId::LIN_EQ_UNARY, "LIN_EQ_UNARY"},
    {RuleId::EQUALITY_1, "EQUALITY_1"},
    {RuleId::EQUALITY_2, "EQUALITY_2"},
    {RuleId::DISEQ_1, "DISEQ_1"},
    {RuleId::DISEQ_2, "DISEQ_2"},
    {RuleId::DISEQ_3, "DISEQ_3"},
    {RuleId::SIMPLE_DISEQ_1, "SIMPLE_DISEQ_1"},
    {RuleId::SIMPLE_DISEQ_2, "SIMPLE_DISEQ_2"},
    {RuleId::SIMPLE_DISEQ_3, "SIMPLE_DISEQ_3"},
    {RuleId::DISEQ_LIFT, "DISEQ_LIFT"},
    {RuleId::SUBSTITUTION, "SUBSTITUTION"},
    {RuleId::DELETION, "DELETION"},
    {RuleId::EXACTLY_1, "EXACTLY_1"},
    {RuleId::EXACTLY_2, "EXACTLY_2"},
    {RuleId::EXACTLY_3, "EXACTLY_3"},
    {RuleId::EXACTLY_4, "EXACTLY_4"},
    {RuleId::ATMOST_TO_EXACTLY, "ATMOST_TO_EXACTLY"},
}};

constexpr std::int64_t kMinInt = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMaxInt = std::numeric_limits<std::int64_t>::max();

bool usable(const Domain& d) { return d.is_integer() && !d.empty(); }

bool all_usable(const Csp& csp, const Constraint& c) {
    auto s = c.scope();
    return std::all_of(s.begin(), s.end(), [&](VarId v) { return usable(csp.domain(v)); });
}

// Records v ↦ d in delta when it differs from v's current domain.
void narrow(Delta& delta, const Csp& csp, VarId v, Domain d) {
    const Domain& old = csp.domain(v);
    if (d == old) return;
    delta.domain_changes[v] = DomainChange{old, std::move(d)};
}

// Fresh variable number k (0-based) of this application.
VarId fresh(Delta& delta, const Csp& csp, Domain d) {
    std::uint32_t k = static_cast<std::uint32_t>(delta.fresh_vars.size());
    VarId v{static_cast<std::uint32_t>(csp.num_vars()) + k};
    delta.fresh_vars.push_back(FreshVar{v, std::string(kFreshPrefix) + std::to_string(csp.fresh_counter() + k), std::move(d)});
    return v;
}

std::optional<Delta> narrow_linear(const Csp& csp, const LinearForm& form, const std::vector<Bounds>& b) {
    Delta d;
    for (std::size_t j = 0; j < form.terms.size(); ++j) {
        VarId v = form.terms[j].var;
        narrow(d, csp, v, csp.domain(v).clamp(b[j].lo, b[j].hi));
    }
    return d;
}

bool any_set(const Csp& csp, const LinearForm& form) {
    return std::any_of(form.terms.begin(), form.terms.end(), [&](const Term& t) { return csp.domain(t.var).is_set(); });
}

// --- linear rules ---------------------------------------------------------

std::optional<Delta> lin_ineq(const Csp& csp, const Target& t, bool sets) {
    auto* p = t.constraint.get_if<LinLeq>();
    if (!p || !all_usable(csp, t.constraint) || any_set(csp, p->form) != sets) return std::nullopt;
    return narrow_linear(csp, p->form, lin_ineq_bounds(p->form, csp.domains()));
}

std::optional<Delta> lin_eq(const Csp& csp, const Target& t, bool unary) {
    auto* p = t.constraint.get_if<LinEq>();
    if (!p || p->form.terms.empty() || (p->form.terms.size() == 1) != unary || !all_usable(csp, t.constraint))
        return std::nullopt;
    if (!unary) return narrow_linear(csp, p->form, lin_eq_bounds(p->form, csp.domains()));
    // a·x = b  →  x ∈ {b/a} ∩ D
    const Term& term = p->form.terms[0];
    Delta d;
    const Domain& dom = csp.domain(term.var);
    if (p->form.bound % term.coeff != 0)
        narrow(d, csp, term.var, dom.clamp(1, 0));
    else {
        std::int64_t v = p->form.bound / term.coeff;
        narrow(d, csp, term.var, dom.clamp(v, v));
    }
    return d;
}

// --- equality ---------------------------------------------------------------

std::optional<Application> equality(const Csp& csp, const Constraint& c) {
    auto* p = c.get_if<LinEq>();
    if (!p) return std::nullopt;
    const auto& terms = p->form.terms;
    if (terms.empty() && p->form.bound == 0) {
        Delta d;
        d.removed.insert(c);
        return Application{RuleId::EQUALITY_2, std::move(d)};
    }
    if (terms.size() != 2 || p->form.bound != 0 || terms[0].coeff != -terms[1].coeff || std::abs(terms[0].coeff) != 1)
        return std::nullopt;
    if (!all_usable(csp, c)) return std::nullopt;
    VarId x = terms[0].var, y = terms[1].var;
    Domain both = csp.domain(x).intersect(csp.domain(y));
    Delta d;
    narrow(d, csp, x, both);
    narrow(d, csp, y, both);
    if (both.is_singleton()) d.removed.insert(c);
    return Application{RuleId::EQUALITY_1, std::move(d)};
}

// --- disequalities ------------------------------------------------------------

// x ≠ a where y = a is known: the rule that shrinks D_x, if any.
std::optional<Application> remove_value(const Csp& csp, VarId x, std::int64_t a) {
    const Domain& dx = csp.domain(x);
    Delta d;
    if (dx.is_set()) {
        if (!dx.contains(a)) return std::nullopt;
        narrow(d, csp, x, dx.remove(a));
        return Application{RuleId::DISEQ_3, std::move(d)};
    }
    if (dx.min() == a) {
        narrow(d, csp, x, dx.remove(a));
        return Application{RuleId::SIMPLE_DISEQ_2, std::move(d)};
    }
    if (dx.max() == a) {
        narrow(d, csp, x, dx.remove(a));
        return Application{RuleId::SIMPLE_DISEQ_3, std::move(d)};
    }
    return std::nullopt;
}

// --- cardinality ----------------------------------------------------------------

std::optional<Delta> exactly_1(const Csp& csp, const Constraint& c) {
    auto* p = c.get_if<Exactly>();
    if (!p || !usable(csp.domain(p->count))) return std::nullopt;
    const Domain& dx = csp.domain(p->count);
    Delta d;
    if (p->list.empty()) {
        // completion for the empty list: no element can match
        narrow(d, csp, p->count, dx.clamp(0, 0));
        d.removed.insert(c);
    } else {
        narrow(d, csp, p->count, dx.clamp(kMinInt, static_cast<std::int64_t>(p->list.size())));
    }
    return d;
}

std::optional<Delta> exactly_2(const Csp& csp, const Constraint& c) {
    auto* p = c.get_if<Exactly>();
    if (!p || p->list.empty() || !all_usable(csp, c)) return std::nullopt;
    const Domain& dz = csp.domain(p->value);
    for (std::size_t i = 0; i < p->list.size(); ++i) {
        if (!csp.domain(p->list[i]).disjoint(dz)) continue;
        auto rest = p->list;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        Delta d;
        d.removed.insert(c);
        d.added.insert(Constraint::exactly(p->count, std::move(rest), p->value));
        return d;
    }
    return std::nullopt;
}

std::optional<Delta> exactly_3(const Csp& csp, const Constraint& c) {
    auto* p = c.get_if<Exactly>();
    if (!p || p->list.empty() || !all_usable(csp, c)) return std::nullopt;
    const Domain& dz = csp.domain(p->value);
    if (!dz.is_singleton()) return std::nullopt;
    for (std::size_t i = 0; i < p->list.size(); ++i) {
        const Domain& di = csp.domain(p->list[i]);
        if (!di.is_singleton() || di.value() != dz.value()) continue;
        Delta d;
        VarId u = fresh(d, csp, csp.domain(p->count).decrement_positive());
        auto rest = p->list;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        d.removed.insert(c);
        d.added.insert(Constraint::exactly(u, std::move(rest), p->value));
        // u = x − 1
        AffineExpr diff = AffineExpr::of_var(u);
        diff -= AffineExpr::of_var(p->count);
        d.added.insert(Constraint::eq(LinearForm{diff.terms, -1}));
        return d;
    }
    return std::nullopt;
}

std::optional<Delta> exactly_4(const Csp& csp, const Constraint& c) {
    auto* p = c.get_if<Exactly>();
    if (!p || p->list.empty()) return std::nullopt;
    const Domain& dx = csp.domain(p->count);
    if (!usable(dx) || !dx.is_singleton() || dx.value() != 0) return std::nullopt;
    Delta d;
    d.removed.insert(c);
    for (auto y : p->list) d.added.insert(Constraint::diseq(y, p->value));
    return d;
}

// --- rule objects -------------------------------------------------------------------

using ApplyFn = std::function<std::optional<Delta>(const Csp&, const Target&)>;

class SimpleRule : public Rule {
public:
    SimpleRule(RuleId id, std::vector<ConstraintKind> kinds, ApplyFn fn)
        : id_(id), kinds_(std::move(kinds)), fn_(std::move(fn)) {}

    RuleId id() const override { return id_; }
    bool handles(ConstraintKind k) const override { return std::find(kinds_.begin(), kinds_.end(), k) != kinds_.end(); }
    std::optional<Delta> apply(const Csp& csp, const Target& t) const override {
        if (t.var || !csp.has_constraint(t.constraint)) return std::nullopt;
        return fn_(csp, t);
    }

private:
    RuleId id_;
    std::vector<ConstraintKind> kinds_;
    ApplyFn fn_;
};

bool is_cardinality(ConstraintKind k) {
    return k == ConstraintKind::Exactly || k == ConstraintKind::Atmost || k == ConstraintKind::AbsDiffEq;
}

bool fixed(const Domain& d) { return usable(d) && d.is_singleton(); }

class SubstitutionRule : public Rule {
public:
    RuleId id() const override { return RuleId::SUBSTITUTION; }
    bool handles(ConstraintKind k) const override {
        return k != ConstraintKind::True && k != ConstraintKind::False;
    }
    std::vector<Target> targets(const Csp& csp, const Constraint& c) const override {
        std::vector<Target> out;
        if (!handles(c.kind())) return out;
        auto scope = c.scope();
        if (is_cardinality(c.kind())) {
            if (!scope.empty() && std::all_of(scope.begin(), scope.end(), [&](VarId v) { return fixed(csp.domain(v)); }))
                out.push_back({c, scope.front()});
            return out;
        }
        for (auto v : scope)
            if (fixed(csp.domain(v))) out.push_back({c, v});
        return out;
    }
    std::optional<Delta> apply(const Csp& csp, const Target& t) const override {
        if (!t.var || !csp.has_constraint(t.constraint) || !fixed(csp.domain(*t.var))) return std::nullopt;
        auto r = substitute(csp, t.constraint, *t.var, csp.domain(*t.var).value());
        if (!r) return std::nullopt;
        Delta d;
        d.removed.insert(t.constraint);
        d.added.insert(*r);
        return d;
    }
};

using K = ConstraintKind;

std::vector<std::unique_ptr<Rule>> make_rules() {
    std::vector<std::unique_ptr<Rule>> r;
    auto add = [&](RuleId id, std::vector<ConstraintKind> kinds, ApplyFn fn) {
        r.push_back(std::make_unique<SimpleRule>(id, std::move(kinds), std::move(fn)));
    };
    auto diseq_rule = [&](RuleId id) {
        add(id, {K::VarDiseqVar, K::VarDiseqConst}, [id](const Csp& csp, const Target& t) -> std::optional<Delta> {
            auto app = apply_disequality(csp, t.constraint);
            if (!app || app->rule != id) return std::nullopt;
            return std::move(app->delta);
        });
    };
    auto equality_rule = [&](RuleId id) {
        add(id, {K::LinEq}, [id](const Csp& csp, const Target& t) -> std::optional<Delta> {
            auto app = apply_equality(csp, t.constraint);
            if (!app || app->rule != id) return std::nullopt;
            return std::move(app->delta);
        });
    };
    auto exactly_rule = [&](RuleId id, std::optional<Delta> (*fn)(const Csp&, const Constraint&)) {
        add(id, {K::Exactly}, [fn](const Csp& csp, const Target& t) { return fn(csp, t.constraint); });
    };

    add(RuleId::LIN_INEQ_1, {K::LinLeq}, [](const Csp& csp, const Target& t) { return lin_ineq(csp, t, false); });
    add(RuleId::LIN_INEQ_2, {K::LinLeq}, [](const Csp& csp, const Target& t) { return lin_ineq(csp, t, true); });
    add(RuleId::LIN_EQ, {K::LinEq}, [](const Csp& csp, const Target& t) { return lin_eq(csp, t, false); });
    add(RuleId::LIN_EQ_UNARY, {K::LinEq}, [](const Csp& csp, const Target& t) { return lin_eq(csp, t, true); });
    equality_rule(RuleId::EQUALITY_1);
    equality_rule(RuleId::EQUALITY_2);
    diseq_rule(RuleId::DISEQ_1);
    diseq_rule(RuleId::DISEQ_2);
    diseq_rule(RuleId::DISEQ_3);
    diseq_rule(RuleId::SIMPLE_DISEQ_1);
    diseq_rule(RuleId::SIMPLE_DISEQ_2);
    diseq_rule(RuleId::SIMPLE_DISEQ_3);
    add(RuleId::DISEQ_LIFT, {K::GenDiseq}, [](const Csp& csp, const Target& t) { return lift_disequality(csp, t.constraint); });
    r.push_back(std::make_unique<SubstitutionRule>());
    add(RuleId::DELETION, {K::True}, [](const Csp&, const Target& t) -> std::optional<Delta> {
        Delta d;
        d.removed.insert(t.constraint);
        return d;
    });
    exactly_rule(RuleId::EXACTLY_1, exactly_1);
    exactly_rule(RuleId::EXACTLY_2, exactly_2);
    exactly_rule(RuleId::EXACTLY_3, exactly_3);
    exactly_rule(RuleId::EXACTLY_4, exactly_4);
    add(RuleId::ATMOST_TO_EXACTLY, {K::Atmost}, [](const Csp& csp, const Target& t) { return apply_atmost(csp, t.constraint); });
    return r;
}

const std::vector<std::unique_ptr<Rule>>& registry() {
    static const auto rules = make_rules();
    return rules;
}

}  // namespace

std::string_view to_string(RuleId id) { return kRuleNames.at(static_cast<std::size_t>(id)).second; }

std::optional<RuleId> rule_id_from_string(std::string_view name) {
    for (const auto& [id, n] : kRuleNames)
        if (n == name) return id;
    return std::nullopt;
}

std::span<const RuleId> all_rule_ids() {
    static const auto ids = [] {
        std::array<RuleId, kRuleNames.size()> a{};
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = kRuleNames[i].first;
        return a;
    }();
    return ids;
}

bool is_reduction_rule(RuleId id) {
    switch (id) {
        case RuleId::DISEQ_LIFT:
        case RuleId::SUBSTITUTION:
        case RuleId::DELETION:
        case RuleId::EXACTLY_2:
        case RuleId::EXACTLY_3:
        case RuleId::EXACTLY_4:
        case RuleId::ATMOST_TO_EXACTLY:
            return false;
        default:
            return true;
    }
}

Csp apply_delta(const Csp& csp, const Delta& d) {
    Csp out = csp;
    for (const auto& f : d.fresh_vars) {
        if (f.var.index != out.num_vars() || f.name != out.next_fresh_name())
            throw Error("fresh variable " + f.name + " does not continue the variable sequence");
        out.add_fresh_variable(f.domain);
    }
    for (const auto& [v, ch] : d.domain_changes) out.set_domain(v, ch.after);
    for (const auto& c : d.removed) out.remove_constraint(c);
    for (const auto& c : d.added) out.add_constraint(c);
    return out;
}

std::vector<Target> Rule::targets(const Csp&, const Constraint& c) const {
    if (!handles(c.kind())) return {};
    return {Target{c, std::nullopt}};
}

const Rule& rule(RuleId id) { return *registry().at(static_cast<std::size_t>(id)); }

std::vector<const Rule*> all_rules() {
    std::vector<const Rule*> out;
    for (const auto& r : registry()) out.push_back(r.get());
    return out;
}

std::vector<const Rule*> rules_from_ids(std::span<const RuleId> ids) {
    std::vector<const Rule*> out;
    for (auto id : ids) out.push_back(&rule(id));
    return out;
}

std::vector<const Rule*> parse_rule_list(std::string_view csv) {
    std::vector<const Rule*> out;
    while (true) {
        auto comma = csv.find(',');
        auto name = csv.substr(0, comma);
        while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
        while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
        auto id = rule_id_from_string(name);
        if (!id) throw Error("unknown rule '" + std::string(name) + "'");
        if (std::find(out.begin(), out.end(), &rule(*id)) == out.end()) out.push_back(&rule(*id));
        if (comma == std::string_view::npos) break;
        csv.remove_prefix(comma + 1);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Per-term contribution of coeff·x at the minimising and maximising end.
struct Contribution {
    std::int64_t min;
    std::int64_t max;
};

std::vector<Contribution> contributions(const LinearForm& form, std::span<const Domain> doms) {
    std::vector<Contribution> out;
    for (const auto& t : form.terms) {
        const Domain& d = doms[t.var.index];
        if (!usable(d)) throw Error("linear bounds need non-empty integer domains");
        std::int64_t a = checked::mul(t.coeff, d.min());
        std::int64_t b = checked::mul(t.coeff, d.max());
        out.push_back({std::min(a, b), std::max(a, b)});
    }
    return out;
}

std::vector<Bounds> linear_bounds(const LinearForm& form, std::span<const Domain> doms, bool equality) {
    auto contrib = contributions(form, doms);
    std::int64_t total_min = 0, total_max = 0;
    for (const auto& c : contrib) {
        total_min = checked::add(total_min, c.min);
        total_max = checked::add(total_max, c.max);
    }
    std::vector<Bounds> out;
    for (std::size_t j = 0; j < form.terms.size(); ++j) {
        const Term& t = form.terms[j];
        const Domain& d = doms[t.var.index];
        std::int64_t lo = d.min(), hi = d.max();
        std::int64_t rest_min = checked::sub(total_min, contrib[j].min);
        std::int64_t rest_max = checked::sub(total_max, contrib[j].max);
        if (t.coeff > 0) {
            // α: a·x ≤ b − min(rest);  γ: a·x ≥ b − max(rest)
            hi = std::min(hi, checked::floor_div(checked::sub(form.bound, rest_min), t.coeff));
            if (equality) lo = std::max(lo, checked::ceil_div(checked::sub(form.bound, rest_max), t.coeff));
        } else {
            std::int64_t a = checked::neg(t.coeff);
            // β: a·x ≥ min(rest) − b;  δ: a·x ≤ max(rest) − b
            lo = std::max(lo, checked::ceil_div(checked::sub(rest_min, form.bound), a));
            if (equality) hi = std::min(hi, checked::floor_div(checked::sub(rest_max, form.bound), a));
        }
        out.push_back({lo, hi});
    }
    return out;
}

}  // namespace

std::vector<Bounds> lin_ineq_bounds(const LinearForm& form, std::span<const Domain> doms) {
    return linear_bounds(form, doms, false);
}

std::vector<Bounds> lin_eq_bounds(const LinearForm& form, std::span<const Domain> doms) {
    return linear_bounds(form, doms, true);
}

std::optional<Application> apply_equality(const Csp& csp, const Constraint& c) { return equality(csp, c); }

std::optional<Application> apply_disequality(const Csp& csp, const Constraint& c) {
    if (auto* p = c.get_if<VarDiseqVar>()) {
        const Domain& dx = csp.domain(p->x);
        const Domain& dy = csp.domain(p->y);
        if (!usable(dx) || !usable(dy)) return std::nullopt;
        if (p->x == p->y) {
            Delta d;
            narrow(d, csp, p->x, dx.clamp(1, 0));
            return Application{RuleId::DISEQ_1, std::move(d)};
        }
        if (dx.disjoint(dy)) {
            Delta d;
            d.removed.insert(c);
            return Application{dx.is_interval() && dy.is_interval() ? RuleId::SIMPLE_DISEQ_1 : RuleId::DISEQ_2, std::move(d)};
        }
        if (dy.is_singleton()) return remove_value(csp, p->x, dy.value());
        if (dx.is_singleton()) return remove_value(csp, p->y, dx.value());
        return std::nullopt;
    }
    if (auto* p = c.get_if<VarDiseqConst>()) {
        const Domain& dx = csp.domain(p->x);
        if (!usable(dx)) return std::nullopt;
        if (!dx.contains(p->c)) {
            Delta d;
            d.removed.insert(c);
            return Application{RuleId::DISEQ_2, std::move(d)};
        }
        return remove_value(csp, p->x, p->c);
    }
    return std::nullopt;
}

std::optional<Delta> lift_disequality(const Csp& csp, const Constraint& c) {
    auto* p = c.get_if<GenDiseq>();
    if (!p || !all_usable(csp, c)) return std::nullopt;
    Delta d;
    auto lift = [&](const AffineExpr& s) -> AffineExpr {
        if (s.is_variable() || s.is_constant()) return s;
        auto r = term_range(s.terms, csp.domains());
        VarId u = fresh(d, csp, Domain::interval(checked::add(r.lo, s.constant), checked::add(r.hi, s.constant)));
        // u − Σ = constant
        AffineExpr diff = AffineExpr::of_var(u);
        diff -= AffineExpr{s.terms, 0};
        d.added.insert(Constraint::eq(LinearForm{diff.terms, s.constant}));
        return AffineExpr::of_var(u);
    };
    AffineExpr lhs = lift(p->lhs);
    AffineExpr rhs = lift(p->rhs);
    if (d.fresh_vars.empty()) return std::nullopt;
    d.removed.insert(c);
    d.added.insert(Constraint::diseq(lhs, rhs));
    return d;
}

std::optional<Constraint> substitute(const Csp& csp, const Constraint& c, VarId x, std::int64_t value) {
    if (!c.mentions(x)) return std::nullopt;
    auto subst_affine = [&](AffineExpr e) {
        for (auto it = e.terms.begin(); it != e.terms.end(); ++it) {
            if (it->var != x) continue;
            e.constant = checked::add(e.constant, checked::mul(it->coeff, value));
            e.terms.erase(it);
            break;
        }
        return e;
    };
    auto subst_form = [&](const LinearForm& f) {
        AffineExpr e = subst_affine(AffineExpr{f.terms, 0});
        return LinearForm{e.terms, checked::sub(f.bound, e.constant)};
    };
    if (auto* p = c.get_if<LinLeq>()) return Constraint::leq(subst_form(p->form));
    if (auto* p = c.get_if<LinEq>()) return Constraint::eq(subst_form(p->form));
    if (auto* p = c.get_if<VarDiseqVar>()) {
        if (p->x == p->y) return Constraint::falsity();
        return Constraint::diseq(p->x == x ? p->y : p->x, value);
    }
    if (auto* p = c.get_if<VarDiseqConst>()) return value != p->c ? Constraint::truth() : Constraint::falsity();
    if (auto* p = c.get_if<GenDiseq>()) return Constraint::diseq(subst_affine(p->lhs), subst_affine(p->rhs));

    // Cardinality and absolute-value constraints have no syntax for a constant
    // argument: they are only evaluated once ground.
    std::vector<std::int64_t> values(csp.num_vars(), 0);
    for (auto v : c.scope()) {
        const Domain& d = csp.domain(v);
        if (!fixed(d)) return std::nullopt;
        values[v.index] = d.value();
    }
    values[x.index] = value;
    return c.satisfied(values) ? Constraint::truth() : Constraint::falsity();
}

std::optional<Delta> apply_substitution(const Csp& csp, VarId x) {
    const Domain& dx = csp.domain(x);
    if (!fixed(dx)) return std::nullopt;
    Delta d;
    for (const auto& c : csp.constraints()) {
        auto r = substitute(csp, c, x, dx.value());
        if (!r) continue;
        d.removed.insert(c);
        d.added.insert(*r);
    }
    if (d.removed.empty()) return std::nullopt;
    return d;
}

std::optional<Delta> apply_deletion(const Csp& csp) {
    if (!csp.has_constraint(Constraint::truth())) return std::nullopt;
    Delta d;
    d.removed.insert(Constraint::truth());
    return d;
}

std::optional<Application> apply_exactly(const Csp& csp, const Constraint& c) {
    constexpr std::array<std::pair<RuleId, std::optional<Delta> (*)(const Csp&, const Constraint&)>, 4> steps{{
        {RuleId::EXACTLY_1, exactly_1},
        {RuleId::EXACTLY_2, exactly_2},
        {RuleId::EXACTLY_3, exactly_3},
        {RuleId::EXACTLY_4, exactly_4},
    }};
    for (const auto& [id, fn] : steps) {
        auto d = fn(csp, c);
        if (d && !d->is_noop()) return Application{id, std::move(*d)};
    }
    return std::nullopt;
}

std::optional<Delta> apply_atmost(const Csp& csp, const Constraint& c) {
    auto* p = c.get_if<Atmost>();
    if (!p) return std::nullopt;
    const Domain& dx = csp.domain(p->count);
    if (!usable(dx)) return std::nullopt;
    Delta d;
    // The count can be any of 0..max D_x, not only a member of D_x; the two
    // agree for the usual D_x = [0..m].
    VarId y = fresh(d, csp, Domain::interval(0, dx.max()));
    d.removed.insert(c);
    d.added.insert(Constraint::exactly(y, p->list, p->value));
    // y − x ≤ 0
    AffineExpr diff = AffineExpr::of_var(y);
    diff -= AffineExpr::of_var(p->count);
    d.added.insert(Constraint::leq(LinearForm{diff.terms, 0}));
    return d;
}

}  // namespace propkit
