#include "propkit/consistency.hpp"

#include <algorithm>
#include <map>

#include "propkit/error.hpp"
#include "propkit/oracle.hpp"
#include "propkit/render.hpp"
#include "propkit/rules.hpp"
#include "propkit/scheduler.hpp"

namespace propkit {

namespace {

constexpr std::size_t kMaxDetails = 10;

struct RealRange {
    Rational lo;
    Rational hi;
};

// Range of c·x over box b.
RealRange contribution(std::int64_t c, const RealBox& b) {
    Rational p = Rational(c) * b.lo, q = Rational(c) * b.hi;
    return c > 0 ? RealRange{p, q} : RealRange{q, p};
}

std::optional<std::size_t> term_index(const LinearForm& form, VarId var) {
    for (std::size_t j = 0; j < form.terms.size(); ++j)
        if (form.terms[j].var == var) return j;
    return std::nullopt;
}

RealRange rest_range(const LinearForm& form, std::span<const RealBox> boxes, std::size_t j) {
    RealRange r{0, 0};
    for (std::size_t i = 0; i < form.terms.size(); ++i) {
        if (i == j) continue;
        auto c = contribution(form.terms[i].coeff, boxes[form.terms[i].var.index]);
        r.lo += c.lo;
        r.hi += c.hi;
    }
    return r;
}

// Corner of the other boxes where Σ_{i≠j} cᵢxᵢ is minimal (or maximal).
std::vector<Rational> corner(const LinearForm& form, std::span<const RealBox> boxes, bool minimal) {
    std::vector<Rational> out;
    for (const auto& t : form.terms) {
        const RealBox& b = boxes[t.var.index];
        bool low = (t.coeff > 0) == minimal;
        out.push_back(low ? b.lo : b.hi);
    }
    return out;
}

Rational evaluate(const LinearForm& form, const std::vector<Rational>& tuple) {
    Rational s = 0;
    for (std::size_t i = 0; i < form.terms.size(); ++i) s += Rational(form.terms[i].coeff) * tuple[i];
    return s;
}

std::string show_boxes(const LinearForm& form, std::span<const RealBox> boxes) {
    std::string out;
    for (const auto& t : form.terms) {
        const RealBox& b = boxes[t.var.index];
        out += " x" + std::to_string(t.var.index) + "∈[" + b.lo.to_string() + "," + b.hi.to_string() + "]";
    }
    return out;
}

std::string show_form(const LinearForm& form) {
    std::string out;
    for (const auto& t : form.terms) out += (t.coeff < 0 ? " - " : " + ") + std::to_string(std::abs(t.coeff)) + "*x" + std::to_string(t.var.index);
    return out + " = " + std::to_string(form.bound);
}

}  // namespace

Boxes r_linear_equality(const LinearForm& form, std::span<const RealBox> boxes) {
    Boxes out(boxes.begin(), boxes.end());
    Rational total_lo = 0, total_hi = 0;
    std::vector<RealRange> contrib;
    for (const auto& t : form.terms) {
        contrib.push_back(contribution(t.coeff, boxes[t.var.index]));
        total_lo += contrib.back().lo;
        total_hi += contrib.back().hi;
    }
    Rational b = form.bound;
    for (std::size_t j = 0; j < form.terms.size(); ++j) {
        const Term& t = form.terms[j];
        const RealBox& old = boxes[t.var.index];
        Rational rest_lo = total_lo - contrib[j].lo;
        Rational rest_hi = total_hi - contrib[j].hi;
        RealBox nb = old;
        if (t.coeff > 0) {
            Rational a = t.coeff;
            nb.hi = min(old.hi, (b - rest_lo) / a);  // α
            nb.lo = max(old.lo, (b - rest_hi) / a);  // γ
        } else {
            Rational a = -t.coeff;
            nb.lo = max(old.lo, (rest_lo - b) / a);  // β
            nb.hi = min(old.hi, (rest_hi - b) / a);  // δ
        }
        out[t.var.index] = nb;
    }
    return out;
}

bool real_bound_support(const LinearForm& form, std::span<const RealBox> boxes, VarId var, BoundSide side) {
    const RealBox& b = boxes[var.index];
    return support_witness(form, boxes, var, side == BoundSide::Lo ? b.lo : b.hi).has_value();
}

std::optional<std::vector<Rational>> support_witness(const LinearForm& form, std::span<const RealBox> boxes, VarId var,
                                                     const Rational& value) {
    auto j = term_index(form, var);
    if (!j) return std::nullopt;
    Rational target = Rational(form.bound) - Rational(form.terms[*j].coeff) * value;
    auto rest = rest_range(form, boxes, *j);
    if (target < rest.lo || rest.hi < target) return std::nullopt;
    auto lo = corner(form, boxes, true);
    auto hi = corner(form, boxes, false);
    Rational lambda = rest.hi == rest.lo ? Rational(0) : (target - rest.lo) / (rest.hi - rest.lo);
    std::vector<Rational> w;
    for (std::size_t i = 0; i < form.terms.size(); ++i) w.push_back(i == *j ? value : lo[i] + lambda * (hi[i] - lo[i]));
    return w;
}

std::optional<std::vector<Rational>> interpolation_witness(const LinearForm& form, std::span<const RealBox> premise,
                                                           VarId var, const Rational& d) {
    auto j = term_index(form, var);
    if (!j) return std::nullopt;
    const std::int64_t c = form.terms[*j].coeff;
    auto rest = rest_range(form, premise, *j);
    Rational b = form.bound;
    // Two solutions of the equation: the others at their minimising corner
    // with x_j = α (POS) / β (NEG), and at their maximising corner with
    // x_j = γ (POS) / δ (NEG).
    auto p = corner(form, premise, true);
    auto q = corner(form, premise, false);
    p[*j] = (b - rest.lo) / Rational(c);
    q[*j] = (b - rest.hi) / Rational(c);
    // x_j along the segment is p_j + λ(q_j − p_j); pick λ with x_j = d.
    Rational lambda = 0;
    if (p[*j] != q[*j]) {
        lambda = (d - p[*j]) / (q[*j] - p[*j]);
    } else if (d != p[*j]) {
        return std::nullopt;
    }
    if (lambda < Rational(0) || Rational(1) < lambda) return std::nullopt;
    std::vector<Rational> w;
    for (std::size_t i = 0; i < form.terms.size(); ++i) w.push_back(p[i] + lambda * (q[i] - p[i]));
    w[*j] = d;
    return w;
}

std::string_view to_string(ConsistencyKind k) {
    switch (k) {
        case ConsistencyKind::Arc: return "arc";
        case ConsistencyKind::Bound: return "bound";
        case ConsistencyKind::Interval: return "interval";
    }
    return "?";
}

std::optional<ConsistencyKind> consistency_kind_from_string(std::string_view s) {
    if (s == "arc") return ConsistencyKind::Arc;
    if (s == "bound") return ConsistencyKind::Bound;
    if (s == "interval") return ConsistencyKind::Interval;
    return std::nullopt;
}

namespace {

Boxes boxes_of(const Csp& csp) {
    Boxes out;
    for (const auto& d : csp.domains()) {
        if (d.is_real())
            out.push_back(d.as_real());
        else if (d.is_interval())
            out.push_back(RealBox{d.as_interval().lo, d.as_interval().hi});
        else
            out.push_back(RealBox{1, 0});
    }
    return out;
}

// Per (constraint, variable, point) support checks: every value for arc
// consistency, the two bounds otherwise.
ConsistencyReport check(const Csp& csp, ConsistencyKind kind, std::uint64_t cap) {
    ConsistencyReport rep;
    rep.kind = kind;
    if (csp.is_failed()) {
        rep.failed = true;
        return rep;
    }
    std::vector<Witness> bad, good;
    const bool every_value = kind == ConsistencyKind::Arc;
    for (const auto& c : csp.constraints()) {
        if (c.is_true()) continue;
        auto scope = c.scope();
        std::string text = render_constraint(csp, c);
        bool real = std::any_of(scope.begin(), scope.end(), [&](VarId v) { return csp.domain(v).is_real(); });
        if (!real) {
            Relation rel = restrict(c, csp.domains(), cap);
            for (std::size_t k = 0; k < scope.size(); ++k) {
                const Domain& d = csp.domain(scope[k]);
                std::map<std::int64_t, const Assignment*> support;
                for (const auto& t : rel.tuples) support.emplace(t[k], &t);
                std::vector<std::int64_t> points = every_value ? d.values() : std::vector<std::int64_t>{d.min(), d.max()};
                for (auto v : points) {
                    auto it = support.find(v);
                    std::string point = v == d.min() ? "lo" : v == d.max() ? "hi" : "value";
                    Witness w{text, scope[k], point, Rational(v), it != support.end(), {}};
                    if (w.supported) {
                        for (auto x : *it->second) w.tuple.push_back(Rational(x));
                        if (point != "value") good.push_back(std::move(w));
                    } else {
                        bad.push_back(std::move(w));
                    }
                }
            }
            continue;
        }
        auto* eq = c.get_if<LinEq>();
        if (!eq) throw Error("real domains are only supported for linear equalities: " + text);
        Boxes boxes = boxes_of(csp);
        for (auto v : scope) {
            if (!csp.domain(v).is_real() && !csp.domain(v).is_interval()) throw Error("mixed set and real domains");
            const RealBox& b = boxes[v.index];
            std::vector<std::pair<std::string, Rational>> points{{"lo", b.lo}, {"hi", b.hi}};
            if (every_value) points.emplace_back("value", (b.lo + b.hi) / Rational(2));
            for (auto& [name, value] : points) {
                auto t = support_witness(eq->form, boxes, v, value);
                Witness w{text, v, name, value, t.has_value(), t.value_or(std::vector<Rational>{})};
                (w.supported ? good : bad).push_back(std::move(w));
            }
        }
    }
    rep.verdict = bad.empty();
    rep.witnesses = rep.verdict ? std::move(good) : std::move(bad);
    return rep;
}

}  // namespace

ConsistencyReport check_arc_consistent(const Csp& csp, std::uint64_t cap) { return check(csp, ConsistencyKind::Arc, cap); }

ConsistencyReport check_bound_consistent(const Csp& csp, std::uint64_t cap) { return check(csp, ConsistencyKind::Bound, cap); }

bool is_lineq(const Csp& csp) {
    for (const auto& d : csp.domains())
        if (d.is_set()) return false;
    return std::all_of(csp.constraints().begin(), csp.constraints().end(),
                       [](const Constraint& c) { return c.kind() == ConstraintKind::LinEq; });
}

Csp real_relaxation(const Csp& csp) {
    Csp out = csp;
    for (std::uint32_t i = 0; i < csp.num_vars(); ++i) {
        const Domain& d = csp.domain(VarId{i});
        if (d.is_interval()) out.set_domain(VarId{i}, Domain::real(d.as_interval().lo, d.as_interval().hi));
    }
    return out;
}

ConsistencyReport check_interval_consistent(const Csp& lineq) {
    if (!is_lineq(lineq)) throw Error("interval consistency is defined for LINEQ CSPs (linear equalities over intervals)");
    ConsistencyReport rep = check(real_relaxation(lineq), ConsistencyKind::Bound, 0);
    rep.kind = ConsistencyKind::Interval;
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

std::int64_t nonzero_coeff(std::mt19937_64& rng) {
    std::int64_t c = uniform(rng, -5, 4);
    return c >= 0 ? c + 1 : c;
}

Rational random_point(std::mt19937_64& rng) {
    std::int64_t q = uniform(rng, 1, 4);
    return Rational(uniform(rng, -10 * q, 10 * q), q);
}

// Random subset of {0..n−1} with at least two elements, ascending.
std::vector<std::uint32_t> random_scope(std::mt19937_64& rng, std::uint32_t n) {
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(uniform(rng, 2, n)));
    std::sort(all.begin(), all.end());
    return all;
}

SuiteResult start(std::string name, const SuiteConfig& config) {
    SuiteResult r;
    r.name = std::move(name);
    r.seed = config.seed;
    return r;
}

void counterexample(SuiteResult& r, std::string what) {
    ++r.counterexamples;
    if (r.details.size() < kMaxDetails) r.details.push_back(std::move(what));
}

bool any_empty(const Boxes& b) {
    return std::any_of(b.begin(), b.end(), [](const RealBox& x) { return x.empty(); });
}

Rational total_width(const Boxes& b) {
    Rational w = 0;
    for (const auto& x : b) w += x.width();
    return w;
}

}  // namespace

RealEquationInstance random_real_equation(std::mt19937_64& rng) {
    RealEquationInstance inst;
    auto n = static_cast<std::uint32_t>(uniform(rng, 2, 4));
    for (std::uint32_t i = 0; i < n; ++i) {
        inst.form.terms.push_back(Term{VarId{i}, nonzero_coeff(rng)});
        Rational a = random_point(rng), b = random_point(rng);
        inst.boxes.push_back(RealBox{min(a, b), max(a, b)});
    }
    inst.form.bound = uniform(rng, -20, 20);
    return inst;
}

Csp random_lineq(std::mt19937_64& rng) {
    Csp csp;
    auto n = static_cast<std::uint32_t>(uniform(rng, 2, 4));
    for (std::uint32_t i = 0; i < n; ++i) {
        std::int64_t a = uniform(rng, -10, 10), b = uniform(rng, -10, 10);
        csp.add_variable("x" + std::to_string(i), Domain::interval(std::min(a, b), std::max(a, b)));
    }
    auto m = uniform(rng, 1, 3);
    for (std::int64_t k = 0; k < m; ++k) {
        LinearForm f;
        for (auto i : random_scope(rng, n)) f.terms.push_back(Term{VarId{i}, nonzero_coeff(rng)});
        f.bound = uniform(rng, -20, 20);
        csp.add_constraint(Constraint::eq(std::move(f)));
    }
    return csp;
}

Csp davis_instance() {
    Csp csp;
    VarId x = csp.add_variable("x", Domain::real(0, 100));
    VarId y = csp.add_variable("y", Domain::real(0, 100));
    csp.add_constraint(Constraint::eq(LinearForm{{{x, 1}, {y, -1}}, 0}));
    csp.add_constraint(Constraint::eq(LinearForm{{{x, 1}, {y, -2}}, 0}));
    return csp;
}

AlternatingRun alternate_r_linear_equality(const Csp& csp, std::size_t steps) {
    std::vector<LinearForm> eqs;
    for (const auto& c : csp.constraints())
        if (auto* p = c.get_if<LinEq>()) eqs.push_back(p->form);
    AlternatingRun run;
    run.final_boxes = boxes_of(csp);
    if (eqs.empty()) return run;

    std::size_t k = 0;
    while (k < eqs.size() && r_linear_equality(eqs[k], run.final_boxes) == run.final_boxes) ++k;
    Rational width = total_width(run.final_boxes);
    if (k == eqs.size()) return run;
    for (std::size_t s = 0; s < steps; ++s) {
        Boxes next = r_linear_equality(eqs[k % eqs.size()], run.final_boxes);
        if (next == run.final_boxes) break;
        Rational w = total_width(next);
        if (!(w < width)) run.widths_strictly_decreasing = false;
        width = w;
        run.final_boxes = std::move(next);
        ++run.relevant_steps;
        if (any_empty(run.final_boxes)) break;
        ++k;
    }
    return run;
}

SuiteResult suite_arc_consistency(const SuiteConfig& config) {
    SuiteResult r = start("T1i", config);
    std::mt19937_64 rng(config.seed);
    for (std::size_t n = 0; n < config.instances; ++n) {
        auto inst = random_real_equation(rng);
        ++r.instances;
        Boxes out = r_linear_equality(inst.form, inst.boxes);
        if (any_empty(out)) continue;
        for (const auto& t : inst.form.terms) {
            const RealBox& b = out[t.var.index];
            for (const Rational& d : {b.lo, b.hi, (b.lo + b.hi) / Rational(2)}) {
                auto w = interpolation_witness(inst.form, inst.boxes, t.var, d);
                bool ok = w && evaluate(inst.form, *w) == Rational(inst.form.bound);
                for (std::size_t i = 0; ok && i < inst.form.terms.size(); ++i) {
                    const RealBox& bi = out[inst.form.terms[i].var.index];
                    ok = bi.lo <= (*w)[i] && (*w)[i] <= bi.hi;
                }
                if (!ok)
                    counterexample(r, "instance " + std::to_string(n) + ":" + show_form(inst.form) + " over" +
                                          show_boxes(inst.form, inst.boxes) + ", x" + std::to_string(t.var.index) +
                                          " = " + d.to_string() + " unsupported");
            }
        }
    }
    r.passed = r.counterexamples == 0;
    return r;
}

SuiteResult suite_idempotence(const SuiteConfig& config) {
    SuiteResult r = start("T1ii", config);
    std::mt19937_64 rng(config.seed);
    for (std::size_t n = 0; n < config.instances; ++n) {
        auto inst = random_real_equation(rng);
        ++r.instances;
        Boxes once = r_linear_equality(inst.form, inst.boxes);
        if (any_empty(once)) continue;
        Boxes twice = r_linear_equality(inst.form, once);
        if (twice != once)
            counterexample(r, "instance " + std::to_string(n) + ":" + show_form(inst.form) + " over" +
                                  show_boxes(inst.form, inst.boxes) + " changed on second application");
    }
    r.passed = r.counterexamples == 0;
    return r;
}

SuiteResult suite_non_termination(const SuiteConfig& config) {
    SuiteResult r = start("T1iii", config);
    r.instances = 1;
    auto run = alternate_r_linear_equality(davis_instance(), config.davis_steps);
    if (run.relevant_steps < config.davis_steps)
        counterexample(r, "fixpoint or failure after " + std::to_string(run.relevant_steps) + " relevant steps");
    if (!run.widths_strictly_decreasing) counterexample(r, "box widths did not strictly decrease");
    Rational w = total_width(run.final_boxes);
    r.details.push_back(std::to_string(run.relevant_steps) + " relevant steps; final total width has a " +
                        std::to_string(w.denominator().str().size()) + "-digit denominator");
    r.passed = r.counterexamples == 0;
    return r;
}

SuiteResult suite_interval_consistency(const SuiteConfig& config) {
    SuiteResult r = start("T2", config);
    std::mt19937_64 rng(config.seed);
    const std::vector<RuleId> ids{RuleId::LIN_EQ, RuleId::LIN_EQ_UNARY};
    auto rules = rules_from_ids(ids);
    for (std::size_t n = 0; n < config.instances; ++n) {
        Csp csp = random_lineq(rng);
        ++r.instances;
        auto fp = propagate(csp, rules);
        if (fp.status == FixpointStatus::Failed) continue;
        auto rep = check_interval_consistent(fp.final);
        if (!rep.verdict) {
            std::string what = "instance " + std::to_string(n) + ": " + render_model(csp);
            std::replace(what.begin(), what.end(), '\n', ' ');
            counterexample(r, what);
        }
    }
    r.passed = r.counterexamples == 0;
    return r;
}

std::vector<SuiteResult> theorem_suite(const SuiteConfig& config) {
    return {suite_arc_consistency(config), suite_idempotence(config), suite_non_termination(config),
            suite_interval_consistency(config)};
}

}  // namespace propkit
