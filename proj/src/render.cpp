#include "propkit/render.hpp"

#include <sstream>

namespace propkit {

namespace {

void append_terms(std::string& out, const Csp& csp, const std::vector<Term>& terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::int64_t c = terms[i].coeff;
        // |c| without overflowing on INT64_MIN
        std::string mag = c < 0 ? std::to_string(c).substr(1) : std::to_string(c);
        if (i == 0)
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (mag != "1") out += mag + "*";
        out += csp.name(terms[i].var);
    }
}

std::string list(const Csp& csp, const std::vector<VarId>& vars) {
    std::string out = "[";
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ", ";
        out += csp.name(vars[i]);
    }
    return out + "]";
}

}  // namespace

std::string render_affine(const Csp& csp, const AffineExpr& e) {
    std::string out;
    append_terms(out, csp, e.terms);
    if (e.terms.empty()) return std::to_string(e.constant);
    if (e.constant > 0) out += " + " + std::to_string(e.constant);
    if (e.constant < 0) out += " - " + std::to_string(e.constant).substr(1);
    return out;
}

std::string render_constraint(const Csp& csp, const Constraint& c) {
    if (auto* p = c.get_if<LinLeq>()) {
        std::string out;
        append_terms(out, csp, p->form.terms);
        return out + " <= " + std::to_string(p->form.bound);
    }
    if (auto* p = c.get_if<LinEq>()) {
        if (p->form.terms.empty()) return "0 = " + std::to_string(p->form.bound);
        std::string out;
        append_terms(out, csp, p->form.terms);
        return out + " = " + std::to_string(p->form.bound);
    }
    if (auto* p = c.get_if<VarDiseqVar>()) return csp.name(p->x) + " != " + csp.name(p->y);
    if (auto* p = c.get_if<VarDiseqConst>()) return csp.name(p->x) + " != " + std::to_string(p->c);
    if (auto* p = c.get_if<GenDiseq>()) return render_affine(csp, p->lhs) + " != " + render_affine(csp, p->rhs);
    if (auto* p = c.get_if<Exactly>())
        return "exactly(" + csp.name(p->count) + ", " + list(csp, p->list) + ", " + csp.name(p->value) + ")";
    if (auto* p = c.get_if<Atmost>())
        return "atmost(" + csp.name(p->count) + ", " + list(csp, p->list) + ", " + csp.name(p->value) + ")";
    if (auto* p = c.get_if<AbsDiffEq>())
        return "abs(" + csp.name(p->x) + " - " + csp.name(p->y) + ") = " + std::to_string(p->a);
    if (c.is_true()) return "0 = 0";
    return "0 = 1";
}

std::string render_declaration(const Csp& csp, VarId v) {
    const Domain& d = csp.domain(v);
    if (d.is_real()) return "realvar " + csp.name(v) + " in " + d.to_string() + ";";
    if (d.is_set()) return "var " + csp.name(v) + " in " + d.to_string() + ";";
    const auto& i = d.as_interval();
    return "var " + csp.name(v) + " in " + std::to_string(i.lo) + ".." + std::to_string(i.hi) + ";";
}

std::string render_model(const Csp& csp) {
    std::string out;
    for (std::uint32_t i = 0; i < csp.num_vars(); ++i) out += render_declaration(csp, VarId{i}) + "\n";
    for (const auto& c : csp.constraints()) out += "constraint " + render_constraint(csp, c) + ";\n";
    return out;
}

std::string render_range(const Csp& csp, VarId v) {
    const Domain& d = csp.domain(v);
    if (d.is_integer() && !d.empty() && d.is_singleton()) return csp.name(v) + " = " + std::to_string(d.value());
    return csp.name(v) + " in " + d.to_string();
}

}  // namespace propkit
