#include "propkit/linear.hpp"

#include <algorithm>

#include "propkit/checked.hpp"
#include "propkit/domain.hpp"

namespace propkit {

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, std::int64_t sign) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].var < b[j].var)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].var < a[i].var) {
            out.push_back({b[j].var, checked::mul(sign, b[j].coeff)});
            ++j;
        } else {
            auto c = checked::add(a[i].coeff, checked::mul(sign, b[j].coeff));
            if (c != 0) out.push_back({a[i].var, c});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
    terms = merge(terms, o.terms, 1);
    constant = checked::add(constant, o.constant);
    return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& o) {
    terms = merge(terms, o.terms, -1);
    constant = checked::sub(constant, o.constant);
    return *this;
}

AffineExpr& AffineExpr::scale(std::int64_t k) {
    if (k == 0) {
        terms.clear();
        constant = 0;
        return *this;
    }
    for (auto& t : terms) t.coeff = checked::mul(t.coeff, k);
    constant = checked::mul(constant, k);
    return *this;
}

AffineExpr AffineExpr::negated() const {
    AffineExpr e = *this;
    return e.scale(-1);
}

bool LinearForm::contains(VarId v) const { return coeff(v) != 0; }

std::int64_t LinearForm::coeff(VarId v) const {
    auto it = std::find_if(terms.begin(), terms.end(), [&](const Term& t) { return t.var == v; });
    return it == terms.end() ? 0 : it->coeff;
}

IntRange term_range(std::span<const Term> terms, std::span<const Domain> doms) {
    IntRange r{0, 0};
    for (const auto& t : terms) {
        const Domain& d = doms[t.var.index];
        std::int64_t a = checked::mul(t.coeff, d.min());
        std::int64_t b = checked::mul(t.coeff, d.max());
        r.lo = checked::add(r.lo, std::min(a, b));
        r.hi = checked::add(r.hi, std::max(a, b));
    }
    return r;
}

}  // namespace propkit
