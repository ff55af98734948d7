#include "propkit/domain.hpp"

#include <algorithm>
#include <limits>

#include "propkit/error.hpp"

namespace propkit {

namespace {

// Interior removal turns an interval into an explicit set; refuse absurd sizes.
constexpr std::uint64_t kMaxMaterialize = 1'000'000;

void require_integer(const Domain& d, const char* what) {
    if (d.is_real()) throw Error(std::string(what) + " on a real domain");
}

}  // namespace

Domain Domain::set(std::vector<std::int64_t> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return Domain(IntSet{std::move(elems)});
}

bool Domain::empty() const {
    if (auto* i = std::get_if<IntInterval>(&rep_)) return i->lo > i->hi;
    if (auto* s = std::get_if<IntSet>(&rep_)) return s->elems.empty();
    return as_real().empty();
}

bool Domain::is_singleton() const {
    if (auto* i = std::get_if<IntInterval>(&rep_)) return i->lo == i->hi;
    if (auto* s = std::get_if<IntSet>(&rep_)) return s->elems.size() == 1;
    return as_real().lo == as_real().hi;
}

std::uint64_t Domain::size() const {
    require_integer(*this, "size");
    if (auto* s = std::get_if<IntSet>(&rep_)) return s->elems.size();
    const auto& i = as_interval();
    if (i.lo > i.hi) return 0;
    std::uint64_t n = static_cast<std::uint64_t>(i.hi) - static_cast<std::uint64_t>(i.lo);
    return n == std::numeric_limits<std::uint64_t>::max() ? n : n + 1;
}

std::int64_t Domain::min() const {
    require_integer(*this, "min");
    if (empty()) throw Error("min of an empty domain");
    if (auto* s = std::get_if<IntSet>(&rep_)) return s->elems.front();
    return as_interval().lo;
}

std::int64_t Domain::max() const {
    require_integer(*this, "max");
    if (empty()) throw Error("max of an empty domain");
    if (auto* s = std::get_if<IntSet>(&rep_)) return s->elems.back();
    return as_interval().hi;
}

bool Domain::contains(std::int64_t v) const {
    if (auto* i = std::get_if<IntInterval>(&rep_)) return i->lo <= v && v <= i->hi;
    if (auto* s = std::get_if<IntSet>(&rep_)) return std::binary_search(s->elems.begin(), s->elems.end(), v);
    const auto& b = as_real();
    return b.lo <= Rational(v) && Rational(v) <= b.hi;
}

std::vector<std::int64_t> Domain::values() const {
    require_integer(*this, "values");
    if (auto* s = std::get_if<IntSet>(&rep_)) return s->elems;
    if (size() > kMaxMaterialize) throw Error("domain too large to enumerate: " + to_string());
    std::vector<std::int64_t> out;
    const auto& i = as_interval();
    for (std::int64_t v = i.lo; v <= i.hi; ++v) {
        out.push_back(v);
        if (v == i.hi) break;
    }
    return out;
}

Domain Domain::clamp(std::int64_t lo, std::int64_t hi) const {
    require_integer(*this, "clamp");
    if (auto* s = std::get_if<IntSet>(&rep_)) {
        std::vector<std::int64_t> out;
        for (auto v : s->elems)
            if (lo <= v && v <= hi) out.push_back(v);
        return Domain(IntSet{std::move(out)});
    }
    const auto& i = as_interval();
    return interval(std::max(i.lo, lo), std::min(i.hi, hi));
}

Domain Domain::intersect(const Domain& other) const {
    if (is_real() || other.is_real()) {
        if (!is_real() || !other.is_real()) throw Error("intersection of real and integer domains");
        const auto& a = as_real();
        const auto& b = other.as_real();
        return real(propkit::max(a.lo, b.lo), propkit::min(a.hi, b.hi));
    }
    if (is_interval() && other.is_interval()) return clamp(other.as_interval().lo, other.as_interval().hi);
    const Domain& s = is_set() ? *this : other;
    const Domain& t = is_set() ? other : *this;
    std::vector<std::int64_t> out;
    for (auto v : s.as_set().elems)
        if (t.contains(v)) out.push_back(v);
    return Domain(IntSet{std::move(out)});
}

bool Domain::disjoint(const Domain& other) const {
    if (is_interval() && other.is_interval()) {
        const auto& a = as_interval();
        const auto& b = other.as_interval();
        return std::max(a.lo, b.lo) > std::min(a.hi, b.hi);
    }
    return intersect(other).empty();
}

Domain Domain::remove(std::int64_t v) const {
    require_integer(*this, "remove");
    if (!contains(v)) return *this;
    if (auto* s = std::get_if<IntSet>(&rep_)) {
        std::vector<std::int64_t> out;
        for (auto e : s->elems)
            if (e != v) out.push_back(e);
        return Domain(IntSet{std::move(out)});
    }
    const auto& i = as_interval();
    if (v == i.lo) return interval(i.lo + 1, i.hi);
    if (v == i.hi) return interval(i.lo, i.hi - 1);
    auto vals = values();
    vals.erase(std::find(vals.begin(), vals.end(), v));
    return Domain(IntSet{std::move(vals)});
}

Domain Domain::decrement_positive() const {
    require_integer(*this, "decrement");
    if (auto* s = std::get_if<IntSet>(&rep_)) {
        std::vector<std::int64_t> out;
        for (auto e : s->elems)
            if (e > 0) out.push_back(e - 1);
        return Domain(IntSet{std::move(out)});
    }
    const auto& i = as_interval();
    if (i.hi < 1 || i.lo > i.hi) return interval(0, -1);
    return interval(std::max<std::int64_t>(i.lo, 1) - 1, i.hi - 1);
}

bool Domain::subset_of(const Domain& other) const {
    if (empty()) return true;
    if (is_real() || other.is_real()) {
        if (!is_real() || !other.is_real()) return false;
        return other.as_real().lo <= as_real().lo && as_real().hi <= other.as_real().hi;
    }
    if (other.empty()) return false;
    if (other.is_interval()) return other.min() <= min() && max() <= other.max();
    if (size() > other.size()) return false;
    for (auto v : values())
        if (!other.contains(v)) return false;
    return true;
}

std::string Domain::to_string() const {
    if (auto* i = std::get_if<IntInterval>(&rep_)) return "[" + std::to_string(i->lo) + ".." + std::to_string(i->hi) + "]";
    if (auto* s = std::get_if<IntSet>(&rep_)) {
        std::string out = "{";
        for (std::size_t k = 0; k < s->elems.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(s->elems[k]);
        }
        return out + "}";
    }
    return "[" + as_real().lo.to_string() + "," + as_real().hi.to_string() + "]";
}

bool operator==(const Domain& a, const Domain& b) {
    if (a.is_real() || b.is_real()) return a.is_real() && b.is_real() && a.as_real() == b.as_real();
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    if (a.is_interval() && b.is_interval())
        return a.as_interval().lo == b.as_interval().lo && a.as_interval().hi == b.as_interval().hi;
    if (a.size() != b.size() || a.min() != b.min() || a.max() != b.max()) return false;
    const Domain& s = a.is_set() ? a : b;
    const Domain& t = a.is_set() ? b : a;
    for (auto v : s.as_set().elems)
        if (!t.contains(v)) return false;
    return true;
}

}  // namespace propkit
