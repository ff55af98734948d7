#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "propkit/rational.hpp"

namespace propkit {

/// Integer interval [lo..hi]; lo > hi is the empty interval.
struct IntInterval {
    std::int64_t lo = 0;
    std::int64_t hi = -1;
};

/// Finite set of integers, stored ascending without duplicates.
struct IntSet {
    std::vector<std::int64_t> elems;
};

/// Closed interval of rationals [lo, hi]; empty when lo > hi.
struct RealBox {
    Rational lo;
    Rational hi;

    bool empty() const { return hi < lo; }
    Rational width() const { return hi - lo; }
    friend bool operator==(const RealBox&, const RealBox&) = default;
};

/// The domain of one variable: an integer interval, a finite integer set or a
/// rational box. An empty domain marks a failed CSP.
///
/// Equality is semantic for integer domains ([2..4] == {2,3,4}, and all empty
/// integer domains are equal); rules never change a variable's representation
/// unless the result cannot be expressed in it.
class Domain {
public:
    Domain() : rep_(IntInterval{}) {}

    static Domain interval(std::int64_t lo, std::int64_t hi) { return Domain(IntInterval{lo, hi}); }
    static Domain singleton(std::int64_t v) { return interval(v, v); }
    static Domain set(std::vector<std::int64_t> elems);
    static Domain real(Rational lo, Rational hi) { return Domain(RealBox{std::move(lo), std::move(hi)}); }

    bool is_interval() const { return std::holds_alternative<IntInterval>(rep_); }
    bool is_set() const { return std::holds_alternative<IntSet>(rep_); }
    bool is_real() const { return std::holds_alternative<RealBox>(rep_); }
    bool is_integer() const { return !is_real(); }

    bool empty() const;
    bool is_singleton() const;
    /// Number of integer values, saturating at UINT64_MAX. Integer domains only.
    std::uint64_t size() const;

    // Integer domains, non-empty.
    std::int64_t min() const;
    std::int64_t max() const;
    /// The single value of a singleton integer domain.
    std::int64_t value() const { return min(); }

    bool contains(std::int64_t v) const;
    std::vector<std::int64_t> values() const;

    const IntInterval& as_interval() const { return std::get<IntInterval>(rep_); }
    const IntSet& as_set() const { return std::get<IntSet>(rep_); }
    const RealBox& as_real() const { return std::get<RealBox>(rep_); }

    /// D ∩ [lo..hi], keeping the representation.
    Domain clamp(std::int64_t lo, std::int64_t hi) const;
    /// D1 ∩ D2 for integer domains; an interval only when both are intervals.
    Domain intersect(const Domain& other) const;
    bool disjoint(const Domain& other) const;
    /// D − {v}. Intervals stay intervals when v is a boundary value and turn
    /// into sets otherwise.
    Domain remove(std::int64_t v) const;
    /// {d − 1 | d ∈ D, d > 0}
    Domain decrement_positive() const;
    bool subset_of(const Domain& other) const;

    /// "[lo..hi]", "{a,b,c}" or "[p/q,r/s]". Parsed back by the model reader.
    std::string to_string() const;

    friend bool operator==(const Domain& a, const Domain& b);

private:
    template <class T>
    explicit Domain(T rep) : rep_(std::move(rep)) {}

    std::variant<IntInterval, IntSet, RealBox> rep_;
};

}  // namespace propkit
