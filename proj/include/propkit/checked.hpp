#pragma once

#include <cstdint>
#include <limits>

#include "propkit/error.hpp"

// Overflow-checked 64-bit integer arithmetic. Every bound computation in the
// solver goes through these; nothing is allowed to wrap silently.
namespace propkit::checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

inline std::int64_t neg(std::int64_t a) {
    if (a == std::numeric_limits<std::int64_t>::min()) throw OverflowError("integer overflow in negation");
    return -a;
}

/// floor(p / q), q != 0.
inline std::int64_t floor_div(std::int64_t p, std::int64_t q) {
    if (q == -1) return neg(p);
    std::int64_t d = p / q;
    if (p % q != 0 && ((p % q < 0) != (q < 0))) --d;
    return d;
}

/// ceil(p / q), q != 0.
inline std::int64_t ceil_div(std::int64_t p, std::int64_t q) {
    if (q == -1) return neg(p);
    std::int64_t d = p / q;
    if (p % q != 0 && ((p % q < 0) == (q < 0))) ++d;
    return d;
}

}  // namespace propkit::checked
