#include "propkit/rational.hpp"

#include <cctype>
#include <limits>

#include "propkit/error.hpp"

namespace propkit {

namespace {

BigInt parse_integer(std::string_view s) {
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        negative = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw Error("malformed number '" + std::string(s) + "'");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw Error("malformed number '" + std::string(s) + "'");
        v = v * 10 + (s[i] - '0');
    }
    return negative ? BigInt(-v) : v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error("zero denominator");
    value_ = Raw(BigInt(num)) / Raw(BigInt(den));
}

Rational Rational::parse(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    BigInt num = parse_integer(trim(text.substr(0, slash)));
    BigInt den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    return Rational(RawTag{}, Raw(num) / Raw(den));
}

BigInt Rational::floor() const {
    BigInt n = numerator();
    BigInt d = denominator();
    BigInt q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

BigInt Rational::ceil() const {
    BigInt n = numerator();
    BigInt d = denominator();
    BigInt q = n / d;
    if (n % d != 0 && n > 0) ++q;
    return q;
}

std::int64_t Rational::to_int64() const {
    if (!is_integer()) throw OverflowError("not an integer: " + to_string());
    BigInt n = numerator();
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
        throw OverflowError("integer out of 64-bit range: " + to_string());
    return n.convert_to<std::int64_t>();
}

std::string Rational::to_string() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.value_ == 0) throw Error("division by zero");
    value_ /= o.value_;
    return *this;
}

}  // namespace propkit
