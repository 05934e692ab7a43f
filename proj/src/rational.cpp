#include "qlr/rational.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace qlr {

namespace {

using wide = __int128;

wide gcd_wide(wide a, wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational narrow(wide num, wide den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const wide g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr wide lo = std::numeric_limits<std::int64_t>::min();
    constexpr wide hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) throw std::overflow_error("rational overflow");
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        if (num == std::numeric_limits<std::int64_t>::min() || den == std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("rational overflow");
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = g > 1 ? num / g : num;
    den_ = g > 1 ? den / g : den;
}

Rational operator+(const Rational& x, const Rational& y) {
    return narrow(wide(x.num_) * y.den_ + wide(y.num_) * x.den_, wide(x.den_) * y.den_);
}

Rational operator-(const Rational& x, const Rational& y) {
    return narrow(wide(x.num_) * y.den_ - wide(y.num_) * x.den_, wide(x.den_) * y.den_);
}

Rational operator*(const Rational& x, const Rational& y) {
    return narrow(wide(x.num_) * y.num_, wide(x.den_) * y.den_);
}

Rational operator-(const Rational& x) { return narrow(-wide(x.num_), x.den_); }

bool operator<(const Rational& x, const Rational& y) {
    return wide(x.num_) * y.den_ < wide(y.num_) * x.den_;
}

std::string Rational::str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace qlr
