#pragma once

#include <cstdint>
#include <string>

namespace qlr {

/// Exact fraction with 64-bit numerator and positive denominator, always in lowest terms.
///
/// Arithmetic is carried out in 128-bit intermediates; a result that does not fit
/// back into 64 bits throws std::overflow_error so callers can fall back to floating point.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x, const Rational& y);
    friend Rational operator*(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x);

    friend bool operator==(const Rational& x, const Rational& y) noexcept {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator<(const Rational& x, const Rational& y);

    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace qlr
