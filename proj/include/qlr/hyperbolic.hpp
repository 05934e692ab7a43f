#pragma once

// Split-complex (hyperbolic) numbers z = x + j y with j^2 = +1, and the hyperbolic
// amplitude for contexts whose interference term is a cosh.

#include <array>
#include <string>

#include "qlr/interference.hpp"
#include "qlr/model.hpp"

namespace qlr {

struct HyperbolicNumber {
    double x = 0.0;  ///< real part
    double y = 0.0;  ///< coefficient of j

    constexpr HyperbolicNumber() = default;
    constexpr HyperbolicNumber(double real, double hyp = 0.0) : x(real), y(hyp) {}  // NOLINT

    friend constexpr HyperbolicNumber operator+(HyperbolicNumber a, HyperbolicNumber b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr HyperbolicNumber operator-(HyperbolicNumber a, HyperbolicNumber b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr HyperbolicNumber operator*(HyperbolicNumber a, HyperbolicNumber b) {
        return {a.x * b.x + a.y * b.y, a.x * b.y + a.y * b.x};
    }
    friend constexpr bool operator==(HyperbolicNumber a, HyperbolicNumber b) = default;
};

constexpr HyperbolicNumber conj(HyperbolicNumber z) { return {z.x, -z.y}; }

/// z * conj(z) = x^2 - y^2; may be negative.
constexpr double signed_modulus2(HyperbolicNumber z) { return z.x * z.x - z.y * z.y; }

/// cosh(theta) + j sinh(theta)
HyperbolicNumber exp_j(double theta);

struct HyperbolicAmplitude {
    std::string context_id;
    std::array<HyperbolicNumber, 2> components{};
    std::array<int, 2> signs{1, 1};
    std::array<double, 2> thetas{};
};

/// Requires a hyperbolic profile; otherwise RepresentationRefused.
HyperbolicAmplitude construct_hyperbolic_amplitude(const ContextData& d, const InterferenceProfile& profile);

struct HyperbolicBornResiduals {
    std::array<double, 2> b{};  ///< | phi(beta) conj(phi(beta)) - p_b(beta) |
    double total = 0.0;         ///< | sum_beta phi conj(phi) - 1 |
    double max() const noexcept;
};

HyperbolicBornResiduals hyperbolic_born_check(const HyperbolicAmplitude& phi, const ContextData& d);

}  // namespace qlr
