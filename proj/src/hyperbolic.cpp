#include "qlr/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

#include "qlr/error.hpp"

namespace qlr {

HyperbolicNumber exp_j(double theta) { return {std::cosh(theta), std::sinh(theta)}; }

HyperbolicAmplitude construct_hyperbolic_amplitude(const ContextData& d, const InterferenceProfile& profile) {
    if (profile.classification != Classification::Hyperbolic) {
        throw RepresentationRefused(to_string(profile.classification) + "-classification",
                                    "context '" + d.context_id + "' is not hyperbolic");
    }
    HyperbolicAmplitude amp;
    amp.context_id = d.context_id;
    for (Outcome beta : kOutcomes) {
        const auto& t = profile.terms[beta];
        const double first = std::sqrt(std::max(0.0, d.pa(0) * d.b_a(beta, 0)));
        const double second = std::sqrt(std::max(0.0, d.pa(1) * d.b_a(beta, 1)));
        amp.signs[beta] = t.sign;
        amp.thetas[beta] = t.theta;
        amp.components[beta] = HyperbolicNumber{first} + HyperbolicNumber{double(t.sign) * second} * exp_j(t.theta);
    }
    for (Outcome beta : kOutcomes) {
        const double m = signed_modulus2(amp.components[beta]);
        // Probabilities, hence non-negative; a negative value signals corrupted input.
        if (m < -8.0 * 2.220446049250313e-16) {
            throw InvalidInput("hyperbolic amplitude of context '" + d.context_id + "' has negative modulus");
        }
    }
    return amp;
}

double HyperbolicBornResiduals::max() const noexcept { return std::max({b[0], b[1], total}); }

HyperbolicBornResiduals hyperbolic_born_check(const HyperbolicAmplitude& phi, const ContextData& d) {
    HyperbolicBornResiduals r;
    double sum = 0.0;
    for (Outcome beta : kOutcomes) {
        const double m = signed_modulus2(phi.components[beta]);
        r.b[beta] = std::abs(m - d.pb(beta));
        sum += m;
    }
    r.total = std::abs(sum - 1.0);
    return r;
}

}  // namespace qlr
