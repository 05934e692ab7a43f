#pragma once

// Ontic sum d = a + b, evaluated system by system in the ensemble, against the
// operator sum of the complex representation.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qlr/complex_repr.hpp"
#include "qlr/ensemble.hpp"

namespace qlr {

struct OnticSum {
    double mean = 0.0;
    double standard_error = 0.0;
    std::map<double, std::size_t> support;  ///< observed value of a + b -> count
    std::size_t n = 0;
};

/// Mean of a(omega) + b(omega) over N undisturbed systems, both observables read
/// from the same hidden state.
OnticSum ontic_sum_mean(const EnsembleModel& m, const std::string& context_id, std::size_t n, std::uint64_t seed);

struct SumReport {
    std::string context_id;
    EstimatedContext estimate;
    ContextData regularized;  ///< estimate with the transition table projected onto doubly stochastic form
    InterferenceProfile profile;

    OnticSum ontic;
    double marginal_sum = 0.0;   ///< <a> + <b> from the marginal collectives
    double marginal_se = 0.0;
    SumAverages quantum;         ///< from phi_C and the operators of the regularized data

    std::array<double, 4> spectral_sums{};  ///< alpha_i + beta_j
    double eigenvalue_mismatch = 0.0;       ///< max over eigenvalues of the distance to the nearest alpha_i + beta_j

    double z = 4.0;
    bool ontic_vs_marginal_ok = false;
    bool marginal_vs_quantum_ok = false;
    bool ontic_vs_quantum_ok = false;
    bool agree() const noexcept { return ontic_vs_marginal_ok && marginal_vs_quantum_ok && ontic_vs_quantum_ok; }
};

/// Simulate the context, build its representation, and compare the three averages.
/// Throws RepresentationRefused when the estimated table is not doubly stochastic
/// within z standard errors or the context is not trigonometric.
SumReport sum_observable_comparison(const EnsembleModel& m, const std::string& context_id, std::size_t n,
                                    std::uint64_t seed, double z = 4.0);

}  // namespace qlr
