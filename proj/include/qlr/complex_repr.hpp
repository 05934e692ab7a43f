#pragma once

// Complex amplitude representation of trigonometric contexts and the induced
// self-adjoint operators for the reference observables, plus the qubit oracle
// that produces data with a known representation.

#include <array>
#include <complex>
#include <string>

#include "qlr/interference.hpp"
#include "qlr/model.hpp"
#include "qlr/rng.hpp"

namespace qlr {

using cplx = std::complex<double>;
using CVec2 = std::array<cplx, 2>;
using CMat2 = std::array<std::array<cplx, 2>, 2>;

inline constexpr double kFloatEps = 2.220446049250313e-16;

/// Phase convention tag carried by exported amplitudes.
inline constexpr const char* kPhaseConvention =
    "theta(b1)=arccos(lambda(b1)) in [0,pi]; theta(b2)=theta(b1)-pi when doubly stochastic, "
    "else -arccos(lambda(b2)); global phase fixed so the first nonzero component is real "
    "non-negative; complex conjugation is a residual gauge";

cplx inner(const CVec2& x, const CVec2& y) noexcept;  ///< <x, y>, antilinear in x
double norm2(const CVec2& x) noexcept;
CVec2 apply(const CMat2& m, const CVec2& x) noexcept;

struct HermitianEigen {
    std::array<double, 2> values{};  ///< ascending
    std::array<CVec2, 2> vectors{};
};

/// Closed-form eigendecomposition of a 2x2 self-adjoint matrix.
HermitianEigen eigen_hermitian(const CMat2& m);

struct ComplexAmplitude {
    std::string context_id;
    CVec2 components{};            ///< in the b-basis, after global-phase canonicalization
    std::array<double, 2> phases{};  ///< theta used for each outcome
    cplx gauge{1.0, 0.0};           ///< components = gauge * (uncanonicalized amplitude)
    bool operator_complete = false;  ///< transition table doubly stochastic, so operators exist
};

struct ObservableOperators {
    CMat2 b_op{};
    CMat2 a_op{};
    std::array<CVec2, 2> a_eigenbasis{};  ///< u_alpha in the b-basis
    double orthonormality_defect = 0.0;   ///< max deviation of <u_i, u_j> from delta_ij
    double decomposition_defect = 0.0;    ///< |phi - gauge * sum_alpha sqrt(p_a) u_alpha|
};

/// Build phi_C. Requires a trigonometric (or representable degenerate) profile;
/// otherwise throws RepresentationRefused naming the classification.
ComplexAmplitude construct_amplitude(const ContextData& d, const InterferenceProfile& profile,
                                     double tolerance = kProbTolerance);

/// Build the operators for a and b. Requires the amplitude preconditions plus a
/// doubly stochastic transition table (RepresentationRefused "double-stochasticity").
ObservableOperators construct_operators(const ContextData& d, const InterferenceProfile& profile,
                                        const ObservablePair& spectra, double tolerance = kProbTolerance);

/// Eigenbasis formula without the double-stochasticity gate; exposed so tests can
/// show what goes wrong when the gate is bypassed.
std::array<CVec2, 2> eigenbasis_from_table(const ContextData& d, const std::array<double, 2>& phases);

struct BornResiduals {
    std::array<double, 2> b{};  ///< | |<e_beta, phi>|^2 - p_b(beta) |
    std::array<double, 2> a{};  ///< | |<u_alpha, phi>|^2 - p_a(alpha) |
    double max() const noexcept;
};

BornResiduals born_check(const ComplexAmplitude& phi, const ObservableOperators& ops, const ContextData& d);

/// Data of a qubit in `state` with a measured in `a_basis` and b in the standard basis.
/// a_given_b is filled as well. Throws InvalidInput unless inputs are unit/orthonormal
/// within 1e-12.
ContextData quantum_oracle_generate(const CVec2& state, const std::array<CVec2, 2>& a_basis,
                                    std::string context_id = "oracle");

/// Haar-distributed unit vector and orthonormal basis.
CVec2 haar_state(RngStream& rng);
std::array<CVec2, 2> haar_basis(RngStream& rng);

struct SumAverages {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double mean_sum_op = 0.0;
    std::array<double, 2> eigvals_sum_op{};
    double linearity_residual = 0.0;  ///< |mean_sum_op - (mean_a + mean_b)|
};

SumAverages averages_and_sum(const ComplexAmplitude& phi, const ObservableOperators& ops);

}  // namespace qlr
