#pragma once

// Measure of statistical disturbance and the interference-term form of the
// formula of total probability.
//
// For each beta the deviation delta(beta) from the classical formula is
// normalized by twice the geometric mean of the two factorized terms:
//
//   lambda(beta) = delta(beta) / (2 sqrt(p_a(0) P(beta|0) p_a(1) P(beta|1)))
//
// |lambda| <= 1 gives a cos-interference term, |lambda| >= 1 a cosh one.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qlr/model.hpp"

namespace qlr {

/// Values with |lambda| in (1, 1 + kClampTolerance] are treated as exactly +-1.
inline constexpr double kClampTolerance = 1e-9;

enum class Classification { Trigonometric, Hyperbolic, MixedHyperTrigonometric, Degenerate };

std::string to_string(Classification c);

/// Which interference branch a single outcome falls into.
enum class Branch { Trigonometric, Hyperbolic, Undefined };

std::string to_string(Branch b);

struct InterferenceTerm {
    double delta = 0.0;
    double denominator = 0.0;
    std::optional<double> lambda;  ///< empty when the denominator vanishes but delta does not
    Branch branch = Branch::Undefined;
    double theta = 0.0;  ///< arccos(lambda) in [0, pi], or arccosh(|lambda|) >= 0
    int sign = 1;        ///< sign of lambda; only meaningful on the hyperbolic branch
};

struct ClampEvent {
    Outcome beta = 0;
    double original = 0.0;
    double clamped = 0.0;
};

struct InterferenceProfile {
    std::string context_id;
    std::array<InterferenceTerm, 2> terms;
    Classification classification = Classification::Degenerate;
    /// Degenerate contexts are representable only when delta vanishes wherever the
    /// denominator does (lambda is then set to zero).
    bool representable = false;
    std::vector<ClampEvent> clamps;
};

/// lambda(beta), or empty when undefined. Throws InvalidInput on invalid data.
std::optional<double> lambda_coefficient(const ContextData& d, Outcome beta,
                                         double tolerance = kProbTolerance);

/// Full per-outcome profile and the context's class. Throws InvalidInput on invalid data.
InterferenceProfile classify_context(const ContextData& d, double tolerance = kProbTolerance);

struct FtpReconstruction {
    Classification classification = Classification::Trigonometric;
    std::array<double, 2> reconstructed{};  ///< p_b rebuilt from the interference formula
    std::array<double, 2> residuals{};      ///< |reconstructed - stored p_b|
};

/// Rebuild p_b with the cos- or cosh-interference term.
///
/// Throws RepresentationRefused ("mixed-classification") for mixed contexts, where
/// no single branch applies, and ("degenerate-nonrepresentable") for degenerate
/// contexts with nonzero delta.
FtpReconstruction ftp_with_interference(const ContextData& d, double tolerance = kProbTolerance);
FtpReconstruction ftp_with_interference(const ContextData& d, const InterferenceProfile& profile);

struct SymmetryReport {
    InterferenceProfile b_given_a;  ///< b measured after a-filtrations
    InterferenceProfile a_given_b;  ///< a measured after b-filtrations
    bool classifications_agree = false;
};

/// Compute lambda in both conditioning directions. Throws InvalidInput when the data
/// carries no a_given_b table.
SymmetryReport symmetry_diagnostic(const ContextData& d, double tolerance = kProbTolerance);

/// First-order standard error of lambda(beta) from the per-entry errors of estimated
/// data. Entries are treated as independent; p_a(1) is tied to 1 - p_a(0).
double lambda_standard_error(const ContextData& d, const StandardErrors& se, Outcome beta);

}  // namespace qlr
