#pragma once

// Contexts, the reference observable pair, and the probabilistic image of a
// context: marginals of a and b plus the transition tables obtained under the
// filtration contexts.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlr/rational.hpp"

namespace qlr {

/// Default tolerance for analytically supplied probability tables.
inline constexpr double kProbTolerance = 1e-9;

/// Index of an outcome in a two-point spectrum (0 or 1).
using Outcome = std::size_t;
inline constexpr std::array<Outcome, 2> kOutcomes{0, 1};

/// A probability stored as a double, with the exact fraction kept alongside when the
/// input supplied one.
struct Probability {
    double value = 0.0;
    std::optional<Rational> exact;

    Probability() = default;
    Probability(double v) : value(v) {}  // NOLINT(google-explicit-constructor)
    Probability(Rational r) : value(r.to_double()), exact(r) {}  // NOLINT(google-explicit-constructor)
};

using ProbabilityVector = std::array<Probability, 2>;
/// Row-indexed 2x2 table: rows by the conditioning outcome, columns by the measured one.
using TransitionMatrix = std::array<ProbabilityVector, 2>;

/// The two reference observables with their two-point real spectra.
struct ObservablePair {
    std::string name_a = "a";
    std::string name_b = "b";
    std::array<double, 2> spectrum_a{1.0, -1.0};
    std::array<double, 2> spectrum_b{1.0, -1.0};

    /// Throws InvalidInput when a spectrum has coinciding points.
    void check() const;
};

/// Probabilistic image of one context.
struct ContextData {
    std::string context_id;
    ProbabilityVector p_a;
    ProbabilityVector p_b;
    TransitionMatrix b_given_a;  ///< b_given_a[alpha][beta] = P(b = beta | C_alpha)
    std::optional<TransitionMatrix> a_given_b;  ///< a_given_b[beta][alpha] = P(a = alpha | C_beta)

    double pa(Outcome alpha) const { return p_a.at(alpha).value; }
    double pb(Outcome beta) const { return p_b.at(beta).value; }
    double b_a(Outcome beta, Outcome alpha) const { return b_given_a.at(alpha).at(beta).value; }
};

/// Per-entry standard errors attached to frequency-estimated data, sqrt(nu (1 - nu) / N).
struct StandardErrors {
    std::array<double, 2> p_a{};
    std::array<double, 2> p_b{};
    std::array<std::array<double, 2>, 2> b_given_a{};
    std::optional<std::array<std::array<double, 2>, 2>> a_given_b;
};

enum class ViolationKind {
    Range,
    Normalization,
    Balance,
    FiltrationAxiom,
    FiltrationConsistency,
    MissingContext,
};

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string context_id;
    std::string location;  ///< e.g. "p_a[1]", "b_given_a row 0"
    double value = 0.0;    ///< offending entry, row sum, or balance residual
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::array<double, 2> deltas{};  ///< deviation from the classical total-probability formula per beta
    double balance = 0.0;            ///< deltas[0] + deltas[1]

    bool ok() const noexcept { return violations.empty(); }
    bool has(ViolationKind kind) const noexcept;
};

/// Check ranges, row normalization, and the balance identity. Never throws.
ValidationReport validate_context_data(const ContextData& d, double tolerance = kProbTolerance);

/// p_b(beta) minus the classical total-probability prediction for beta.
///
/// Computed in exact rational arithmetic when every entry involved carries an exact
/// fraction, so fixture data keeps the balance identity exactly.
double delta(const ContextData& d, Outcome beta);

/// Columns of b_given_a sum to one within `tolerance` (rows are covered by validation).
bool is_doubly_stochastic(const ContextData& d, double tolerance = kProbTolerance);

/// The set of contexts, the reference observables, and their images.
class ContextCatalog {
public:
    ContextCatalog(ObservablePair observables, std::vector<ContextData> contexts,
                   std::array<std::string, 2> alpha_filtrations,
                   std::optional<std::array<std::string, 2>> beta_filtrations = std::nullopt);

    const ObservablePair& observables() const noexcept { return observables_; }
    const std::map<std::string, ContextData>& contexts() const noexcept { return contexts_; }
    const std::array<std::string, 2>& alpha_filtrations() const noexcept { return alpha_filtrations_; }
    const std::optional<std::array<std::string, 2>>& beta_filtrations() const noexcept {
        return beta_filtrations_;
    }

    bool contains(const std::string& id) const { return contexts_.count(id) != 0; }

    /// The probabilistic image of a context. Distinct ids may carry identical data.
    const ContextData& pi_map(const std::string& context_id) const;

    /// Validate every context plus the filtration axiom and filtration consistency.
    ValidationReport validate(double tolerance = kProbTolerance) const;

private:
    ObservablePair observables_;
    std::map<std::string, ContextData> contexts_;
    std::array<std::string, 2> alpha_filtrations_;
    std::optional<std::array<std::string, 2>> beta_filtrations_;
};

/// Catalog holding `d` and the two filtration contexts derived from it by
/// post-selection on a, with ids "<id>/a0" and "<id>/a1".
ContextCatalog catalog_with_derived_filtrations(const ContextData& d, const ObservablePair& observables);

/// Free-function form of ContextCatalog::pi_map.
const ContextData& pi_map(const ContextCatalog& catalog, const std::string& context_id);

}  // namespace qlr
