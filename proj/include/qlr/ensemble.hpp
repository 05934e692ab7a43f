#pragma once

// Finite hidden-state ensembles that realize contexts as populations of systems.
// Each context prepares hidden states from its own distribution; a and b respond
// stochastically per hidden state; measuring a disturbs the hidden state through
// a transition kernel conditioned on the a-outcome. Filtration contexts C_alpha
// are derived from C by post-selection on a = alpha followed by that back-action.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qlr/frequency.hpp"
#include "qlr/model.hpp"

namespace qlr {

using Distribution = std::vector<double>;

struct EnsembleModel {
    std::vector<std::string> states;
    std::map<std::string, Distribution> prepare;  ///< context id -> distribution over states
    std::vector<std::array<double, 2>> respond_a;  ///< per state, over the a-spectrum
    std::vector<std::array<double, 2>> respond_b;  ///< per state, over the b-spectrum
    std::vector<std::array<Distribution, 2>> disturb_a;  ///< [state][alpha] -> next-state distribution
    ObservablePair observables;

    std::size_t state_count() const noexcept { return states.size(); }
    const Distribution& preparation(const std::string& context_id) const;

    /// Throws InvalidInput when shapes disagree or a distribution is not normalized.
    void check(double tolerance = kProbTolerance) const;

    /// Identity back-action kernel for `n` states.
    static std::vector<std::array<Distribution, 2>> identity_disturbance(std::size_t n);
};

/// Closed-form probabilities of a context, enumerated over the hidden states.
struct ExactContext {
    ContextData data;  ///< includes a_given_b (b-selection has no back-action)
    std::array<std::array<double, 2>, 2> joint{};  ///< P(a = alpha, b = beta) for one undisturbed system
    std::array<Distribution, 2> post_filtration;   ///< hidden-state distribution after selecting a = alpha
};

ExactContext enumerate_context(const EnsembleModel& m, const std::string& context_id);

/// True when after selecting a = alpha the disturbed state still answers alpha with certainty.
bool is_alpha_preserving(const EnsembleModel& m, Outcome alpha);

/// Acceptance probability below this aborts a filtration run.
inline constexpr double kMinAcceptance = 1e-6;

/// N systems prepared by the context, each measured once for `which`.
Collective simulate_collectives(const EnsembleModel& m, const std::string& context_id, Observable which,
                                std::size_t n, std::uint64_t seed);

struct FiltrationRun {
    Collective b_outcomes;          ///< x^alpha
    Collective a_remeasured;        ///< a measured again right after the back-action
    std::uint64_t attempts = 0;     ///< systems drawn including rejected ones
};

/// Rejection sampling on a = alpha, back-action, then b. Throws SimulationError when
/// the acceptance probability is below kMinAcceptance.
FiltrationRun simulate_filtration(const EnsembleModel& m, const std::string& context_id, Outcome alpha,
                                  std::size_t n_accepted, std::uint64_t seed);

/// y^beta: selection on b = beta (no back-action), then a.
Collective simulate_b_filtration(const EnsembleModel& m, const std::string& context_id, Outcome beta,
                                 std::size_t n_accepted, std::uint64_t seed);

struct SimulationRun {
    CollectiveSet collectives;
    EstimatedContext estimate;
};

/// All collectives of one context (run concurrently) and the estimated data.
SimulationRun simulate_context(const EnsembleModel& m, const std::string& context_id, std::size_t n,
                               std::uint64_t seed, bool with_a_given_b = false);

}  // namespace qlr
