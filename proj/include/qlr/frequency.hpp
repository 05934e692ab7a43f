#pragma once

// Collectives (finite outcome sequences), their relative frequencies, the
// stabilization diagnostic, and estimation of context data from collectives.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qlr/model.hpp"

namespace qlr {

enum class Observable { A, B };

std::string to_string(Observable o);

/// Selection applied before the recorded measurement: keep systems where `observable`
/// gave `outcome`.
struct Filtration {
    Observable observable = Observable::A;
    Outcome outcome = 0;

    friend bool operator==(const Filtration&, const Filtration&) = default;
};

struct Collective {
    Observable observable = Observable::B;
    std::string context_id;
    std::optional<Filtration> filtration;
    std::vector<std::uint8_t> outcomes;
    std::uint64_t seed = 0;

    std::size_t size() const noexcept { return outcomes.size(); }
};

/// Occurrences of `outcome` among the first `upto` entries divided by `upto`.
/// Throws InvalidInput unless 1 <= upto <= size.
double relative_frequency(const Collective& c, Outcome outcome, std::size_t upto);

/// Drift between successive checkpoints is flagged when it exceeds
/// kDriftFactor / sqrt(N) at the earlier checkpoint N.
inline constexpr double kDriftFactor = 5.0;

struct StabilizationReport {
    std::vector<std::size_t> checkpoints;
    std::array<std::vector<double>, 2> trajectory;  ///< nu_N per outcome at each checkpoint
    std::array<double, 2> terminal{};               ///< frequency over the whole collective
    std::vector<double> drift;                      ///< |nu_k - nu_{k-1}|, one per checkpoint after the first
    std::vector<double> drift_bound;
    bool flagged = false;

    // Present when reference probabilities were supplied.
    std::optional<std::array<double, 2>> reference;
    std::vector<double> envelope_bound;  ///< z sqrt(p (1 - p) / N) for outcome 0
    std::vector<bool> within_envelope;
    bool envelope_ok = true;
};

/// Frequencies at strictly increasing checkpoints (each <= size). Optionally compare
/// against reference probabilities with a z-sigma binomial envelope.
StabilizationReport stabilization_diagnostic(const Collective& c, const std::vector<std::size_t>& checkpoints,
                                             std::optional<std::array<double, 2>> reference = std::nullopt,
                                             double z = 4.0);

/// Collectives needed to estimate one context's data.
struct CollectiveSet {
    std::optional<Collective> b;                         ///< x(b/C)
    std::optional<Collective> a;                         ///< y(a/C)
    std::array<std::optional<Collective>, 2> b_after_a;  ///< x^alpha = x(b/C_alpha)
    std::array<std::optional<Collective>, 2> a_after_b;  ///< y^beta = y(a/C_beta); both or neither
};

struct EstimatedContext {
    ContextData data;
    StandardErrors se;
    std::size_t min_sample = 0;
};

/// Terminal relative frequencies with sqrt(nu (1 - nu) / N) errors. Throws InvalidInput
/// for a missing or inconsistently tagged collective.
EstimatedContext estimate_context_data(const CollectiveSet& xs);

/// Header line "# observable=b context=C seed=7 n=3 filtration=a:0" then one outcome
/// index per line.
void write_collective(std::ostream& os, const Collective& c);
Collective read_collective(std::istream& is);

}  // namespace qlr
