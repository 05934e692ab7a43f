#include "qlr/sum_observable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qlr/error.hpp"
#include "qlr/rng.hpp"

namespace qlr {

OnticSum ontic_sum_mean(const EnsembleModel& m, const std::string& context_id, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw SimulationError("sample size must be at least 1");
    const Distribution& prep = m.preparation(context_id);
    const CounterRng rng(seed);
    const std::uint64_t stream = stream_id(context_id, "joint");
    const auto& sa = m.observables.spectrum_a;
    const auto& sb = m.observables.spectrum_b;

    OnticSum out;
    out.n = n;
    std::array<std::array<std::size_t, 2>, 2> counts{};
    for (std::size_t i = 0; i < n; ++i) {
        const auto u = rng.uniforms(stream, 2 * i);
        const auto v = rng.uniforms(stream, 2 * i + 1);
        double cum = 0.0;
        std::size_t s = prep.size() - 1;
        for (std::size_t k = 0; k < prep.size(); ++k) {
            if (prep[k] <= 0.0) continue;
            cum += prep[k];
            s = k;
            if (u[0] < cum) break;
        }
        const Outcome a = u[1] < m.respond_a[s][0] ? 0 : 1;
        const Outcome b = v[0] < m.respond_b[s][0] ? 0 : 1;
        ++counts[a][b];
    }
    double sum = 0.0;
    double sum2 = 0.0;
    for (Outcome a : kOutcomes) {
        for (Outcome b : kOutcomes) {
            if (counts[a][b] == 0) continue;
            const double d = sa[a] + sb[b];
            out.support[d] += counts[a][b];
            sum += d * static_cast<double>(counts[a][b]);
            sum2 += d * d * static_cast<double>(counts[a][b]);
        }
    }
    const double nn = static_cast<double>(n);
    out.mean = sum / nn;
    const double var = std::max(0.0, sum2 / nn - out.mean * out.mean);
    out.standard_error = std::sqrt(var / nn);
    return out;
}

SumReport sum_observable_comparison(const EnsembleModel& m, const std::string& context_id, std::size_t n,
                                    std::uint64_t seed, double z) {
    SumReport rep;
    rep.context_id = context_id;
    rep.z = z;
    const SimulationRun run = simulate_context(m, context_id, n, seed);
    rep.estimate = run.estimate;
    const ContextData& est = rep.estimate.data;
    const StandardErrors& se = rep.estimate.se;

    for (Outcome beta : kOutcomes) {
        const double col = est.b_a(beta, 0) + est.b_a(beta, 1);
        const double bound = z * std::hypot(se.b_given_a[0][beta], se.b_given_a[1][beta]);
        if (!(std::abs(col - 1.0) <= bound)) {
            throw RepresentationRefused("double-stochasticity",
                                        "context '" + context_id + "': column " + std::to_string(beta) +
                                            " of the estimated transition table sums to " + std::to_string(col) +
                                            " (outside " + std::to_string(z) + " standard errors)");
        }
    }

    // Nearest doubly stochastic table [[t, 1-t], [1-t, t]].
    rep.regularized = est;
    const double t = 0.5 * (est.b_a(0, 0) + est.b_a(1, 1));
    rep.regularized.b_given_a = {ProbabilityVector{t, 1.0 - t}, ProbabilityVector{1.0 - t, t}};

    rep.profile = classify_context(rep.regularized);
    if (rep.profile.classification != Classification::Trigonometric &&
        !(rep.profile.classification == Classification::Degenerate && rep.profile.representable)) {
        throw RepresentationRefused(to_string(rep.profile.classification) + "-classification",
                                    "context '" + context_id + "' has no complex representation");
    }
    const ComplexAmplitude phi = construct_amplitude(rep.regularized, rep.profile);
    const ObservableOperators ops = construct_operators(rep.regularized, rep.profile, m.observables);
    rep.quantum = averages_and_sum(phi, ops);

    const auto& sa = m.observables.spectrum_a;
    const auto& sb = m.observables.spectrum_b;
    const double mean_a = sa[0] * est.pa(0) + sa[1] * est.pa(1);
    const double mean_b = sb[0] * est.pb(0) + sb[1] * est.pb(1);
    rep.marginal_sum = mean_a + mean_b;
    // Var of a two-point variable from its estimated frequency, over N draws each.
    const double nn = static_cast<double>(n);
    const double var_a = est.pa(0) * est.pa(1) * (sa[0] - sa[1]) * (sa[0] - sa[1]);
    const double var_b = est.pb(0) * est.pb(1) * (sb[0] - sb[1]) * (sb[0] - sb[1]);
    rep.marginal_se = std::sqrt(var_a / nn + var_b / nn);

    rep.ontic = ontic_sum_mean(m, context_id, n, seed);

    const double se_om = std::hypot(rep.ontic.standard_error, rep.marginal_se);
    rep.ontic_vs_marginal_ok = std::abs(rep.ontic.mean - rep.marginal_sum) <= z * se_om;
    const double scale = std::max({1.0, std::abs(sa[0]) + std::abs(sb[0]), std::abs(sa[1]) + std::abs(sb[1])});
    rep.marginal_vs_quantum_ok = std::abs(rep.quantum.mean_sum_op - rep.marginal_sum) <= 64.0 * kFloatEps * scale;
    rep.ontic_vs_quantum_ok = std::abs(rep.ontic.mean - rep.quantum.mean_sum_op) <= z * se_om;

    rep.spectral_sums = {sa[0] + sb[0], sa[0] + sb[1], sa[1] + sb[0], sa[1] + sb[1]};
    for (double ev : rep.quantum.eigvals_sum_op) {
        double best = std::numeric_limits<double>::infinity();
        for (double s : rep.spectral_sums) best = std::min(best, std::abs(ev - s));
        rep.eigenvalue_mismatch = std::max(rep.eigenvalue_mismatch, best);
    }
    return rep;
}

}  // namespace qlr
