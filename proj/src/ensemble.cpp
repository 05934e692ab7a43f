#include "qlr/ensemble.hpp"

#include <cmath>
#include <future>
#include <numeric>

#include "qlr/error.hpp"
#include "qlr/rng.hpp"

namespace qlr {

const Distribution& EnsembleModel::preparation(const std::string& context_id) const {
    auto it = prepare.find(context_id);
    if (it == prepare.end()) throw SimulationError("unknown context '" + context_id + "' in ensemble model");
    return it->second;
}

namespace {

void check_distribution(const double* p, std::size_t n, double tol, const std::string& what) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(p[i] >= 0.0 && p[i] <= 1.0 + tol)) throw InvalidInput(what + " has an entry outside [0,1]");
        sum += p[i];
    }
    if (!(std::abs(sum - 1.0) <= tol)) throw InvalidInput(what + " sums to " + std::to_string(sum));
}

std::size_t sample(const double* p, std::size_t n, double u) {
    double cum = 0.0;
    std::size_t last = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] <= 0.0) continue;
        cum += p[i];
        last = i;
        if (u < cum) return i;
    }
    return last;  // u beyond the rounded total
}

std::size_t sample(const Distribution& p, double u) { return sample(p.data(), p.size(), u); }
std::size_t sample(const std::array<double, 2>& p, double u) { return sample(p.data(), 2, u); }

std::string filtration_purpose(const char* tag, Outcome o) { return std::string(tag) + std::to_string(o); }

}  // namespace

void EnsembleModel::check(double tolerance) const {
    const std::size_t n = states.size();
    if (n == 0) throw InvalidInput("ensemble model has no hidden states");
    if (respond_a.size() != n || respond_b.size() != n || disturb_a.size() != n)
        throw InvalidInput("ensemble model tables must have one row per hidden state");
    if (prepare.empty()) throw InvalidInput("ensemble model prepares no contexts");
    observables.check();
    for (const auto& [ctx, dist] : prepare) {
        if (dist.size() != n) throw InvalidInput("preparation of '" + ctx + "' has the wrong length");
        check_distribution(dist.data(), n, tolerance, "preparation of '" + ctx + "'");
    }
    for (std::size_t s = 0; s < n; ++s) {
        check_distribution(respond_a[s].data(), 2, tolerance, "respond_a of state '" + states[s] + "'");
        check_distribution(respond_b[s].data(), 2, tolerance, "respond_b of state '" + states[s] + "'");
        for (Outcome alpha : kOutcomes) {
            const auto& k = disturb_a[s][alpha];
            const std::string what = "disturb_a of state '" + states[s] + "' for outcome " + std::to_string(alpha);
            if (k.size() != n) throw InvalidInput(what + " has the wrong length");
            check_distribution(k.data(), n, tolerance, what);
        }
    }
}

std::vector<std::array<Distribution, 2>> EnsembleModel::identity_disturbance(std::size_t n) {
    std::vector<std::array<Distribution, 2>> k(n);
    for (std::size_t s = 0; s < n; ++s) {
        for (Outcome alpha : kOutcomes) {
            k[s][alpha].assign(n, 0.0);
            k[s][alpha][s] = 1.0;
        }
    }
    return k;
}

ExactContext enumerate_context(const EnsembleModel& m, const std::string& context_id) {
    const Distribution& prep = m.preparation(context_id);
    const std::size_t n = m.state_count();
    ExactContext ex;
    ex.data.context_id = context_id;

    std::array<double, 2> pa{}, pb{};
    for (std::size_t s = 0; s < n; ++s) {
        for (Outcome alpha : kOutcomes) {
            pa[alpha] += prep[s] * m.respond_a[s][alpha];
            for (Outcome beta : kOutcomes) ex.joint[alpha][beta] += prep[s] * m.respond_a[s][alpha] * m.respond_b[s][beta];
        }
        for (Outcome beta : kOutcomes) pb[beta] += prep[s] * m.respond_b[s][beta];
    }
    ex.data.p_a = {pa[0], pa[1]};
    ex.data.p_b = {pb[0], pb[1]};

    for (Outcome alpha : kOutcomes) {
        Distribution post(n, 0.0);
        for (std::size_t s = 0; s < n; ++s) {
            const double w = prep[s] * m.respond_a[s][alpha];
            if (w == 0.0) continue;
            for (std::size_t t = 0; t < n; ++t) post[t] += w * m.disturb_a[s][alpha][t];
        }
        std::array<double, 2> row{};
        if (pa[alpha] > 0.0) {
            for (auto& x : post) x /= pa[alpha];
            for (std::size_t t = 0; t < n; ++t)
                for (Outcome beta : kOutcomes) row[beta] += post[t] * m.respond_b[t][beta];
        } else {
            // C_alpha is never realized from this context; the row is conventional.
            row = {0.5, 0.5};
        }
        ex.data.b_given_a[alpha] = {row[0], row[1]};
        ex.post_filtration[alpha] = std::move(post);
    }

    TransitionMatrix a_given_b;
    for (Outcome beta : kOutcomes) {
        if (pb[beta] > 0.0) {
            a_given_b[beta] = {ex.joint[0][beta] / pb[beta], ex.joint[1][beta] / pb[beta]};
        } else {
            a_given_b[beta] = {0.5, 0.5};
        }
    }
    ex.data.a_given_b = a_given_b;
    return ex;
}

bool is_alpha_preserving(const EnsembleModel& m, Outcome alpha) {
    const std::size_t n = m.state_count();
    for (std::size_t s = 0; s < n; ++s) {
        if (m.respond_a[s][alpha] == 0.0) continue;
        for (std::size_t t = 0; t < n; ++t) {
            if (m.disturb_a[s][alpha][t] > 0.0 && m.respond_a[t][alpha] != 1.0) return false;
        }
    }
    return true;
}

Collective simulate_collectives(const EnsembleModel& m, const std::string& context_id, Observable which,
                                std::size_t n, std::uint64_t seed) {
    if (n < 1) throw SimulationError("collective length must be at least 1");
    const Distribution& prep = m.preparation(context_id);
    const CounterRng rng(seed);
    const std::uint64_t stream = stream_id(context_id, to_string(which));
    const auto& respond = which == Observable::A ? m.respond_a : m.respond_b;

    Collective c;
    c.observable = which;
    c.context_id = context_id;
    c.seed = seed;
    c.outcomes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto u = rng.uniforms(stream, i);
        const std::size_t s = sample(prep, u[0]);
        c.outcomes[i] = static_cast<std::uint8_t>(sample(respond[s], u[1]));
    }
    return c;
}

FiltrationRun simulate_filtration(const EnsembleModel& m, const std::string& context_id, Outcome alpha,
                                  std::size_t n_accepted, std::uint64_t seed) {
    if (alpha > 1) throw InvalidInput("outcome index out of range: " + std::to_string(alpha));
    if (n_accepted < 1) throw SimulationError("collective length must be at least 1");
    const Distribution& prep = m.preparation(context_id);
    const double acceptance = enumerate_context(m, context_id).data.pa(alpha);
    if (acceptance < kMinAcceptance) {
        throw SimulationError("filtration on a=" + std::to_string(alpha) + " under context '" + context_id +
                              "' accepts with probability " + std::to_string(acceptance) + " (< 1e-6)");
    }

    const CounterRng rng(seed);
    const std::uint64_t stream = stream_id(context_id, filtration_purpose("filter-a", alpha));
    const std::uint64_t remeasure_stream = stream_id(context_id, filtration_purpose("remeasure-a", alpha));

    FiltrationRun run;
    run.b_outcomes.observable = Observable::B;
    run.b_outcomes.context_id = context_id;
    run.b_outcomes.filtration = Filtration{Observable::A, alpha};
    run.b_outcomes.seed = seed;
    run.b_outcomes.outcomes.reserve(n_accepted);
    run.a_remeasured = run.b_outcomes;
    run.a_remeasured.observable = Observable::A;

    std::uint64_t j = 0;
    while (run.b_outcomes.size() < n_accepted) {
        const auto u = rng.uniforms(stream, 2 * j);
        ++j;
        const std::size_t s = sample(prep, u[0]);
        if (sample(m.respond_a[s], u[1]) != alpha) continue;
        const auto v = rng.uniforms(stream, 2 * j - 1);
        const std::size_t t = sample(m.disturb_a[s][alpha], v[0]);
        const auto w = rng.uniforms(remeasure_stream, run.b_outcomes.size());
        run.a_remeasured.outcomes.push_back(static_cast<std::uint8_t>(sample(m.respond_a[t], w[0])));
        run.b_outcomes.outcomes.push_back(static_cast<std::uint8_t>(sample(m.respond_b[t], v[1])));
    }
    run.attempts = j;
    return run;
}

Collective simulate_b_filtration(const EnsembleModel& m, const std::string& context_id, Outcome beta,
                                 std::size_t n_accepted, std::uint64_t seed) {
    if (beta > 1) throw InvalidInput("outcome index out of range: " + std::to_string(beta));
    if (n_accepted < 1) throw SimulationError("collective length must be at least 1");
    const Distribution& prep = m.preparation(context_id);
    const double acceptance = enumerate_context(m, context_id).data.pb(beta);
    if (acceptance < kMinAcceptance) {
        throw SimulationError("filtration on b=" + std::to_string(beta) + " under context '" + context_id +
                              "' accepts with probability " + std::to_string(acceptance) + " (< 1e-6)");
    }
    const CounterRng rng(seed);
    const std::uint64_t stream = stream_id(context_id, filtration_purpose("filter-b", beta));

    Collective c;
    c.observable = Observable::A;
    c.context_id = context_id;
    c.filtration = Filtration{Observable::B, beta};
    c.seed = seed;
    c.outcomes.reserve(n_accepted);
    for (std::uint64_t j = 0; c.size() < n_accepted; ++j) {
        const auto u = rng.uniforms(stream, 2 * j);
        const std::size_t s = sample(prep, u[0]);
        if (sample(m.respond_b[s], u[1]) != beta) continue;
        const auto v = rng.uniforms(stream, 2 * j + 1);
        c.outcomes.push_back(static_cast<std::uint8_t>(sample(m.respond_a[s], v[0])));
    }
    return c;
}

SimulationRun simulate_context(const EnsembleModel& m, const std::string& context_id, std::size_t n,
                               std::uint64_t seed, bool with_a_given_b) {
    m.preparation(context_id);
    auto fb = std::async(std::launch::async, [&] { return simulate_collectives(m, context_id, Observable::B, n, seed); });
    auto fa = std::async(std::launch::async, [&] { return simulate_collectives(m, context_id, Observable::A, n, seed); });
    std::array<std::future<FiltrationRun>, 2> ff;
    for (Outcome alpha : kOutcomes) {
        ff[alpha] = std::async(std::launch::async,
                               [&, alpha] { return simulate_filtration(m, context_id, alpha, n, seed); });
    }
    std::array<std::future<Collective>, 2> fy;
    if (with_a_given_b) {
        for (Outcome beta : kOutcomes) {
            fy[beta] = std::async(std::launch::async,
                                  [&, beta] { return simulate_b_filtration(m, context_id, beta, n, seed); });
        }
    }

    SimulationRun run;
    run.collectives.b = fb.get();
    run.collectives.a = fa.get();
    for (Outcome alpha : kOutcomes) run.collectives.b_after_a[alpha] = ff[alpha].get().b_outcomes;
    if (with_a_given_b) {
        for (Outcome beta : kOutcomes) run.collectives.a_after_b[beta] = fy[beta].get();
    }
    run.estimate = estimate_context_data(run.collectives);
    return run;
}

}  // namespace qlr
