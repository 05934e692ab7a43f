#include "qlr/complex_repr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlr/error.hpp"

namespace qlr {

cplx inner(const CVec2& x, const CVec2& y) noexcept { return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1]; }

double norm2(const CVec2& x) noexcept { return std::norm(x[0]) + std::norm(x[1]); }

CVec2 apply(const CMat2& m, const CVec2& x) noexcept {
    return {m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]};
}

HermitianEigen eigen_hermitian(const CMat2& m) {
    const double p = m[0][0].real();
    const double q = m[1][1].real();
    const cplx off = m[0][1];
    const double mid = 0.5 * (p + q);
    const double half = 0.5 * (p - q);
    const double r = std::hypot(half, std::abs(off));

    HermitianEigen e;
    e.values = {mid - r, mid + r};
    if (r == 0.0) {
        e.vectors = {CVec2{1.0, 0.0}, CVec2{0.0, 1.0}};
        return e;
    }
    // Eigenvector for lambda: (off, lambda - p) or (lambda - q, conj(off)); pick the
    // better-conditioned form for each eigenvalue.
    for (int k = 0; k < 2; ++k) {
        const double lam = e.values[k];
        CVec2 v1{off, lam - p};
        CVec2 v2{lam - q, std::conj(off)};
        CVec2 v = norm2(v1) >= norm2(v2) ? v1 : v2;
        const double n = std::sqrt(norm2(v));
        e.vectors[k] = {v[0] / n, v[1] / n};
    }
    return e;
}

namespace {

void require_trigonometric(const ContextData& d, const InterferenceProfile& profile) {
    switch (profile.classification) {
        case Classification::Trigonometric: return;
        case Classification::Degenerate:
            if (profile.representable) return;
            throw RepresentationRefused("degenerate-nonrepresentable",
                                        "context '" + d.context_id + "' has a vanishing denominator with nonzero delta");
        case Classification::Hyperbolic:
            throw RepresentationRefused("hyperbolic-classification",
                                        "context '" + d.context_id + "' needs a hyperbolic amplitude");
        case Classification::MixedHyperTrigonometric:
            throw RepresentationRefused("mixed-classification",
                                        "context '" + d.context_id + "' has no amplitude representation");
    }
}

std::array<double, 2> phases_for(const InterferenceProfile& profile, bool ds) {
    const double theta1 = std::acos(std::clamp(*profile.terms[0].lambda, -1.0, 1.0));
    const double theta2 = ds ? theta1 - std::numbers::pi : -std::acos(std::clamp(*profile.terms[1].lambda, -1.0, 1.0));
    return {theta1, theta2};
}

// e^{i theta} for the two phases; the second is the exact negation of the first
// when theta2 = theta1 - pi so orthogonality does not suffer from rounding in pi.
std::array<cplx, 2> phase_factors(const std::array<double, 2>& phases, bool ds) {
    const cplx e1 = std::polar(1.0, phases[0]);
    return {e1, ds ? -e1 : std::polar(1.0, phases[1])};
}

CVec2 raw_amplitude(const ContextData& d, const std::array<cplx, 2>& e) {
    CVec2 phi;
    for (Outcome beta : kOutcomes) {
        const double first = std::sqrt(std::max(0.0, d.pa(0) * d.b_a(beta, 0)));
        const double second = std::sqrt(std::max(0.0, d.pa(1) * d.b_a(beta, 1)));
        phi[beta] = first + e[beta] * second;
    }
    return phi;
}

std::array<CVec2, 2> eigenbasis(const ContextData& d, const std::array<cplx, 2>& e) {
    const auto s = [&](Outcome beta, Outcome alpha) { return std::sqrt(std::max(0.0, d.b_a(beta, alpha))); };
    return {CVec2{s(0, 0), s(1, 0)}, CVec2{e[0] * s(0, 1), e[1] * s(1, 1)}};
}

}  // namespace

ComplexAmplitude construct_amplitude(const ContextData& d, const InterferenceProfile& profile, double tolerance) {
    require_trigonometric(d, profile);
    ComplexAmplitude amp;
    amp.context_id = d.context_id;
    amp.operator_complete = is_doubly_stochastic(d, tolerance);
    amp.phases = phases_for(profile, amp.operator_complete);
    const CVec2 raw = raw_amplitude(d, phase_factors(amp.phases, amp.operator_complete));

    const Outcome lead = std::abs(raw[0]) > 0.0 ? 0 : 1;
    const double mag = std::abs(raw[lead]);
    amp.gauge = mag > 0.0 ? std::conj(raw[lead]) / mag : cplx{1.0, 0.0};
    amp.components = {amp.gauge * raw[0], amp.gauge * raw[1]};
    amp.components[lead] = cplx{mag, 0.0};
    return amp;
}

std::array<CVec2, 2> eigenbasis_from_table(const ContextData& d, const std::array<double, 2>& phases) {
    return eigenbasis(d, {std::polar(1.0, phases[0]), std::polar(1.0, phases[1])});
}

ObservableOperators construct_operators(const ContextData& d, const InterferenceProfile& profile,
                                        const ObservablePair& spectra, double tolerance) {
    require_trigonometric(d, profile);
    if (!is_doubly_stochastic(d, tolerance)) {
        throw RepresentationRefused("double-stochasticity",
                                    "context '" + d.context_id +
                                        "': columns of b_given_a do not sum to one, so the operator for a "
                                        "would not reproduce p_a");
    }
    const ComplexAmplitude amp = construct_amplitude(d, profile, tolerance);
    const auto e = phase_factors(amp.phases, true);

    ObservableOperators ops;
    ops.b_op = {{{spectra.spectrum_b[0], 0.0}, {0.0, spectra.spectrum_b[1]}}};
    ops.a_eigenbasis = eigenbasis(d, e);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cplx acc = 0.0;
            for (Outcome alpha : kOutcomes) {
                const auto& u = ops.a_eigenbasis[alpha];
                acc += spectra.spectrum_a[alpha] * u[i] * std::conj(u[j]);
            }
            ops.a_op[i][j] = acc;
        }
    }
    // Force exact self-adjointness; the products above agree up to rounding.
    ops.a_op[0][0] = ops.a_op[0][0].real();
    ops.a_op[1][1] = ops.a_op[1][1].real();
    ops.a_op[1][0] = std::conj(ops.a_op[0][1]);

    const auto& u = ops.a_eigenbasis;
    ops.orthonormality_defect = std::max({std::abs(norm2(u[0]) - 1.0), std::abs(norm2(u[1]) - 1.0),
                                          std::abs(inner(u[0], u[1]))});
    const CVec2 raw = raw_amplitude(d, e);
    for (Outcome beta : kOutcomes) {
        const cplx sum = std::sqrt(d.pa(0)) * u[0][beta] + std::sqrt(d.pa(1)) * u[1][beta];
        ops.decomposition_defect = std::max(ops.decomposition_defect, std::abs(raw[beta] - sum));
    }
    const double bound = std::max(8.0 * kFloatEps, 10.0 * tolerance);
    if (ops.orthonormality_defect > bound) {
        throw RepresentationRefused("orthonormality", "context '" + d.context_id +
                                                          "': eigenbasis of a is not orthonormal (defect " +
                                                          std::to_string(ops.orthonormality_defect) + ")");
    }
    return ops;
}

double BornResiduals::max() const noexcept { return std::max({b[0], b[1], a[0], a[1]}); }

BornResiduals born_check(const ComplexAmplitude& phi, const ObservableOperators& ops, const ContextData& d) {
    BornResiduals r;
    for (Outcome beta : kOutcomes) r.b[beta] = std::abs(std::norm(phi.components[beta]) - d.pb(beta));
    for (Outcome alpha : kOutcomes) {
        r.a[alpha] = std::abs(std::norm(inner(ops.a_eigenbasis[alpha], phi.components)) - d.pa(alpha));
    }
    return r;
}

ContextData quantum_oracle_generate(const CVec2& state, const std::array<CVec2, 2>& a_basis,
                                    std::string context_id) {
    constexpr double tol = 1e-12;
    if (std::abs(norm2(state) - 1.0) > tol) throw InvalidInput("oracle state is not normalized");
    if (std::abs(norm2(a_basis[0]) - 1.0) > tol || std::abs(norm2(a_basis[1]) - 1.0) > tol ||
        std::abs(inner(a_basis[0], a_basis[1])) > tol)
        throw InvalidInput("oracle basis is not orthonormal");

    ContextData d;
    d.context_id = std::move(context_id);
    TransitionMatrix a_given_b;
    for (Outcome beta : kOutcomes) d.p_b[beta] = std::norm(state[beta]);
    for (Outcome alpha : kOutcomes) {
        d.p_a[alpha] = std::norm(inner(a_basis[alpha], state));
        for (Outcome beta : kOutcomes) {
            const double t = std::norm(a_basis[alpha][beta]);
            d.b_given_a[alpha][beta] = t;
            a_given_b[beta][alpha] = t;
        }
    }
    d.a_given_b = a_given_b;
    return d;
}

CVec2 haar_state(RngStream& rng) {
    CVec2 v;
    double n = 0.0;
    do {
        v = {cplx{rng.normal(), rng.normal()}, cplx{rng.normal(), rng.normal()}};
        n = std::sqrt(norm2(v));
    } while (n == 0.0);
    return {v[0] / n, v[1] / n};
}

std::array<CVec2, 2> haar_basis(RngStream& rng) {
    const CVec2 u = haar_state(rng);
    const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    return {u, CVec2{-phase * std::conj(u[1]), phase * std::conj(u[0])}};
}

SumAverages averages_and_sum(const ComplexAmplitude& phi, const ObservableOperators& ops) {
    const auto& v = phi.components;
    const double pn = norm2(v);
    SumAverages s;
    s.mean_a = inner(v, qlr::apply(ops.a_op, v)).real() / pn;
    s.mean_b = inner(v, qlr::apply(ops.b_op, v)).real() / pn;
    CMat2 sum;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) sum[i][j] = ops.a_op[i][j] + ops.b_op[i][j];
    s.mean_sum_op = inner(v, qlr::apply(sum, v)).real() / pn;
    s.eigvals_sum_op = eigen_hermitian(sum).values;
    s.linearity_residual = std::abs(s.mean_sum_op - (s.mean_a + s.mean_b));
    return s;
}

}  // namespace qlr
