#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qlr/complex_repr.hpp"
#include "qlr/error.hpp"
#include "qlr/rng.hpp"
#include "support.hpp"

using namespace qlr;
using qlr::test::kEps;

namespace {

std::string refusal(auto&& f) {
    try {
        f();
    } catch (const RepresentationRefused& e) {
        return e.precondition();
    }
    return "";
}

}  // namespace

TEST_CASE("amplitude has unit norm and canonical global phase") {
    const auto d = test::lambda_half();
    const auto amp = construct_amplitude(d, classify_context(d));
    CHECK(norm2(amp.components) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(amp.components[0].imag() == 0.0);
    CHECK(amp.components[0].real() >= 0.0);
    CHECK(amp.operator_complete);
}

TEST_CASE("deterministic context gives a single-branch amplitude") {
    const auto d = test::make_context(1.0, 1.0, 1.0, 1.0);
    const auto amp = construct_amplitude(d, classify_context(d));
    CHECK(std::abs(amp.components[0]) == doctest::Approx(1.0));
    CHECK(std::abs(amp.components[1]) == 0.0);
}

TEST_CASE("refusals name the violated precondition") {
    const auto h = test::hyperbolic_fixture();
    CHECK(refusal([&] { construct_amplitude(h, classify_context(h)); }) == "hyperbolic-classification");
    const auto m = test::make_context(0.5, 0.9, 0.9, 0.75);
    CHECK(refusal([&] { construct_amplitude(m, classify_context(m)); }) == "mixed-classification");
    auto g = test::make_context(1.0, 0.5, 0.5, 0.6);
    CHECK(refusal([&] { construct_amplitude(g, classify_context(g)); }) == "degenerate-nonrepresentable");
    const auto n = test::make_context(0.5, 0.6, 0.6, 0.6);
    CHECK(refusal([&] { construct_operators(n, classify_context(n), ObservablePair{}); }) == "double-stochasticity");
}

TEST_CASE("non doubly stochastic amplitude is flagged operator-incomplete") {
    const auto n = test::make_context(0.3, 0.6, 0.6, 0.62);
    const auto amp = construct_amplitude(n, classify_context(n));
    CHECK_FALSE(amp.operator_complete);
    CHECK(std::norm(amp.components[0]) == doctest::Approx(0.62).epsilon(1e-14));
}

TEST_CASE("operators: Hermitian, orthonormal basis, spectra") {
    const auto d = test::make_context(0.8, 0.75, 0.25, 0.8);
    const auto p = classify_context(d);
    ObservablePair obs;
    obs.spectrum_a = {2.0, -0.5};
    obs.spectrum_b = {3.0, 1.0};
    const auto ops = construct_operators(d, p, obs);
    CHECK(ops.orthonormality_defect <= 8 * kEps);
    CHECK(ops.decomposition_defect <= 8 * kEps);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(ops.a_op[i][j] - std::conj(ops.a_op[j][i])) <= 1e-15);
    const auto ea = eigen_hermitian(ops.a_op);
    CHECK(ea.values[0] == doctest::Approx(-0.5));
    CHECK(ea.values[1] == doctest::Approx(2.0));
    CHECK(ops.b_op[0][0].real() == 3.0);
    CHECK(ops.b_op[1][1].real() == 1.0);
    for (Outcome alpha : kOutcomes)
        for (Outcome beta : kOutcomes)
            CHECK(std::norm(ops.a_eigenbasis[alpha][beta]) == doctest::Approx(d.b_a(beta, alpha)).epsilon(1e-15));
}

TEST_CASE("born check: residuals and sensitivity") {
    const auto d = test::lambda_half();
    const auto p = classify_context(d);
    const auto amp = construct_amplitude(d, p);
    const auto ops = construct_operators(d, p, ObservablePair{});
    CHECK(born_check(amp, ops, d).max() <= 8 * kEps);
    auto moved = d;
    moved.p_b = {0.751, 0.249};
    const auto r = born_check(amp, ops, moved);
    CHECK(r.b[0] == doctest::Approx(1e-3).epsilon(1e-9));
}

TEST_CASE("eigen_hermitian of a diagonal and a general matrix") {
    const CMat2 diag{{{cplx{2, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{-1, 0}}}};
    const auto e = eigen_hermitian(diag);
    CHECK(e.values[0] == -1.0);
    CHECK(e.values[1] == 2.0);
    const CMat2 m{{{cplx{1, 0}, cplx{0.3, -0.4}}, {cplx{0.3, 0.4}, cplx{-2, 0}}}};
    const auto f = eigen_hermitian(m);
    for (int k = 0; k < 2; ++k) {
        const auto mv = apply(m, f.vectors[k]);
        for (int i = 0; i < 2; ++i) CHECK(std::abs(mv[i] - f.values[k] * f.vectors[k][i]) <= 1e-14);
    }
    CHECK(std::abs(inner(f.vectors[0], f.vectors[1])) <= 1e-15);
}

TEST_CASE("qubit oracle: eigenstate gives a filtration context") {
    const CounterRng rng(3);
    RngStream s(rng, stream_id("test", "oracle"));
    const auto basis = haar_basis(s);
    const auto d = quantum_oracle_generate(basis[0], basis, "F");
    CHECK(d.pa(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.a_given_b.has_value());
    CHECK(is_doubly_stochastic(d));
    CHECK_THROWS_AS(quantum_oracle_generate(CVec2{cplx{2, 0}, cplx{0, 0}}, basis, "bad"), InvalidInput);
}

TEST_CASE("qubit oracle round trip on Haar samples") {
    const CounterRng rng(17);
    for (int t = 0; t < 200; ++t) {
        RngStream s(rng, stream_id("test", std::to_string(t)));
        const auto psi = haar_state(s);
        const auto basis = haar_basis(s);
        const auto d = quantum_oracle_generate(psi, basis, "Q");
        const auto p = classify_context(d);
        REQUIRE(p.classification == Classification::Trigonometric);
        const auto amp = construct_amplitude(d, p);
        const auto ops = construct_operators(d, p, ObservablePair{});
        CHECK(born_check(amp, ops, d).max() <= 1e-12);
        const auto sym = symmetry_diagnostic(d);
        CHECK(sym.a_given_b.classification == Classification::Trigonometric);
    }
}

TEST_CASE("averages: symmetric fixture has zero means") {
    const auto d = test::make_context(0.5, 0.5, 0.5, 0.5);
    const auto p = classify_context(d);
    const auto s = averages_and_sum(construct_amplitude(d, p), construct_operators(d, p, ObservablePair{}));
    CHECK(std::abs(s.mean_a) <= 1e-15);
    CHECK(std::abs(s.mean_b) <= 1e-15);
    CHECK(std::abs(s.mean_sum_op) <= 1e-15);
    CHECK(s.linearity_residual <= 8 * kEps);
}

TEST_CASE("amplitude map is not injective: a_given_b is dropped") {
    auto d1 = test::lambda_half();
    auto d2 = d1;
    d1.a_given_b = TransitionMatrix{ProbabilityVector{0.5, 0.5}, ProbabilityVector{0.5, 0.5}};
    d2.a_given_b = TransitionMatrix{ProbabilityVector{0.9, 0.1}, ProbabilityVector{0.2, 0.8}};
    const auto a1 = construct_amplitude(d1, classify_context(d1));
    const auto a2 = construct_amplitude(d2, classify_context(d2));
    CHECK(a1.components == a2.components);
}
