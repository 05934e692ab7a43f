#include <doctest.h>

#include "qlr/error.hpp"
#include "qlr/model.hpp"
#include "support.hpp"

using namespace qlr;

TEST_CASE("validate: half fixture") {
    const auto r = validate_context_data(test::lambda_half());
    CHECK(r.ok());
    CHECK(r.deltas[0] == 0.25);
    CHECK(r.deltas[1] == -0.25);
    CHECK(r.balance == 0.0);
}

TEST_CASE("validate: deterministic context") {
    const auto d = test::make_context(1.0, 1.0, 1.0, 1.0);
    CHECK(validate_context_data(d).ok());
}

TEST_CASE("validate: p_a summing to 1.2") {
    auto d = test::lambda_half();
    d.p_a = {0.6, 0.6};
    const auto r = validate_context_data(d);
    CHECK_FALSE(r.ok());
    CHECK(r.has(ViolationKind::Normalization));
    CHECK_FALSE(r.has(ViolationKind::Balance));
}

TEST_CASE("validate: range violation") {
    auto d = test::lambda_half();
    d.p_b = {1.1, -0.1};
    const auto r = validate_context_data(d);
    CHECK(r.has(ViolationKind::Range));
    CHECK_FALSE(r.has(ViolationKind::Normalization));
}

TEST_CASE("validate: a single mutation flags only its invariant class") {
    const auto base = test::lambda_half();
    for (Outcome i : kOutcomes) {
        auto d = base;
        d.b_given_a[i][0] = d.b_given_a[i][0].value + 1e-6;
        const auto r = validate_context_data(d);
        REQUIRE(r.violations.size() == 1);
        CHECK(r.violations[0].kind == ViolationKind::Normalization);
        CHECK(r.violations[0].location == "b_given_a row " + std::to_string(i));
    }
    auto d = base;
    d.p_b[1] = 0.25 + 1e-6;
    const auto r = validate_context_data(d);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].location == "p_b");
}

TEST_CASE("delta: context-independent conditionals give zero") {
    const auto d = test::make_context(0.3, 0.6, 0.6, 0.6);
    CHECK(delta(d, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(delta(d, 1) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("delta: exact rational path") {
    ContextData d;
    d.p_a = {Rational(1, 3), Rational(2, 3)};
    d.b_given_a = {ProbabilityVector{Rational(1, 7), Rational(6, 7)}, ProbabilityVector{Rational(3, 7), Rational(4, 7)}};
    const Rational classical = Rational(1, 3) * Rational(1, 7) + Rational(2, 3) * Rational(3, 7);
    d.p_b = {classical, Rational(1) - classical};
    CHECK(delta(d, 0) == 0.0);
    CHECK(delta(d, 1) == 0.0);
}

TEST_CASE("double stochasticity") {
    CHECK(is_doubly_stochastic(test::lambda_half()));
    CHECK(is_doubly_stochastic(test::hyperbolic_fixture()));
    CHECK_FALSE(is_doubly_stochastic(test::make_context(0.5, 0.9, 0.9, 0.9)));
}

namespace {

ContextCatalog half_catalog() {
    auto c = test::lambda_half();
    auto twin = c;
    twin.context_id = "twin";
    auto f1 = test::make_context(1.0, 0.5, 0.5, 0.5, "C1");
    auto f2 = test::make_context(0.0, 0.5, 0.5, 0.5, "C2");
    return ContextCatalog(ObservablePair{}, {c, twin, f1, f2}, {"C1", "C2"});
}

}  // namespace

TEST_CASE("catalog: pi map") {
    const auto cat = half_catalog();
    CHECK(cat.validate().ok());
    const auto& a = pi_map(cat, "C");
    const auto& b = pi_map(cat, "twin");
    CHECK(a.pb(0) == b.pb(0));
    CHECK(a.b_a(0, 1) == b.b_a(0, 1));
    CHECK(pi_map(cat, "C1").pa(0) == 1.0);
    for (const auto& [id, d] : cat.contexts()) CHECK(validate_context_data(d).ok());
    CHECK_THROWS_AS(pi_map(cat, "nope"), InvalidInput);
}

TEST_CASE("catalog: construction errors") {
    auto c = test::lambda_half();
    CHECK_THROWS_AS(ContextCatalog(ObservablePair{}, {c, c}, {"C", "C"}), InvalidInput);
    c.context_id = "";
    CHECK_THROWS_AS(ContextCatalog(ObservablePair{}, {c}, {"C", "C"}), InvalidInput);
    ObservablePair bad;
    bad.spectrum_a = {1.0, 1.0};
    CHECK_THROWS_AS(ContextCatalog(bad, {test::lambda_half()}, {"C", "C"}), InvalidInput);
}

TEST_CASE("catalog: filtration axiom and consistency") {
    auto c = test::lambda_half();
    auto f1 = test::make_context(0.9, 0.5, 0.5, 0.5, "C1");
    auto f2 = test::make_context(0.0, 0.5, 0.5, 0.4, "C2");
    const ContextCatalog cat(ObservablePair{}, {c, f1, f2}, {"C1", "C2"});
    const auto r = cat.validate();
    CHECK(r.has(ViolationKind::FiltrationAxiom));
    CHECK(r.has(ViolationKind::FiltrationConsistency));

    const ContextCatalog missing(ObservablePair{}, {c}, {"C1", "C2"});
    CHECK(missing.validate().has(ViolationKind::MissingContext));
}

TEST_CASE("catalog with derived filtrations validates") {
    const auto cat = catalog_with_derived_filtrations(test::lambda_half(), ObservablePair{});
    CHECK(cat.validate().ok());
    CHECK(cat.contexts().size() == 3);
    CHECK(pi_map(cat, "C/a1").pa(1) == 1.0);
}
