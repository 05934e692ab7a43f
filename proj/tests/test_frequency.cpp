#include <cmath>
#include <sstream>

#include <doctest.h>

#include "qlr/error.hpp"
#include "qlr/frequency.hpp"
#include "support.hpp"

using namespace qlr;

namespace {

Collective make(Observable o, std::vector<std::uint8_t> xs, std::optional<Filtration> f = std::nullopt) {
    Collective c;
    c.observable = o;
    c.context_id = "C";
    c.filtration = f;
    c.outcomes = std::move(xs);
    return c;
}

// Arranges exactly round(p * n) zeros followed by ones.
Collective arranged(Observable o, double p0, std::size_t n, std::optional<Filtration> f = std::nullopt) {
    std::vector<std::uint8_t> xs(n, 1);
    const auto k = static_cast<std::size_t>(std::llround(p0 * static_cast<double>(n)));
    for (std::size_t i = 0; i < k; ++i) xs[i] = 0;
    return make(o, xs, f);
}

}  // namespace

TEST_CASE("relative frequency") {
    const auto constant = make(Observable::B, std::vector<std::uint8_t>(10, 0));
    CHECK(relative_frequency(constant, 0, 7) == 1.0);
    const auto alt = make(Observable::B, {0, 1, 0, 1});
    CHECK(relative_frequency(alt, 0, 4) == 0.5);
    CHECK(relative_frequency(alt, 1, 1) == 0.0);
    CHECK_THROWS_AS(relative_frequency(alt, 0, 0), InvalidInput);
    CHECK_THROWS_AS(relative_frequency(alt, 0, 5), InvalidInput);
}

TEST_CASE("stabilization: constant sequence") {
    const auto c = make(Observable::B, std::vector<std::uint8_t>(1000, 0));
    const auto r = stabilization_diagnostic(c, {10, 100, 1000});
    CHECK_FALSE(r.flagged);
    for (double nu : r.trajectory[0]) CHECK(nu == 1.0);
    CHECK(r.terminal[0] == 1.0);
}

TEST_CASE("stabilization: oscillating frequencies are flagged") {
    // Blocks sized so that nu alternates 0.3, 0.7, 0.3, 0.7 at N = 1000, 3000, 9000, 27000.
    std::vector<std::uint8_t> xs;
    auto block = [&](std::size_t zeros, std::size_t ones) {
        xs.insert(xs.end(), zeros, 0);
        xs.insert(xs.end(), ones, 1);
    };
    block(300, 700);      // 300 / 1000
    block(1800, 200);     // 2100 / 3000
    block(600, 5400);     // 2700 / 9000
    block(16200, 1800);   // 18900 / 27000
    const auto c = make(Observable::B, xs);
    const auto r = stabilization_diagnostic(c, {1000, 3000, 9000, 27000});
    CHECK(r.trajectory[0] == std::vector<double>{0.3, 0.7, 0.3, 0.7});
    CHECK(r.flagged);
    CHECK(r.drift[0] > r.drift_bound[0]);
}

TEST_CASE("stabilization: envelope against a reference") {
    const auto c = arranged(Observable::B, 0.5, 10000);
    // All zeros come first, so the early checkpoints sit far outside the envelope.
    const auto r = stabilization_diagnostic(c, {100, 10000}, std::array<double, 2>{0.5, 0.5});
    CHECK_FALSE(r.within_envelope[0]);
    CHECK(r.within_envelope[1]);
    CHECK_FALSE(r.envelope_ok);
    CHECK_THROWS_AS(stabilization_diagnostic(c, {100, 50}), InvalidInput);
}

TEST_CASE("estimate from arranged collectives reproduces the table") {
    CollectiveSet xs;
    xs.b = arranged(Observable::B, 0.75, 1000);
    xs.a = arranged(Observable::A, 0.5, 1000);
    xs.b_after_a[0] = arranged(Observable::B, 0.5, 1000, Filtration{Observable::A, 0});
    xs.b_after_a[1] = arranged(Observable::B, 0.5, 1000, Filtration{Observable::A, 1});
    const auto e = estimate_context_data(xs);
    CHECK(e.data.context_id == "C");
    CHECK(e.data.pb(0) == 0.75);
    CHECK(e.data.pa(0) == 0.5);
    CHECK(e.data.b_a(0, 0) == 0.5);
    CHECK(e.data.b_a(0, 1) == 0.5);
    CHECK(e.se.p_b[0] == doctest::Approx(std::sqrt(0.75 * 0.25 / 1000)));
    CHECK(e.min_sample == 1000);
    CHECK_FALSE(e.data.a_given_b.has_value());
}

TEST_CASE("constant collectives give a degenerate but valid table") {
    CollectiveSet xs;
    xs.b = arranged(Observable::B, 1.0, 10);
    xs.a = arranged(Observable::A, 1.0, 10);
    xs.b_after_a[0] = arranged(Observable::B, 1.0, 10, Filtration{Observable::A, 0});
    xs.b_after_a[1] = arranged(Observable::B, 1.0, 10, Filtration{Observable::A, 1});
    const auto e = estimate_context_data(xs);
    CHECK(validate_context_data(e.data).ok());
}

TEST_CASE("estimate rejects mislabeled collectives") {
    CollectiveSet xs;
    xs.b = arranged(Observable::A, 0.5, 10);
    xs.a = arranged(Observable::A, 0.5, 10);
    xs.b_after_a[0] = arranged(Observable::B, 0.5, 10, Filtration{Observable::A, 0});
    xs.b_after_a[1] = arranged(Observable::B, 0.5, 10, Filtration{Observable::A, 1});
    CHECK_THROWS_AS(estimate_context_data(xs), InvalidInput);
}

TEST_CASE("collective file round trip") {
    auto c = make(Observable::B, {0, 1, 1, 0, 1}, Filtration{Observable::A, 1});
    c.seed = 99;
    std::stringstream ss;
    write_collective(ss, c);
    const auto back = read_collective(ss);
    CHECK(back.outcomes == c.outcomes);
    CHECK(back.seed == 99);
    CHECK(back.context_id == "C");
    CHECK(back.observable == Observable::B);
    CHECK(back.filtration == c.filtration);

    std::istringstream bad("# observable=q context=C seed=1 n=1\n0\n");
    CHECK_THROWS_AS(read_collective(bad), SchemaError);
    std::istringstream shortfile("# observable=b context=C seed=1 n=3\n0\n1\n");
    CHECK_THROWS_AS(read_collective(shortfile), SchemaError);
}
