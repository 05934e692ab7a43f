#include <doctest.h>

#include "qlr/error.hpp"
#include "qlr/io.hpp"
#include "support.hpp"

using namespace qlr;
using io::json;

TEST_CASE("probabilities: decimal and rational forms") {
    CHECK(io::parse_probability(json(0.25), "x").value == 0.25);
    const auto r = io::parse_probability(json{{"num", 1}, {"den", 3}}, "x");
    REQUIRE(r.exact.has_value());
    CHECK(*r.exact == Rational(1, 3));
    CHECK_THROWS_AS(io::parse_probability(json("half"), "x"), SchemaError);
    CHECK_THROWS_AS(io::parse_probability(json{{"num", 1}}, "x"), SchemaError);
}

TEST_CASE("catalog fixtures load") {
    const auto cat = io::load_catalog(test::data_path("lambda_half.json"));
    CHECK(cat.contexts().size() == 3);
    CHECK(cat.validate().ok());
    const auto mixed = io::load_catalog(test::data_path("mixed.json"));
    CHECK(pi_map(mixed, "M").p_a[0].exact.has_value());
    CHECK_FALSE(io::load_catalog(test::data_path("row_sum.json")).validate().ok());
}

TEST_CASE("catalog schema errors") {
    CHECK_THROWS_AS(io::parse_catalog(json::array()), SchemaError);
    CHECK_THROWS_AS(io::parse_catalog(json{{"contexts", json::array()}}), SchemaError);
    auto j = io::read_json_file(test::data_path("lambda_half.json"));
    j["contexts"][0]["p_a"] = {0.5};
    CHECK_THROWS_AS(io::parse_catalog(j), SchemaError);
    CHECK_THROWS_AS(io::load_catalog(test::data_path("does_not_exist.json")), SchemaError);
}

TEST_CASE("catalog survives a JSON round trip") {
    const auto cat = io::load_catalog(test::data_path("mixed.json"));
    const auto again = io::parse_catalog(io::to_json(cat));
    CHECK(io::to_json(again) == io::to_json(cat));
}

TEST_CASE("model schema") {
    const auto m = io::load_model(test::data_path("classical_model.json"));
    CHECK(m.state_count() == 4);
    CHECK(m.disturb_a[2][1][2] == 1.0);
    auto j = io::read_json_file(test::data_path("classical_model.json"));
    j["respond_a"].erase(0);
    CHECK_THROWS_AS(io::parse_model(j), SchemaError);
    j = io::read_json_file(test::data_path("classical_model.json"));
    j["prepare"]["C"] = {0.5, 0.5, 0.5, 0.5};
    CHECK_THROWS_AS(io::parse_model(j), SchemaError);
}

TEST_CASE("profile JSON carries classification and lambda") {
    const auto j = io::to_json(classify_context(test::lambda_half()));
    CHECK(j["classification"] == "trigonometric");
    CHECK(j["lambda"][0].get<double>() == 0.5);
    CHECK(j["lambda"][1].get<double>() == -0.5);
}
