#pragma once

#include <string>

#include "qlr/model.hpp"

namespace qlr::test {

inline constexpr double kEps = 2.220446049250313e-16;

inline std::string data_path(const std::string& name) { return std::string(QLR_TEST_DATA) + "/" + name; }

// Dichotomous table from (p_a(1), row 1 of b_given_a, row 2 of b_given_a, p_b(1)).
inline ContextData make_context(double pa0, double t00, double t10, double pb0, std::string id = "C") {
    ContextData d;
    d.context_id = std::move(id);
    d.p_a = {pa0, 1.0 - pa0};
    d.p_b = {pb0, 1.0 - pb0};
    d.b_given_a = {ProbabilityVector{t00, 1.0 - t00}, ProbabilityVector{t10, 1.0 - t10}};
    return d;
}

inline ContextData lambda_half() { return make_context(0.5, 0.5, 0.5, 0.75); }
inline ContextData hyperbolic_fixture() { return make_context(0.5, 0.99, 0.01, 0.7, "H"); }

}  // namespace qlr::test
