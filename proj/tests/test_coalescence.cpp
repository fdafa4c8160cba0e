#include <doctest.h>

#include "nhlab/coalescence.hpp"

using namespace nhlab;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("level splitting") {
    for (double b : {0.3, 0.01, 1e-3}) CHECK(std::abs(level_splitting(1.0, b) - 4.0 * b) < 1e-15);
    // independent: -(α-β)² + (α+β)²
    CHECK(std::abs(level_splitting(1.3, 0.2) - (std::pow(1.5, 2) - std::pow(1.1, 2))) < 1e-14);
}

TEST_CASE("psi0 limit") {
    CoalescenceStudy c = coalesce_psi0(1.0, I, {1e-3});
    CHECK(c.error[0] < 1e-2);
    CHECK(c.error_alt[0] < 1e-2);
}

TEST_CASE("psi1 limit") {
    CHECK(coalesce_psi1(1.0, I, {1e-2}).error[0] < 1e-2);
}

TEST_CASE("errors fall with beta") {
    auto betas = default_betas();
    REQUIRE(betas.size() == 5);
    for (auto c : {coalesce_psi0(1.0, I, betas), coalesce_psi1(1.0, I, betas)}) {
        for (size_t i = 1; i < c.error.size(); ++i) CHECK(c.error[i] < c.error[i - 1]);
        CHECK(c.order >= 0.8);
    }
}

TEST_CASE("kernel limit") {
    CHECK(coalesce_kernel(1.0, I, {1e-3}, 0.3, -0.7).error[0] < 1e-2);
    CHECK(coalesce_kernel(1.0, I, {1e-3}, 0.4, 0.4).error[0] < 1e-2);
}

TEST_CASE("discrete trace") {
    for (double b : {0.3, 0.1, 0.01}) CHECK(std::abs(discrete_trace(1.0, I, b) - 2.0) < 1e-8);
    CHECK(std::abs(limit_trace(1.0, I) - 2.0) < 1e-8);
}

TEST_CASE("beta = 0 is not a two-level model") {
    ModelParams p;
    p.model = ModelId::TwoLevel;
    p.beta = 0.0;
    CHECK_THROWS_AS(validate(p), ParameterError);
}
