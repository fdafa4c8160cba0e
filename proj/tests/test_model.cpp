#include <doctest.h>

#include <random>

#include "nhlab/model.hpp"
#include "nhlab/suites.hpp"

using namespace nhlab;

namespace {
const cplx I{0.0, 1.0};

ModelParams params(ModelId id, double beta = 0.0, int n = 1) {
    ModelParams p;
    p.model = id;
    p.beta = beta;
    p.n = n;
    return p;
}
} // namespace

TEST_CASE("threshold potential at the origin") {
    Model m(params(ModelId::Threshold));
    CHECK(std::abs(m.potential(0.0) - cplx(-2.0)) < 1e-14);
}

TEST_CASE("jordan-bound potential decays") {
    Model m(params(ModelId::JordanBound));
    CHECK(std::abs(m.potential(30.0)) < 1e-10);
    CHECK(std::abs(m.potential(-30.0)) < 1e-10);
}

TEST_CASE("jordan-bound with Re z = 0 is PT symmetric") {
    Model m(params(ModelId::JordanBound));
    for (double x = 0.05; x < 8.0; x += 0.37) CHECK(std::abs(m.potential(-x) - std::conj(m.potential(x))) < 1e-12);
}

TEST_CASE("jordan-bound discrete spectrum is one chain of length two") {
    Model m(params(ModelId::JordanBound));
    auto bs = m.bound_states();
    REQUIRE(bs.size() == 2);
    CHECK(bs[0].role.kind == Role::Eigen);
    CHECK(bs[1].role.kind == Role::Associated);
    CHECK(bs[1].role.order == 1);
    for (auto& s : bs) CHECK(std::abs(s.lambda + 1.0) < 1e-15);
}

TEST_CASE("two-level eigenvalues") {
    Model m(params(ModelId::TwoLevel, 0.3));
    auto bs = m.bound_states();
    REQUIRE(bs.size() == 2);
    std::vector<double> got{bs[0].lambda.real(), bs[1].lambda.real()};
    std::sort(got.begin(), got.end());
    CHECK(got[0] == doctest::Approx(-1.69).epsilon(1e-14));
    CHECK(got[1] == doctest::Approx(-0.49).epsilon(1e-14));
}

TEST_CASE("threshold n=3 associated function") {
    Model m(params(ModelId::Threshold, 0.0, 3));
    auto bs = m.bound_states();
    REQUIRE(bs.size() == 2);
    for (double x : {-3.0, -0.4, 0.0, 1.7, 9.0}) CHECK(std::abs(bs[1](x) - 1.0 / (10.0 * (x - I))) < 1e-14);
}

TEST_CASE("threshold continuum state vanishes at x=0 for k=1") {
    Model m(params(ModelId::Threshold));
    CHECK(std::abs(m.psi(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(m.continuum_state(1.0)(0.0)) < 1e-15);
}

TEST_CASE("threshold limit k -> 0 reproduces psi0") {
    Model m(params(ModelId::Threshold));
    const double k = 1e-4;
    double sup = 0.0;
    for (double x = -10.0; x <= 10.0; x += 0.01) {
        cplx lhs = -std::sqrt(2.0 * pi) * I * k * m.psi(x, k);
        sup = std::max(sup, std::abs(lhs - 1.0 / (x - I)));
    }
    CHECK(sup < 1e-3);
}

TEST_CASE("continuum-bs excludes k = alpha but the regularized state stays bounded") {
    Model m(params(ModelId::ContinuumBS));
    CHECK_THROWS_AS(m.continuum_state(1.0), ExcludedMomentum);
    CHECK_THROWS_AS(m.continuum_state(-1.0), ExcludedMomentum);
    for (double d : {1e-3, 1e-5, 1e-7}) {
        cplx a = m.regularized(0.4, 1.0 + d), b = m.regularized(0.4, 1.0 - d);
        CHECK(std::isfinite(std::abs(a)));
        CHECK(std::abs(a - b) < 10.0 * d);
    }
}

TEST_CASE("parameter validation") {
    ModelParams p;
    p.z = 0.0;
    CHECK_THROWS_AS(validate(p), ParameterError);
    CHECK_THROWS_AS(validate(params(ModelId::TwoLevel, 0.0)), ParameterError);
    CHECK_THROWS_AS(model_from_string("harmonic"), ParameterError);
    CHECK(model_from_string("continuum-bs") == ModelId::ContinuumBS);
}

TEST_CASE("denominator has no real zero") {
    for (ModelId id : {ModelId::JordanBound, ModelId::TwoLevel, ModelId::Threshold, ModelId::ContinuumBS}) {
        Model m(default_params(id));
        GridSpec g = m.default_grid();
        for (int i = 0; i < g.points(); i += 7) CHECK(std::isfinite(m.log_abs_denominator(g.at(i))));
    }
}

TEST_CASE("psi equals regularized over pole factor") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (ModelId id : {ModelId::JordanBound, ModelId::TwoLevel, ModelId::Threshold, ModelId::ContinuumBS}) {
        Model m(default_params(id));
        for (int i = 0; i < 20; ++i) {
            double x = u(rng);
            cplx k(u(rng), 0.2 * u(rng));
            cplx a = m.psi(x, k), b = m.regularized(x, k) / m.pole_factor(k);
            CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("printed continuation limits") {
    for (ModelId id : {ModelId::JordanBound, ModelId::TwoLevel, ModelId::Threshold, ModelId::ContinuumBS}) {
        Suite s = limits_suite(default_params(id));
        CAPTURE(s.name);
        CHECK(s.pass());
    }
}
