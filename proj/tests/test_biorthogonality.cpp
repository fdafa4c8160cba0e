#include <doctest.h>

#include "nhlab/biorthogonality.hpp"

using namespace nhlab;

namespace {
ModelParams params(ModelId id, double beta = 0.0, int n = 1) {
    ModelParams p;
    p.model = id;
    p.beta = beta;
    p.n = n;
    return p;
}
} // namespace

TEST_CASE("jordan-bound binorms") {
    Model m(params(ModelId::JordanBound));
    auto bs = m.bound_states();
    CHECK(std::abs(binorm(bs[0], bs[0])) < 1e-8);
    CHECK(std::abs(binorm(bs[0], bs[1]) - 1.0) < 1e-8);
    CHECK(bound_state_table(m).pass());
}

TEST_CASE("two-level binorms") {
    Model m(params(ModelId::TwoLevel, 0.3));
    auto bs = m.bound_states();
    CHECK(std::abs(binorm(bs[0], bs[1])) < 1e-8);
    CHECK(std::abs(binorm(bs[0], bs[0]) - 1.0) < 1e-8);
    CHECK(std::abs(binorm(bs[1], bs[1]) - 1.0) < 1e-8);
}

TEST_CASE("continuum-bs chain binorm") {
    Model m(params(ModelId::ContinuumBS));
    auto bs = m.bound_states();
    CHECK(std::abs(binorm(bs[0], bs[1])) < 1e-8);
    CHECK(std::abs(binorm(bs[0], bs[0])) < 1e-8);
}

TEST_CASE("threshold n=3 chain is multiply self-orthogonal") {
    BinormTable t = bound_state_table(Model(params(ModelId::Threshold, 0.0, 3)));
    REQUIRE(t.values.size() == 2);
    for (auto& row : t.values)
        for (cplx v : row) CHECK(std::abs(v) < 1e-8);
}

TEST_CASE("rotated jordan-bound pair is orthonormal") {
    Model m(params(ModelId::JordanBound));
    auto r = rotated_pair(m, 1.0);
    CHECK(std::abs(binorm(r[0], r[0]) - 1.0) < 1e-8);
    CHECK(std::abs(binorm(r[1], r[1]) - 1.0) < 1e-8);
    CHECK(std::abs(binorm(r[0], r[1])) < 1e-8);
    CHECK_THROWS_AS(rotated_pair(Model(params(ModelId::TwoLevel, 0.3))), ParameterError);
}

TEST_CASE("binorm is symmetric") {
    Model m(params(ModelId::TwoLevel, 0.3));
    auto bs = m.bound_states();
    CHECK(std::abs(binorm(bs[0], bs[1], 1e-13) - binorm(bs[1], bs[0], 1e-13)) < 1e-12);
}

TEST_CASE("amplitude is normalized") {
    Amplitude a = Amplitude::gaussian(1.0, 0.2);
    double s = 0.0;
    const int n = 4000;
    const double h = (a.hi() - a.lo()) / n;
    for (int i = 0; i <= n; ++i) s += (i == 0 || i == n ? 0.5 : 1.0) * a(a.lo() + i * h) * a(a.lo() + i * h);
    CHECK(s * h == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("smeared continuum overlaps of jordan-bound") {
    Model m(params(ModelId::JordanBound));
    Amplitude a = Amplitude::gaussian(1.0, 0.2);
    SmearedResult same = smeared_continuum_orthonormality(m, a, a, StateWeight::Plain, 1e-6);
    CHECK(std::abs(same.computed - same.target) < 1e-4);
    // σ = 0.2 bumps at 1 and 2 still overlap by e^{-3}; σ = 0.1 separates them
    Amplitude n1 = Amplitude::gaussian(1.0, 0.1), n2 = Amplitude::gaussian(2.0, 0.1);
    SmearedResult disjoint = smeared_continuum_orthonormality(m, n1, n2, StateWeight::Plain, 1e-7);
    CHECK(std::abs(disjoint.computed) < 1e-6);
    auto bs = m.bound_states();
    CHECK(std::abs(bound_continuum_orthogonality(m, bs[0], a, StateWeight::Plain, 1e-7).computed) < 1e-6);
    CHECK(std::abs(bound_continuum_orthogonality(m, bs[1], a, StateWeight::Plain, 1e-7).computed) < 1e-6);
}
