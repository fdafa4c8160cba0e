#include <doctest.h>

#include "nhlab/fit.hpp"
#include "nhlab/observables.hpp"

using namespace nhlab;

namespace {
const cplx I{0.0, 1.0};

// ψ_ε, ψ_ε'' written out by hand
cplx packet(double e, cplx z, double x) { return (0.5 * e * x + 1.0 / (x - z)) * std::exp(-0.25 * e * x * x); }

cplx packet_dd(double e, cplx z, double x) {
    const double E = std::exp(-0.25 * e * x * x);
    const cplx g = 0.5 * e * x + 1.0 / (x - z);
    const cplx g1 = 0.5 * e - 1.0 / ((x - z) * (x - z));
    const cplx g2 = 2.0 / ((x - z) * (x - z) * (x - z));
    const double E1 = -0.5 * e * x * E, E2 = (0.25 * e * e * x * x - 0.5 * e) * E;
    return g2 * E + 2.0 * g1 * E1 + g * E2;
}

// trapezoid on ±√(160/ε); spectrally accurate for these analytic integrands
template <class F>
cplx trapezoid(F f, double e, double h = 2e-3) {
    const double L = std::sqrt(160.0 / e);
    cplx s = 0.0;
    for (double x = -L; x <= L; x += h) s += f(x);
    return s * h;
}

cplx oracle_potential(double e, cplx z) {
    return trapezoid([&](double x) { cplx p = packet(e, z, x); return p * 2.0 / ((x - z) * (x - z)) * p; }, e);
}

cplx oracle_total(double e, cplx z) {
    return trapezoid(
        [&](double x) {
            cplx p = packet(e, z, x);
            return p * (-packet_dd(e, z, x) + 2.0 / ((x - z) * (x - z)) * p);
        },
        e);
}
} // namespace

TEST_CASE("packet at the origin and its eps -> 0 limit") {
    CHECK(std::abs(packet_eval(0.1, I, 0.0) + 1.0 / I) < 1e-15);
    CHECK(std::abs(packet_eval(1e-8, I, 2.0) - 1.0 / (2.0 - I)) < 1e-7);
    CHECK(std::abs(packet_second_derivative(0.3, I, 0.7) - packet_dd(0.3, I, 0.7)) < 1e-13);
}

TEST_CASE("packet matches its momentum integral") {
    CHECK(std::abs(packet_eval(0.1, I, 0.7) - packet_momentum_integral(0.1, I, 0.7)) < 1e-10);
}

TEST_CASE("packet binorm") {
    CHECK(std::abs(packet_binorm(0.01, I) - 0.1 * std::sqrt(pi / 8.0)) < 1e-6);
    CHECK(std::abs(packet_binorm(0.04, I) / packet_binorm(0.01, I) - 2.0) < 1e-6);
    cplx oracle = trapezoid([](double x) { cplx p = packet(0.1, I, x); return p * p; }, 0.1);
    CHECK(std::abs(packet_binorm(0.1, I) - oracle) < 1e-6);
}

TEST_CASE("packet expectation values against the trapezoid oracle") {
    for (double e : {1e-1, 1e-2, 1e-3}) {
        CAPTURE(e);
        const double s = std::pow(e, 1.5);
        cplx v = packet_ev(e, I, PacketObservable::Potential).value;
        cplx t = packet_ev(e, I, PacketObservable::Total).value;
        CHECK(std::abs(v - oracle_potential(e, I)) < 1e-8 * s);
        CHECK(std::abs(t - oracle_total(e, I)) < 1e-8 * s);
        // the total follows the printed law at every ε
        CHECK(std::abs(t / s - std::sqrt(9.0 * pi / 128.0)) < 1e-8);
    }
}

TEST_CASE("frozen potential prefactors at z = i") {
    CHECK(packet_ev(0.1, I, PacketObservable::Potential).value.real() / std::pow(0.1, 1.5) ==
          doctest::Approx(-1.332340482).epsilon(1e-8));
    CHECK(packet_ev(0.01, I, PacketObservable::Potential).value.real() / std::pow(0.01, 1.5) ==
          doctest::Approx(-1.801966312).epsilon(1e-8));
    CHECK(packet_ev(0.001, I, PacketObservable::Potential).value.real() / std::pow(0.001, 1.5) ==
          doctest::Approx(-1.992370415).epsilon(1e-8));
}

TEST_CASE("printed prefactors") {
    PacketEv t = packet_ev(0.01, I, PacketObservable::Total);
    CHECK(std::abs(t.printed - std::sqrt(9.0 * pi / 128.0) * 1e-3) < 1e-15);
    PacketEv v = packet_ev(0.01, I, PacketObservable::Potential);
    CHECK(std::abs(v.printed + std::sqrt(25.0 * pi / 36.0) * 1e-3) < 1e-15);
    CHECK(std::abs(t.via_diffop - t.value) < 1e-7 * 1e-3);
}

TEST_CASE("scaling laws") {
    std::vector<double> eps{1e-3, 3e-3, 1e-2, 3e-2, 1e-1}, b, t;
    for (double e : eps) {
        b.push_back(std::abs(packet_binorm(e, I)));
        t.push_back(std::abs(packet_ev(e, I, PacketObservable::Total).value));
    }
    CHECK(loglog_fit(eps, b).slope == doctest::Approx(0.5).epsilon(0.02 / 0.5));
    CHECK(loglog_fit(eps, t).slope == doctest::Approx(1.5).epsilon(0.02 / 1.5));
    // <H>/binorm ~ ε
    CHECK(t.front() / b.front() < t.back() / b.back());
}

TEST_CASE("packet parameter checks") {
    CHECK_THROWS_AS(packet_ev(0.0, I, PacketObservable::Total), ParameterError);
    CHECK_THROWS_AS(packet_ev(2.0, I, PacketObservable::Total), ParameterError);
}

TEST_CASE("averages on the threshold eigenfunction") {
    ModelParams p;
    p.model = ModelId::Threshold;
    Model m(p);
    auto psi0 = m.bound_states()[0].eval;
    AverageResult h = average(m, psi0, OperatorId::Potential, Prescription::Hermitian);
    CHECK(h.denominator.real() > 0.0);
    CHECK(std::abs(h.denominator - pi) < 1e-8); // ∫|x-i|^-2 = π
    CHECK(std::abs(h.value + 0.5) < 1e-8);
    AverageResult raw = average(m, psi0, OperatorId::Potential, Prescription::Raw);
    CHECK(raw.indeterminate);
    CHECK(raw.note.find("0/0") != std::string::npos);
    CHECK(std::abs(raw.numerator) < 1e-8);
    CHECK_THROWS_AS(checked_value(raw), ZeroDenominator);
    CHECK_THROWS_AS(average(m, psi0, OperatorId::Potential, Prescription::Binorm), ParameterError);
}

TEST_CASE("binorm prescription") {
    Eigen::MatrixXcd O(2, 2);
    O << 2.0, 1.0, 0.0, 3.0;
    AverageResult r = binorm_average({1.0, 0.0}, O);
    CHECK(std::abs(r.denominator - 1.0) < 1e-15);
    CHECK(std::abs(r.value - 2.0) < 1e-15);
}
