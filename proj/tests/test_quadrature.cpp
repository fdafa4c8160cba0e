#include <doctest.h>

#include <memory>

#include "nhlab/quadrature.hpp"

using namespace nhlab;

namespace {
const cplx I{0.0, 1.0};

ModelParams threshold() {
    ModelParams p;
    p.model = ModelId::Threshold;
    return p;
}

// lower semicircle |k| = r from -r to r
ContourPath lower_arc(double r) {
    Segment arc;
    arc.kind = Segment::Arc;
    arc.radius = r;
    arc.theta0 = pi;
    arc.theta1 = 2.0 * pi;
    return ContourPath{{arc}};
}

// ψ(x;k)ψ(x';-k) for the threshold model
ContourIntegrand threshold_product(double x, double xp) {
    auto m = std::make_shared<Model>(threshold());
    return [=](cplx k) { return m->psi(x, k) * m->psi(xp, -k); };
}
} // namespace

TEST_CASE("polynomial on the unit interval") {
    QuadResult r = integrate_interval([](double x) { return cplx(x * x); }, 0.0, 1.0, 1e-14);
    CHECK(std::abs(r.value - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("gaussian over the line") {
    QuadResult r = integrate_real_line([](double x) { return cplx(std::exp(-x * x)); }, 1e-12);
    CHECK(std::abs(r.value - std::sqrt(pi)) < 1e-10);
}

TEST_CASE("double pole off the axis integrates to zero") {
    QuadResult r = integrate_real_line([](double x) { return 1.0 / ((x - I) * (x - I)); }, 1e-12);
    CHECK(std::abs(r.value) < 1e-10);
    QuadResult q = integrate_real_line([](double x) { return 2.0 / std::pow(x - I, 4); }, 1e-12);
    CHECK(std::abs(q.value) < 1e-10);
}

TEST_CASE("slow decay is refused on the plain route") {
    CHECK_THROWS_AS(integrate_real_line([](double x) { return cplx(1.0 / (1.0 + std::abs(x))); }, 1e-8), SlowDecay);
}

TEST_CASE("windowed route for sin(x)/x") {
    OscillatoryOptions o;
    o.tol = 1e-8;
    o.omega_min = 1.0;
    o.omega_max = 1.0;
    QuadResult r = integrate_oscillatory(
        [](double x) { return cplx(std::abs(x) < 1e-8 ? 1.0 : std::sin(x) / x); }, o);
    CHECK(std::abs(r.value - pi) < 1e-6);
}

TEST_CASE("half residue on a downward semicircle") {
    ContourPath path = ContourPath::deformed(1.0, {0.0}, 0.1, Orientation::Down);
    CHECK(path.connected());
    QuadResult r = integrate_contour([](cplx k) { return 1.0 / k; }, path, 1e-13);
    CHECK(std::abs(r.value - I * pi) < 1e-10);
}

TEST_CASE("closed form of the full threshold kernel") {
    const double x = 0.3, xp = -0.2, A = 5.0;
    ContourPath path = ContourPath::deformed(A, {0.0}, 0.5, Orientation::Down);
    QuadResult r = integrate_contour(threshold_product(x, xp), path, 1e-12);
    CHECK(std::abs(r.value - closed_form_kernel(threshold(), ClosedKernel::Full, A, x, xp)) < 1e-8);
}

TEST_CASE("closed form of the full kernel on the diagonal is finite") {
    cplx v = closed_form_kernel(threshold(), ClosedKernel::Full, 5.0, 0.4, 0.4);
    CHECK(std::isfinite(std::abs(v)));
    cplx near = closed_form_kernel(threshold(), ClosedKernel::Full, 5.0, 0.4, 0.4 + 1e-6);
    CHECK(std::abs(v - near) < 1e-4);
}

TEST_CASE("closed form of the inner semicircle") {
    const double x = 0.5, xp = -0.4, eps = 0.3;
    ContourPath arc = lower_arc(eps);
    QuadResult r = integrate_contour(threshold_product(x, xp), arc, 1e-12);
    CHECK(std::abs(r.value - closed_form_kernel(threshold(), ClosedKernel::Inner, eps, x, xp)) < 1e-8);
}

TEST_CASE("additivity of the contour") {
    const double x = 0.5, xp = -0.4, eps = 0.3, A = 5.0;
    auto f = threshold_product(x, xp);
    cplx whole = integrate_contour(f, ContourPath::deformed(A, {0.0}, eps, Orientation::Down), 1e-12).value;
    cplx parts = integrate_contour(f, lower_arc(eps), 1e-12).value;
    for (auto [a, b] : ContourPath::punctured(A, {0.0}, eps))
        parts += integrate_interval([&](double k) { return f(k); }, a, b, 1e-13).value;
    CHECK(std::abs(whole - parts) < 1e-9);
}

TEST_CASE("upward and downward deformations differ by the residue at k=0") {
    const double x = 0.7, xp = -1.1;
    auto f = threshold_product(x, xp);
    cplx down = integrate_contour(f, ContourPath::deformed(4.0, {0.0}, 0.2, Orientation::Down), 1e-12).value;
    cplx up = integrate_contour(f, ContourPath::deformed(4.0, {0.0}, 0.2, Orientation::Up), 1e-12).value;
    // Laurent coefficient of k^-1 in (1 - 1/(ik(x-z)))(1 + 1/(ik(x'-z)))e^{ik(x-x')}/(2π)
    const cplx z = I;
    cplx res = (I / (x - z) - I / (xp - z) + I * (x - xp) / ((x - z) * (xp - z))) / (2.0 * pi);
    CHECK(std::abs((down - up) - 2.0 * pi * I * res) < 1e-9);
}
