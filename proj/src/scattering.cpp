#include "nhlab/scattering.hpp"

#include <cmath>

#include "nhlab/diffop.hpp"
#include "nhlab/fit.hpp"

namespace nhlab {

namespace {

const cplx I{0.0, 1.0};

void check_lambda(cplx lambda) {
    if (lambda.imag() == 0.0 && lambda.real() >= 0.0) throw OnCut("λ lies on the cut λ ≥ 0");
}

cplx psi_or_pole(const Model& m, double x, cplx k) {
    try {
        return m.psi(x, k);
    } catch (const ExcludedMomentum&) {
        throw AtPole("λ sits on a pole of the Green function");
    }
}

// Neville extrapolation of y(t) to t = 0; returns the last two diagonal entries
std::pair<cplx, cplx> extrapolate_to_zero(const std::vector<double>& t, std::vector<cplx> y) {
    const size_t n = t.size();
    cplx prev = y[n - 1];
    for (size_t level = 1; level < n; ++level) {
        for (size_t i = 0; i + level < n; ++i)
            y[i] = (t[i + level] * y[i] - t[i] * y[i + 1]) / (t[i + level] - t[i]);
        if (level == n - 2) prev = y[0];
    }
    return {y[0], prev};
}

} // namespace

cplx branch_sqrt(cplx lambda) {
    cplx k = I * std::sqrt(-lambda);
    if (k.imag() < 0.0) k = -k;
    return k;
}

cplx green(const ModelParams& p, cplx lambda, double x, double xp) {
    check_lambda(lambda);
    Model m(p);
    const cplx k = branch_sqrt(lambda);
    const double hi = std::max(x, xp), lo = std::min(x, xp);
    return pi * I / k * psi_or_pole(m, hi, k) * psi_or_pole(m, lo, -k);
}

cplx green_derivative_jump(const ModelParams& p, cplx lambda, double xp) {
    check_lambda(lambda);
    Model m(p);
    const cplx k = branch_sqrt(lambda);
    const double h = 0.02 / std::max(1.0, std::abs(k));
    auto up = [&](double x) { return psi_or_pole(m, x, k); };
    auto down = [&](double x) { return psi_or_pole(m, x, -k); };
    const cplx right = first_derivative(up, xp, h) * down(xp);
    const cplx left = up(xp) * first_derivative(down, xp, h);
    return pi * I / k * (left - right);
}

std::vector<double> default_probe_radii() {
    std::vector<double> r;
    for (int i = 0; i <= 8; ++i) r.push_back(std::pow(10.0, -1.0 - 0.25 * i));
    return r;
}

PoleOrderFit pole_order(const ModelParams& p, cplx lambda0, const std::vector<double>& radii, double theta, double x,
                        double xp) {
    PoleOrderFit f;
    f.lambda0 = lambda0;
    f.radii = radii;
    const cplx dir = std::polar(1.0, theta);
    for (double r : radii) f.magnitudes.push_back(std::abs(green(p, lambda0 + r * dir, x, xp)));
    LogLogFit fit = loglog_fit(f.radii, f.magnitudes);
    f.slope = fit.slope;
    f.order = -fit.slope;
    f.r2 = fit.r2;
    return f;
}

std::vector<cplx> green_singularities(const ModelParams& p) {
    const cplx a = p.alpha;
    switch (p.model) {
    case ModelId::JordanBound: return {-a * a};
    case ModelId::TwoLevel: return {-(a + p.beta) * (a + p.beta), -(a - p.beta) * (a - p.beta)};
    case ModelId::Threshold: return {0.0};
    case ModelId::ContinuumBS: return {a * a};
    }
    return {};
}

std::vector<double> default_sample_points() { return {200.0, 400.0, 800.0, 1600.0}; }

Transmission transmission(const ModelParams& p, double k, const std::vector<double>& xs) {
    if (k == 0.0) throw ExcludedMomentum("transmission needs k != 0");
    if (xs.size() < 2) throw ParameterError("transmission needs at least two sample points");
    Model m(p);
    (void)m.psi(0.0, k); // ExcludedMomentum at poles of the closed form
    // the pole factor cancels in every ratio, so sample the regularized form
    auto f = [&](double x) { return m.regularized(x, k); };
    const double h = 0.02 / std::max(1.0, std::abs(k));
    auto split = [&](double x, cplx& A, cplx& B) {
        const cplx v = f(x), d = first_derivative(f, x, h) / (I * k);
        A = 0.5 * (v + d) * std::exp(-I * k * x);
        B = 0.5 * (v - d) * std::exp(I * k * x);
    };
    // Corrections carry oscillating 1/x pieces (e^{2ikx} in B, e^{±2iαx} for
    // ContinuumBS).  A Gaussian average over a window proportional to |x0|
    // removes them and leaves a power series in 1/x0.
    // The weighted integrand is smooth and nearly band-limited, so the
    // trapezoid rule with a step below π/ω_max is spectrally accurate.
    const double omega_max = 2.0 * std::abs(k) + 4.0 * std::abs(p.alpha) + 2.0;
    const double step = pi / (2.0 * omega_max);
    auto averaged = [&](double x0, cplx& A, cplx& B) {
        const double s = std::abs(x0) / 14.0;
        const int half = static_cast<int>(std::ceil(7.0 * s / step));
        cplx sa = 0.0, sb = 0.0;
        double sw = 0.0;
        for (int i = -half; i <= half; ++i) {
            const double u = i * step, w = std::exp(-0.5 * u * u / (s * s));
            cplx a, b;
            split(x0 + u, a, b);
            sa += w * a;
            sb += w * b;
            sw += w;
        }
        A = sa / sw;
        B = sb / sw;
    };
    std::vector<double> t;
    std::vector<cplx> Ap, Am, Bm;
    for (double x : xs) {
        cplx a, b;
        averaged(x, a, b);
        Ap.push_back(a);
        averaged(-x, a, b);
        Am.push_back(a);
        Bm.push_back(b);
        t.push_back(1.0 / x);
    }
    auto [ap, ap1] = extrapolate_to_zero(t, Ap);
    auto [am, am1] = extrapolate_to_zero(t, Am);
    auto [bm, bm1] = extrapolate_to_zero(t, Bm);
    if (std::abs(am) < 1e-300 || !std::isfinite(std::abs(am)) || !std::isfinite(std::abs(ap)))
        throw AsymptoteNotReached("no incoming wave at x → -∞");
    Transmission r;
    r.T = ap / am;
    r.R = bm / am;
    r.error_estimate = std::max(std::abs(ap / am - ap1 / am1), std::abs(bm - bm1) / std::abs(am));
    if (!(r.error_estimate < 1e-6 * std::max(1.0, std::abs(r.T))))
        throw AsymptoteNotReached("extrapolation levels disagree");
    return r;
}

cplx printed_transmission(const ModelParams& p, double k) {
    const cplx a = p.alpha;
    const double b = p.beta;
    switch (p.model) {
    case ModelId::JordanBound: {
        cplx q = (k + I * a) / (k - I * a);
        return q * q;
    }
    case ModelId::TwoLevel:
        if (a.imag() == 0.0 && 0.0 < b && b < a.real())
            return (b * b + (k + I * a) * (k + I * a)) / (b * b + (k - I * a) * (k - I * a));
        if (a.real() == 0.0 && (-I * a).real() > 0.0)
            return (a * a + (k + I * b) * (k + I * b)) / (a * a + (k - I * b) * (k - I * b));
        throw ParameterError("no printed T(k) for these TwoLevel parameters");
    case ModelId::Threshold:
    case ModelId::ContinuumBS: return 1.0;
    }
    return 1.0;
}

} // namespace nhlab
