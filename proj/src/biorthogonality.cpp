#include "nhlab/biorthogonality.hpp"

#include <algorithm>
#include <cmath>

namespace nhlab {

BinormValue binorm_detailed(const std::function<cplx(double)>& f, const std::function<cplx(double)>& g, double tol) {
    Integrand fg = [&](double x) { return f(x) * g(x); };
    try {
        RealLineOptions o;
        o.tol = tol;
        o.max_panels = 50000;
        QuadResult r = integrate_real_line(fg, o);
        return {r.value, r.abs_error_estimate, "real-line"};
    } catch (const SlowDecay&) {
    } catch (const ToleranceNotMet&) {
    }
    // 1/x-type oscillating tails plus algebraic non-oscillating remainders
    OscillatoryOptions oo;
    oo.tol = tol;
    oo.omega_min = 0.25;
    oo.omega_max = 8.0;
    oo.x_floor = 400.0;
    oo.levels = 4;
    QuadResult r = integrate_oscillatory(fg, oo);
    return {r.value, r.abs_error_estimate, "windowed"};
}

cplx binorm(const SpectralFunction& f, const SpectralFunction& g, double tol) {
    return binorm_detailed(f.eval, g.eval, tol).value;
}

bool BinormTable::entry_pass(size_t i, size_t j) const {
    if (!targets[i][j]) return true;
    return std::abs(values[i][j] - *targets[i][j]) <= tol;
}

bool BinormTable::pass() const {
    for (size_t i = 0; i < values.size(); ++i)
        for (size_t j = 0; j < values.size(); ++j)
            if (!entry_pass(i, j)) return false;
    return true;
}

BinormTable gram(const std::vector<SpectralFunction>& states, const TargetMatrix& targets, double tol) {
    const size_t n = states.size();
    BinormTable t;
    t.tol = tol;
    t.targets = targets;
    t.values.assign(n, std::vector<cplx>(n));
    t.notes.assign(n, std::vector<std::string>(n));
    for (auto& s : states) t.labels.push_back(s.label);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            std::string note;
            cplx v;
            try {
                BinormValue b = binorm_detailed(states[i].eval, states[j].eval, 0.01 * tol);
                v = b.value;
                note = b.route;
                if (b.error_estimate > tol) note += ", error estimate above tolerance";
            } catch (const SlowDecay&) {
                v = cplx(NAN, NAN);
                note = "needs smearing";
            }
            t.values[i][j] = t.values[j][i] = v;
            t.notes[i][j] = t.notes[j][i] = note;
        }
    }
    return t;
}

TargetMatrix printed_targets(const Model& m) {
    const auto bs = m.bound_states();
    const size_t n = bs.size();
    TargetMatrix t(n, std::vector<std::optional<cplx>>(n));
    switch (m.id()) {
    case ModelId::JordanBound:
        t[0][0] = 0.0;
        t[0][1] = t[1][0] = 1.0;
        break; // ψ1ψ1 is not fixed by the closed forms
    case ModelId::TwoLevel:
        t[0][0] = t[1][1] = 1.0;
        t[0][1] = t[1][0] = 0.0;
        break;
    case ModelId::Threshold:
        for (auto& row : t)
            for (auto& e : row) e = 0.0;
        break;
    case ModelId::ContinuumBS:
        t[0][0] = 0.0; // self-orthogonal eigenfunction of a rank-2 cell
        t[0][1] = t[1][0] = 0.0;
        break; // ψ1 is a standing wave
    }
    return t;
}

BinormTable bound_state_table(const Model& m, double tol) { return gram(m.bound_states(), printed_targets(m), tol); }

std::vector<SpectralFunction> rotated_pair(const Model& m, double kappa) {
    if (m.id() != ModelId::JordanBound) throw ParameterError("rotated pair defined for JordanBound");
    auto bs = m.bound_states();
    auto f0 = bs[0].eval, f1 = bs[1].eval;
    const double r2 = std::sqrt(2.0);
    const cplx I{0.0, 1.0};
    SpectralFunction P1{{Role::Eigen, 0, 0.0}, bs[0].lambda,
                        [=](double x) { return (kappa * f0(x) + f1(x) / kappa) / r2; }, "Psi1"};
    SpectralFunction P2{{Role::Eigen, 0, 0.0}, bs[0].lambda,
                        [=](double x) { return I * (kappa * f0(x) - f1(x) / kappa) / r2; }, "Psi2"};
    return {P1, P2};
}

Amplitude Amplitude::gaussian(double center, double sigma) {
    Amplitude a{center, sigma, 1.0};
    // ∫_{-6σ}^{6σ} e^{-u²/σ²} du = σ√π erf(6)
    a.norm = 1.0 / std::sqrt(sigma * std::sqrt(pi) * std::erf(6.0));
    return a;
}

double Amplitude::operator()(double k) const {
    if (k < lo() || k > hi()) return 0.0;
    double u = (k - center) / sigma;
    return norm * std::exp(-0.5 * u * u);
}

namespace {

std::vector<double> amplitude_breaks(const Model& m, const Amplitude& a) {
    std::vector<double> br;
    const int n = 12;
    for (int i = 0; i <= n; ++i) br.push_back(a.lo() + (a.hi() - a.lo()) * i / n);
    for (double e : m.excluded_momenta())
        for (double s : {e, -e})
            if (s > a.lo() && s < a.hi()) br.push_back(s);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return br;
}

cplx weight_product(const Model& m, double k, StateWeight w) {
    if (w == StateWeight::Plain) return 1.0;
    return m.pole_factor(k) * m.pole_factor(-k);
}

double overlap_range(const Amplitude& a, const Amplitude& b) { return 12.0 / std::min(a.sigma, b.sigma) + 20.0; }

} // namespace

cplx smeared_state(const Model& m, const Amplitude& a, double x, int sign, StateWeight w, double tol) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    Integrand f = [&](double k) {
        cplx kk = s * k;
        cplx v = w == StateWeight::Plain ? m.psi(x, kk) : m.regularized(x, kk);
        return a(k) * v;
    };
    QuadOptions o;
    o.abs_tol = tol;
    o.throw_on_failure = false;
    return integrate_panels(f, amplitude_breaks(m, a), o).value;
}

SmearedResult smeared_continuum_orthonormality(const Model& m, const Amplitude& a, const Amplitude& b, StateWeight w,
                                               double tol) {
    const double L = overlap_range(a, b);
    Integrand prod = [&](double x) {
        return smeared_state(m, a, x, +1, w) * smeared_state(m, b, x, -1, w);
    };
    std::vector<double> br;
    for (double x = -L; x <= L + 1e-9; x += 1.0) br.push_back(x);
    QuadOptions o;
    o.abs_tol = tol;
    o.throw_on_failure = false;
    QuadResult r = integrate_panels(prod, br, o);

    // target ∫ a b P(k)P(-k) dk over the common support
    double lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
    cplx target = 0.0;
    if (hi > lo) {
        Amplitude both = a;
        Integrand t = [&](double k) { return a(k) * b(k) * weight_product(m, k, w); };
        both.center = 0.5 * (lo + hi);
        both.sigma = (hi - lo) / 12.0;
        QuadOptions to;
        to.abs_tol = 1e-13;
        to.throw_on_failure = false;
        target = integrate_panels(t, amplitude_breaks(m, both), to).value;
    }
    if (r.abs_error_estimate > tol) throw ToleranceNotMet("smeared overlap error estimate above tolerance");
    return {r.value, target, r.abs_error_estimate};
}

SmearedResult bound_continuum_orthogonality(const Model& m, const SpectralFunction& bound, const Amplitude& a,
                                            StateWeight w, double tol) {
    const double L = overlap_range(a, a);
    Integrand prod = [&](double x) { return bound(x) * smeared_state(m, a, x, +1, w); };
    std::vector<double> br;
    for (double x = -L; x <= L + 1e-9; x += 1.0) br.push_back(x);
    QuadOptions o;
    o.abs_tol = tol;
    o.throw_on_failure = false;
    QuadResult r = integrate_panels(prod, br, o);
    if (r.abs_error_estimate > tol) throw ToleranceNotMet("bound-continuum overlap error estimate above tolerance");
    return {r.value, 0.0, r.abs_error_estimate};
}

} // namespace nhlab
