#include "nhlab/identity_resolution.hpp"

#include "nhlab/biorthogonality.hpp"
#include "nhlab/fit.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>

namespace nhlab {

namespace {

std::string fmt(const char* f, double a, double b) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

struct Window {
    double omega_min = 0.0; // 0: try the plain real-line route first
    double omega_max = 8.0;
    int levels = 4;
    double x_floor = 100.0;
    double periods = 48.0;
    double panel_phase = pi;
};

QuadResult line_integral(const TestFunction& phi, const Integrand& f, double tol, Window w) {
    if (phi.decaying()) {
        const double lo = phi.center - phi.width, hi = phi.center + phi.width;
        const double panel = std::min(phi.width / 10.0, pi / (w.omega_max + 1.0));
        const int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / panel)));
        std::vector<double> br(n + 1);
        for (int i = 0; i <= n; ++i) br[i] = lo + (hi - lo) * i / n;
        QuadOptions o;
        o.abs_tol = tol;
        o.rel_tol = 1e-12;
        o.max_panels = 50000;
        o.throw_on_failure = false;
        return integrate_panels(f, br, o);
    }
    if (w.omega_min <= 0.0) {
        try {
            RealLineOptions o;
            o.tol = tol;
            o.max_panels = 50000;
            return integrate_real_line(f, o);
        } catch (const SlowDecay&) {
        } catch (const ToleranceNotMet&) {
        }
        w.omega_min = 0.25;
    }
    OscillatoryOptions oo;
    oo.tol = tol;
    oo.omega_min = w.omega_min;
    oo.omega_max = std::max(w.omega_max, w.omega_min);
    oo.x_floor = w.x_floor;
    oo.x_cap = 1e7;
    oo.levels = w.levels;
    oo.periods = w.periods;
    oo.panel_phase = w.panel_phase;
    return integrate_oscillatory(f, oo);
}

double max_frequency(const TestFunction& phi) {
    double m = 0.0;
    for (double f : phi.frequencies) m = std::max(m, f);
    for (double f : phi.weak_frequencies) m = std::max(m, f);
    return m;
}

// Φ(k) = ∫φ(x)ψ(x;k)dx, memoized
class Transform {
public:
    Transform(const Model& m, const TestFunction& phi, double tol) : m_(m), phi_(phi), tol_(tol) {}

    cplx operator()(cplx k) {
        auto key = std::make_pair(k.real(), k.imag());
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        cplx v = compute(k);
        cache_.emplace(key, v);
        return v;
    }

private:
    cplx compute(cplx k) const {
        Integrand f = [&](double x) { return phi_(x) * m_.psi(x, k); };
        const double kr = std::abs(k.real());
        if (phi_.decaying()) return line_integral(phi_, f, tol_, {0.0, kr}).value;
        if (k.imag() != 0.0) throw SlowDecay("complex momenta need a decaying test function");
        auto slowest = [kr](const std::vector<double>& fs) {
            double w = std::numeric_limits<double>::infinity();
            for (double fr : fs) w = std::min({w, std::abs(kr - fr), kr + fr});
            return w;
        };
        const double w1 = phi_.frequencies.empty() ? kr : slowest(phi_.frequencies);
        const double w2 = slowest(phi_.weak_frequencies);
        if (w1 < 1e-12) throw ExcludedMomentum("transform of an algebraic test function at a resonant momentum");
        // the window error e^{-(P/4)²/4} stays below 1e-9 relative for P = 36
        Window w{w1, kr + max_frequency(phi_), 1, 10.0, 36.0, 2.0 * pi};
        // a nearly resonant 1/x² piece: bounded window plus extrapolation in 1/X
        if (w.periods / w2 > std::max(w.periods / w1, 10.0)) {
            w.levels = 3;
            w.x_floor = std::min(w.periods / w2, 2000.0);
        }
        return line_integral(phi_, f, tol_, w).value;
    }

    const Model& m_;
    const TestFunction& phi_;
    double tol_;
    std::map<std::pair<double, double>, cplx> cache_;
};

std::vector<double> singular_momenta(const ModelParams& p) {
    switch (p.model) {
    case ModelId::Threshold: return {0.0};
    case ModelId::ContinuumBS: return {-p.alpha.real(), p.alpha.real()};
    default: return {};
    }
}

// breaks on [a,b] refined geometrically towards ends that touch a puncture
std::vector<double> interval_breaks(double a, double b, bool left_edge, bool right_edge, double eps) {
    std::vector<double> br;
    for (double x = a; x < b; x += 0.5) br.push_back(x);
    br.push_back(b);
    for (double d = eps; d < 1.0; d *= 4.0) {
        if (left_edge && a + d < b) br.push_back(a + d);
        if (right_edge && b - d > a) br.push_back(b - d);
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return br;
}

struct Accum {
    cplx value = 0.0;
    double err = 0.0;
    void add(const QuadResult& r) {
        value += r.value;
        err += r.abs_error_estimate;
    }
};

QuadOptions k_options(double tol) {
    QuadOptions o;
    o.abs_tol = tol;
    o.rel_tol = 1e-12;
    o.max_panels = 4000;
    o.throw_on_failure = false;
    return o;
}

// real-axis tails beyond ±K, extended until two consecutive blocks are negligible
void add_tails(const Integrand& f, double K, double block, double tol, Accum& acc) {
    int quiet = 0;
    for (double a = K; a < 400.0 && quiet < 2; a += block) {
        std::vector<double> br;
        for (double x = a; x < a + block; x += 2.0) br.push_back(x);
        br.push_back(a + block);
        QuadResult r = integrate_panels(f, br, k_options(0.1 * tol));
        std::vector<double> brm;
        for (auto it = br.rbegin(); it != br.rend(); ++it) brm.push_back(-*it);
        QuadResult l = integrate_panels(f, brm, k_options(0.1 * tol));
        acc.add(r);
        acc.add(l);
        quiet = std::abs(r.value) + std::abs(l.value) < 0.1 * tol ? quiet + 1 : 0;
    }
}

} // namespace

TestFunction TestFunction::gaussian(double sigma, double center) {
    TestFunction t;
    t.eval = [=](double x) {
        double u = (x - center) / sigma;
        return cplx(std::exp(-0.5 * u * u), 0.0);
    };
    t.gamma_class = 2.0;
    t.label = fmt("gaussian(sigma=%g,center=%g)", sigma, center);
    t.center = center;
    t.width = 10.0 * sigma;
    t.bandwidth = 9.0 / sigma;
    return t;
}

TestFunction TestFunction::algebraic(double power, double gamma_class) {
    TestFunction t;
    t.eval = [=](double x) { return cplx(std::pow(1.0 + x * x, -power), 0.0); };
    t.gamma_class = gamma_class;
    t.label = fmt("(1+x^2)^-%g, gamma=%g", power, gamma_class);
    t.width = std::numeric_limits<double>::infinity();
    t.bandwidth = 20.0;
    t.frequencies = {0.0};
    return t;
}

TestFunction TestFunction::bound_state(const Model& m) {
    if (m.id() != ModelId::Threshold && m.id() != ModelId::ContinuumBS)
        throw ParameterError("bound_state test function is the algebraic ψ0 of Threshold or ContinuumBS");
    TestFunction t;
    t.eval = m.bound_states()[0].eval;
    t.gamma_class = 0.0;
    t.label = "psi0";
    t.width = std::numeric_limits<double>::infinity();
    const ModelParams& p = m.params();
    if (m.id() == ModelId::Threshold) {
        t.frequencies = {0.0};
        t.bandwidth = 20.0 / std::abs(p.z.imag());
    } else {
        const double a = p.alpha.real();
        t.frequencies = {a};
        t.weak_frequencies = {3.0 * a}; // from the expansions of W'/W and 1/W
        t.bandwidth = 20.0;
    }
    return t;
}

bool membership(const TestFunction& f, double gamma) {
    Integrand g = [&](double x) { return cplx(std::norm(f(x)) * (1.0 + std::pow(std::abs(x), gamma)), 0.0); };
    try {
        QuadResult r = integrate_real_line(g, 1e-8);
        return std::isfinite(r.value.real());
    } catch (const SlowDecay&) {
        return false;
    } catch (const ToleranceNotMet&) {
        return false;
    }
}

std::vector<TestFunction> gaussian_battery() {
    return {TestFunction::gaussian(1.0, 0.0), TestFunction::gaussian(0.5, 0.0), TestFunction::gaussian(2.0, 0.0),
            TestFunction::gaussian(1.0, 1.0), TestFunction::gaussian(1.0, -1.0)};
}

std::vector<TestFunction> slow_decay_battery() {
    return {TestFunction::algebraic(0.6, 1.0), TestFunction::algebraic(0.35, 0.0)};
}

std::string to_string(KernelVariant v) {
    switch (v) {
    case KernelVariant::Full: return "full";
    case KernelVariant::Reduced: return "reduced";
    case KernelVariant::Extended: return "extended";
    }
    return "?";
}

KernelVariant variant_from_string(const std::string& s) {
    if (s == "full") return KernelVariant::Full;
    if (s == "reduced") return KernelVariant::Reduced;
    if (s == "extended") return KernelVariant::Extended;
    throw ParameterError("unknown kernel variant: " + s);
}

void validate(const KernelFamily& k) {
    validate(k.model);
    if (!(k.epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    if (!(k.deform_radius > 0.0)) throw ParameterError("deformation radius must be positive");
    if (k.variant == KernelVariant::Full) {
        if (k.model.model == ModelId::ContinuumBS && !(k.deform_radius < k.model.alpha.real()))
            throw ParameterError("deformation radius must be below alpha");
        return;
    }
    if (k.model.model == ModelId::Threshold) {
        if (k.model.n != 1) throw ParameterError("reduced/extended kernels are defined for n = 1");
    } else if (k.model.model == ModelId::ContinuumBS) {
        if (!(k.epsilon < k.model.alpha.real())) throw ParameterError("epsilon must be below alpha");
    } else {
        throw ParameterError("reduced/extended kernels exist for Threshold and ContinuumBS only");
    }
}

double counterterm_weight(const ModelParams& p, double epsilon) {
    if (p.model == ModelId::ContinuumBS) {
        // two double poles at ±α, each giving 4α²/(πε)
        const double a = p.alpha.real();
        return 8.0 * a * a / (pi * epsilon);
    }
    return 1.0 / (pi * epsilon);
}

double printed_counterterm_weight(const ModelParams& p, double epsilon) {
    if (p.model == ModelId::ContinuumBS) return 1.0 / (pi * epsilon * p.alpha.real());
    return 1.0 / (pi * epsilon);
}

struct KernelEvaluator::Impl {
    Impl(const ModelParams& p, const TestFunction& f, double t) : m(p), phi(f), tol(t), T(m, phi, 1e-2 * t) {}

    Model m;
    TestFunction phi;
    double tol;
    Transform T;
    std::vector<SpectralFunction> bs = m.bound_states();
    std::map<int, cplx> proj; // ∫φ·bound state j

    cplx projection(int j) {
        auto it = proj.find(j);
        if (it != proj.end()) return it->second;
        const double wmax = max_frequency(phi) * 2.0 + 1.0;
        cplx v = integrate_against(phi, bs[j].eval, 1e-2 * tol, 0.0, wmax).value;
        proj.emplace(j, v);
        return v;
    }
};

KernelEvaluator::KernelEvaluator(const ModelParams& p, const TestFunction& phi, double tol)
    : impl_(std::make_unique<Impl>(p, phi, tol)) {}

KernelEvaluator::~KernelEvaluator() = default;

KernelValue KernelEvaluator::apply(const KernelFamily& kf, double xp) {
    validate(kf);
    Impl& I = *impl_;
    const ModelParams& mp = I.m.params();
    if (kf.model.model != mp.model || kf.model.alpha != mp.alpha || kf.model.beta != mp.beta ||
        kf.model.z != mp.z || kf.model.n != mp.n)
        throw ParameterError("kernel family and evaluator disagree on the model");
    if (kf.variant == KernelVariant::Full && !I.phi.decaying())
        throw SlowDecay("full kernels need a decaying test function");
    const Model& m = I.m;
    const auto sing = singular_momenta(kf.model);
    const double K = I.phi.bandwidth;
    const double eps = kf.epsilon;
    const double tol = I.tol;
    const auto& bs = I.bs;

    Integrand f = [&](double k) { return m.psi(xp, -k) * I.T(k); };
    Accum acc;
    if (kf.variant == KernelVariant::Full) {
        if (sing.empty()) {
            std::vector<double> br;
            for (double k = -K; k < K; k += 0.5) br.push_back(k);
            br.push_back(K);
            acc.add(integrate_panels(f, br, k_options(tol)));
        } else {
            ContourIntegrand g = [&](cplx k) { return m.psi(xp, -k) * I.T(k); };
            ContourPath path = ContourPath::deformed(K, sing, kf.deform_radius, kf.orientation);
            acc.add(integrate_contour(g, path, k_options(tol), 8));
        }
    } else {
        for (auto [a, b] : ContourPath::punctured(K, sing, eps))
            acc.add(integrate_panels(f, interval_breaks(a, b, a > -K, b < K, eps), k_options(tol)));
    }
    add_tails(f, K, std::max(2.0, 0.5 * K), tol, acc);

    KernelValue kv;
    kv.continuum = acc.value;
    kv.error_estimate = acc.err;
    if (kf.variant == KernelVariant::Full) {
        if (m.id() == ModelId::JordanBound && kf.rotated) {
            // Ψ1Ψ1' + Ψ2Ψ2' built from the rotated pair
            auto rp = rotated_pair(m, kf.kappa);
            const double wmax = max_frequency(I.phi) * 2.0 + 1.0;
            for (auto& r : rp) kv.discrete += integrate_against(I.phi, r.eval, 1e-2 * tol, 0.0, wmax).value * r(xp);
        } else if (m.id() == ModelId::JordanBound) {
            kv.discrete = I.projection(1) * bs[0](xp) + I.projection(0) * bs[1](xp);
        } else if (m.id() == ModelId::TwoLevel) {
            kv.discrete = I.projection(0) * bs[0](xp) + I.projection(1) * bs[1](xp);
        }
    } else {
        const double w = counterterm_weight(kf.model, eps);
        cplx c;
        if (kf.variant == KernelVariant::Reduced) {
            c = I.projection(0);
        } else {
            // 1 - 2sin²(ε(x-x')/2) = cos ε(x-x'): the product keeps oscillating, so
            // algebraic φ needs no extrapolation
            Integrand cw = [&](double x) { return std::cos(eps * (x - xp)) * bs[0](x); };
            const double wmax = max_frequency(I.phi) * 2.0 + 1.0 + eps;
            c = integrate_against(I.phi, cw, 1e-3 * tol, I.phi.decaying() ? 0.0 : eps, wmax, 1).value;
        }
        kv.discrete = -w * c * bs[0](xp);
    }
    kv.value = kv.continuum + kv.discrete;
    return kv;
}

std::vector<KernelValue> apply_kernel(const KernelFamily& kf, const TestFunction& phi, const std::vector<double>& xps,
                                      double tol) {
    validate(kf);
    KernelEvaluator ev(kf.model, phi, tol);
    std::vector<KernelValue> out;
    for (double xp : xps) out.push_back(ev.apply(kf, xp));
    return out;
}

cplx apply_kernel(const KernelFamily& k, const TestFunction& phi, double xp, double tol) {
    return apply_kernel(k, phi, std::vector<double>{xp}, tol)[0].value;
}

cplx correction_term(const KernelFamily& kf, const TestFunction& phi, double xp, double tol) {
    KernelFamily r = kf;
    r.variant = KernelVariant::Extended;
    validate(r);
    const Model m(kf.model);
    auto psi0 = m.bound_states()[0].eval;
    const double eps = kf.epsilon;
    Integrand s2 = [&](double x) {
        double s = std::sin(0.5 * eps * (x - xp));
        return s * s * psi0(x);
    };
    const double wmax = max_frequency(phi) * 2.0 + 1.0 + eps;
    cplx v = integrate_against(phi, s2, tol, phi.decaying() ? 0.0 : eps, wmax).value;
    return 2.0 * counterterm_weight(kf.model, eps) * v * psi0(xp);
}

std::vector<double> default_epsilons() { return {1e-1, 1e-2, 1e-3, 1e-4}; }

ConvergenceStudy convergence_study(const KernelFamily& family, const std::vector<double>& epsilons,
                                   const TestFunction& phi, double xp, double tol) {
    for (size_t i = 1; i < epsilons.size(); ++i)
        if (!(epsilons[i] < epsilons[i - 1])) throw ParameterError("epsilon sequence must decrease");
    ConvergenceStudy s;
    const cplx exact = phi(xp);
    KernelEvaluator ev(family.model, phi, tol);
    for (double e : epsilons) {
        KernelFamily k = family;
        k.epsilon = e;
        cplx v = ev.apply(k, xp).value;
        s.epsilon.push_back(e);
        s.value.push_back(v);
        s.error.push_back(std::abs(v - exact));
    }
    try {
        s.rate = loglog_fit(s.epsilon, s.error).slope;
    } catch (const FitUnstable&) {
        s.rate = 0.0;
    }
    return s;
}

cplx lemma_functional(Lemma which, const TestFunction& phi, double xp, double epsilon, cplx z) {
    if (epsilon == 0.0) return 0.0; // the integrand vanishes identically
    auto sinc = [](double t) { return std::abs(t) < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t; };
    Integrand g;
    if (which == Lemma::Two) {
        g = [=](double x) { return cplx(epsilon * sinc(epsilon * (x - xp)), 0.0); };
    } else {
        g = [=](double x) {
            double u = x - xp, s = sinc(0.5 * epsilon * u);
            return 0.25 * epsilon * u * u * s * s / ((x - z) * (xp - z));
        };
    }
    return integrate_against(phi, g, 1e-12, 0.0, epsilon + max_frequency(phi)).value;
}

double lemma2_bound(const TestFunction& phi, double epsilon) {
    Integrand a2 = [&](double x) { return cplx(std::norm(phi(x)), 0.0); };
    double n2 = line_integral(phi, a2, 1e-12, {0.0, 2.0 * max_frequency(phi) + 1.0}).value.real();
    return std::sqrt(epsilon * pi * n2);
}

QuadResult integrate_against(const TestFunction& phi, const Integrand& g, double tol, double omega_min,
                             double omega_max, int levels) {
    Integrand f = [&](double x) { return phi(x) * g(x); };
    Window w{omega_min, omega_max, levels};
    if (levels == 1) {
        w.x_floor = 10.0;
        w.periods = 36.0;
    }
    return line_integral(phi, f, tol, w);
}

} // namespace nhlab
