#include "nhlab/model.hpp"

#include <algorithm>
#include <cmath>

#include "nhlab/scaled.hpp"

namespace nhlab {

using detail::Scaled;
using detail::scosh;
using detail::ssinh;
using detail::ssinhc;

namespace {

const cplx I{0.0, 1.0};
const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * pi);

double double_factorial(int m) {
    double r = 1.0;
    for (int k = m; k > 1; k -= 2) r *= k;
    return r;
}

cplx ipow(cplx b, int e) {
    cplx r = 1.0;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

double factorial(int m) {
    double r = 1.0;
    for (int k = 2; k <= m; ++k) r *= k;
    return r;
}

// W'/W and W''/W for the three "bracket" models
struct Ratios {
    cplx a1, a2;
};

Ratios ratios(const ModelParams& p, double x) {
    const cplx a = p.alpha;
    const cplx w = x - p.z;
    switch (p.model) {
    case ModelId::JordanBound: {
        Scaled W = ssinh(2.0 * a * x) + Scaled(2.0 * a * w);
        Scaled W1 = Scaled(2.0 * a) * scosh(2.0 * a * x) + Scaled(2.0 * a);
        Scaled W2 = Scaled(4.0 * a * a) * ssinh(2.0 * a * x);
        return {(W1 / W).value(), (W2 / W).value()};
    }
    case ModelId::TwoLevel: {
        const double b = p.beta;
        Scaled W = ssinh(2.0 * a * x) + Scaled(2.0 * a * w) * ssinhc(2.0 * b * w);
        Scaled W1 = Scaled(2.0 * a) * (scosh(2.0 * a * x) + scosh(2.0 * b * w));
        Scaled W2 = Scaled(4.0 * a * a) * ssinh(2.0 * a * x) + Scaled(4.0 * a * b) * ssinh(2.0 * b * w);
        return {(W1 / W).value(), (W2 / W).value()};
    }
    case ModelId::ContinuumBS: {
        cplx W = std::sin(2.0 * a * x) + 2.0 * a * w;
        return {(2.0 * a * std::cos(2.0 * a * x) + 2.0 * a) / W,
                -4.0 * a * a * std::sin(2.0 * a * x) / W};
    }
    case ModelId::Threshold:
        break;
    }
    return {0.0, 0.0};
}

cplx bracket_constant(const ModelParams& p, cplx k) {
    const cplx a2 = p.alpha * p.alpha;
    switch (p.model) {
    case ModelId::JordanBound: return a2 + k * k;
    case ModelId::TwoLevel: return a2 + p.beta * p.beta + k * k;
    case ModelId::ContinuumBS: return k * k - a2;
    case ModelId::Threshold: break;
    }
    return 0.0;
}

cplx two_level_root(const ModelParams& p, cplx k) {
    const cplx ap = p.alpha + p.beta, am = p.alpha - p.beta;
    return std::sqrt(k * k + ap * ap) * std::sqrt(k * k + am * am);
}

} // namespace

std::string to_string(ModelId id) {
    switch (id) {
    case ModelId::JordanBound: return "jordan-bound";
    case ModelId::TwoLevel: return "two-level";
    case ModelId::Threshold: return "threshold";
    case ModelId::ContinuumBS: return "continuum-bs";
    }
    return "?";
}

ModelId model_from_string(const std::string& s) {
    for (auto id : {ModelId::JordanBound, ModelId::TwoLevel, ModelId::Threshold, ModelId::ContinuumBS})
        if (s == to_string(id)) return id;
    throw ParameterError("unknown model '" + s + "'");
}

void validate(const ModelParams& p) {
    auto finite = [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
    if (!finite(p.alpha) || !finite(p.z) || !std::isfinite(p.beta))
        throw ParameterError("non-finite parameter");
    if (p.z.imag() == 0.0) throw ParameterError("Im z must be nonzero");
    switch (p.model) {
    case ModelId::JordanBound:
    case ModelId::ContinuumBS:
        if (p.alpha.imag() != 0.0 || !(p.alpha.real() > 0.0))
            throw ParameterError("alpha must be real and positive");
        break;
    case ModelId::TwoLevel: {
        bool real_branch = p.alpha.imag() == 0.0 && p.alpha.real() > 0.0;
        bool imag_branch = p.alpha.real() == 0.0 && p.alpha.imag() > 0.0;
        if (!real_branch && !imag_branch)
            throw ParameterError("alpha must be real positive or purely imaginary with -i*alpha > 0");
        if (!(p.beta > 0.0)) throw ParameterError("beta must be positive (closed forms divide by beta)");
        if (!(p.beta < pi / (2.0 * std::abs(p.z.imag()))))
            throw ParameterError("beta must be below pi/(2|Im z|)");
        if (std::abs(p.beta - std::abs(p.alpha)) < 1e-12) throw ParameterError("beta must differ from |alpha|");
        break;
    }
    case ModelId::Threshold:
        if (p.n < 1 || p.n > 20) throw ParameterError("n must be in [1, 20]");
        break;
    }
}

int GridSpec::points() const { return static_cast<int>(std::lround((hi - lo) / step)) + 1; }

Model::Model(const ModelParams& p) : p_(p) {
    validate(p_);
    GridSpec g = default_grid();
    for (int i = 0, n = g.points(); i < n; ++i) {
        if (log_abs_denominator(g.at(i)) < std::log(1e-12))
            throw DomainError("|W(x)| vanishes numerically near x = " + std::to_string(g.at(i)));
    }
}

GridSpec Model::default_grid() const {
    double L = 40.0;
    if (p_.model != ModelId::Threshold) L = std::max(40.0, 25.0 / std::abs(p_.alpha));
    return {-L, L, 2.0 * L / 8000.0};
}

double Model::log_abs_denominator(double x) const {
    const cplx a = p_.alpha, w = x - p_.z;
    switch (p_.model) {
    case ModelId::JordanBound: return (ssinh(2.0 * a * x) + Scaled(2.0 * a * w)).log_abs();
    case ModelId::TwoLevel:
        return (ssinh(2.0 * a * x) + Scaled(2.0 * a * w) * ssinhc(2.0 * p_.beta * w)).log_abs();
    case ModelId::ContinuumBS: return std::log(std::abs(std::sin(2.0 * a * x) + 2.0 * a * w));
    case ModelId::Threshold: return std::log(std::abs(w));
    }
    return 0.0;
}

cplx Model::denominator(double x) const {
    const cplx a = p_.alpha, w = x - p_.z;
    switch (p_.model) {
    case ModelId::JordanBound: return (ssinh(2.0 * a * x) + Scaled(2.0 * a * w)).value();
    case ModelId::TwoLevel:
        return (ssinh(2.0 * a * x) + Scaled(2.0 * a * w) * ssinhc(2.0 * p_.beta * w)).value();
    case ModelId::ContinuumBS: return std::sin(2.0 * a * x) + 2.0 * a * w;
    case ModelId::Threshold: return w;
    }
    return 0.0;
}

cplx Model::potential(double x) const {
    if (log_abs_denominator(x) < std::log(1e-12)) throw DomainError("|W(x)| below guard");
    const cplx a = p_.alpha, w = x - p_.z;
    switch (p_.model) {
    case ModelId::JordanBound: {
        Scaled W = ssinh(2.0 * a * x) + Scaled(2.0 * a * w);
        Scaled num = Scaled(a * w) * ssinh(2.0 * a * x) - Scaled(2.0) * scosh(a * x) * scosh(a * x);
        return -16.0 * a * a * (num / (W * W)).value();
    }
    case ModelId::TwoLevel: {
        const double b = p_.beta;
        Scaled W = ssinh(2.0 * a * x) + Scaled(2.0 * a * w) * ssinhc(2.0 * b * w);
        Scaled num = Scaled((a * a + b * b) / a * w) * ssinhc(2.0 * b * w) * ssinh(2.0 * a * x) -
                     Scaled(2.0) * scosh(a * x) * scosh(a * x) * scosh(2.0 * b * w) +
                     Scaled(2.0) * ssinh(b * w) * ssinh(b * w);
        return -16.0 * a * a * (num / (W * W)).value();
    }
    case ModelId::ContinuumBS: {
        cplx W = std::sin(2.0 * a * x) + 2.0 * a * w;
        cplx ca = std::cos(a * x);
        return 16.0 * a * a * (a * w * std::sin(2.0 * a * x) + 2.0 * ca * ca) / (W * W);
    }
    case ModelId::Threshold: return double(p_.n * (p_.n + 1)) / (w * w);
    }
    return 0.0;
}

std::vector<cplx> Model::spectral_points() const {
    const cplx a = p_.alpha;
    switch (p_.model) {
    case ModelId::JordanBound: return {-a * a};
    case ModelId::TwoLevel: return {-(a + p_.beta) * (a + p_.beta), -(a - p_.beta) * (a - p_.beta)};
    case ModelId::Threshold: return {0.0};
    case ModelId::ContinuumBS: return {a * a};
    }
    return {};
}

std::vector<SpectralFunction> Model::bound_states() const {
    const ModelParams p = p_;
    const cplx a = p.alpha, z = p.z;
    std::vector<SpectralFunction> out;
    switch (p.model) {
    case ModelId::JordanBound: {
        const cplx lam = -a * a;
        out.push_back({{Role::Eigen, 0, 0.0}, lam,
                       [a, z](double x) {
                           Scaled W = ssinh(2.0 * a * x) + Scaled(2.0 * a * (x - z));
                           return (Scaled(std::pow(2.0 * a, 1.5)) * scosh(a * x) / W).value();
                       },
                       "psi0"});
        out.push_back({{Role::Associated, 1, 0.0}, lam,
                       [a, z](double x) {
                           Scaled W = ssinh(2.0 * a * x) + Scaled(2.0 * a * (x - z));
                           Scaled num = Scaled(2.0 * a * (x - z)) * ssinh(a * x) - scosh(a * x);
                           return (num / (Scaled(std::sqrt(2.0 * a)) * W)).value();
                       },
                       "psi1"});
        break;
    }
    case ModelId::TwoLevel: {
        const double b = p.beta;
        auto W = [a, b, z](double x) {
            return ssinh(2.0 * a * x) + Scaled(2.0 * a * (x - z)) * ssinhc(2.0 * b * (x - z));
        };
        const cplx cp = std::sqrt(2.0) * I * a * std::sqrt(1.0 / b + 1.0 / a);
        const cplx cm = std::sqrt(2.0) * a * std::sqrt(1.0 / b - 1.0 / a);
        out.push_back({{Role::Eigen, 0, 0.0}, -(a + b) * (a + b),
                       [=](double x) { return (Scaled(cp) * scosh((a - b) * x + b * z) / W(x)).value(); },
                       "psi+"});
        out.push_back({{Role::Eigen, 0, 0.0}, -(a - b) * (a - b),
                       [=](double x) { return (Scaled(cm) * scosh((a + b) * x - b * z) / W(x)).value(); },
                       "psi-"});
        break;
    }
    case ModelId::Threshold: {
        const int n = p.n;
        for (int j = 0; j <= (n - 1) / 2; ++j) {
            double c = double_factorial(2 * (n - j) - 1) / (double_factorial(2 * j) * double_factorial(2 * n - 1));
            int pw = n - 2 * j;
            Role r = j == 0 ? Role{Role::Eigen, 0, 0.0} : Role{Role::Associated, j, 0.0};
            out.push_back({r, 0.0, [c, pw, z](double x) { return c / ipow(x - z, pw); },
                           "psi" + std::to_string(j)});
        }
        break;
    }
    case ModelId::ContinuumBS: {
        const cplx lam = a * a;
        out.push_back({{Role::Eigen, 0, 0.0}, lam,
                       [a, z](double x) { return std::cos(a * x) / (std::sin(2.0 * a * x) + 2.0 * a * (x - z)); },
                       "psi0"});
        out.push_back({{Role::Associated, 1, 0.0}, lam,
                       [a, z](double x) {
                           cplx W = std::sin(2.0 * a * x) + 2.0 * a * (x - z);
                           return (2.0 * a * (x - z) * std::sin(a * x) + std::cos(a * x)) / (4.0 * a * a * W);
                       },
                       "psi1"});
        break;
    }
    }
    return out;
}

cplx Model::pole_factor(cplx k) const {
    switch (p_.model) {
    case ModelId::JordanBound: return p_.alpha * p_.alpha + k * k;
    case ModelId::ContinuumBS: return k * k - p_.alpha * p_.alpha;
    case ModelId::TwoLevel: return two_level_root(p_, k);
    case ModelId::Threshold: return ipow(I * k, p_.n);
    }
    return 1.0;
}

cplx Model::regularized(double x, cplx k) const {
    const cplx ph = std::exp(I * k * x) * inv_sqrt_2pi;
    if (p_.model == ModelId::Threshold) {
        // (ik)^n times the Riccati-Hankel sum, finite at k = 0
        const int n = p_.n;
        const cplx w = x - p_.z;
        cplx sum = 0.0;
        for (int m = 0; m <= n; ++m) {
            double c = factorial(n + m) / (factorial(m) * factorial(n - m)) / std::pow(2.0, m);
            sum += c * ipow(I, n + m) * ipow(k, n - m) / ipow(w, m);
        }
        return sum * ph;
    }
    Ratios r = ratios(p_, x);
    return (bracket_constant(p_, k) + I * k * r.a1 - 0.5 * r.a2) * ph;
}

cplx Model::regularized_dk(double x, cplx k) const {
    const cplx ph = std::exp(I * k * x) * inv_sqrt_2pi;
    if (p_.model == ModelId::Threshold) {
        const int n = p_.n;
        const cplx w = x - p_.z;
        cplx sum = 0.0;
        for (int m = 0; m < n; ++m) {
            double c = factorial(n + m) / (factorial(m) * factorial(n - m)) / std::pow(2.0, m);
            sum += c * ipow(I, n + m) * double(n - m) * ipow(k, n - m - 1) / ipow(w, m);
        }
        return sum * ph + I * x * regularized(x, k);
    }
    Ratios r = ratios(p_, x);
    return (2.0 * k + I * r.a1) * ph + I * x * regularized(x, k);
}

void Model::check_k(cplx k) const {
    if (std::abs(pole_factor(k)) < 1e-14 * (1.0 + std::norm(k)))
        throw ExcludedMomentum("momentum hits a pole of the closed form");
}

cplx Model::psi(double x, cplx k) const {
    check_k(k);
    return regularized(x, k) / pole_factor(k);
}

std::vector<double> Model::excluded_momenta() const {
    switch (p_.model) {
    case ModelId::Threshold: return {0.0};
    case ModelId::ContinuumBS: return {-p_.alpha.real(), p_.alpha.real()};
    default: return {};
    }
}

SpectralFunction Model::continuum_state(double k) const {
    check_k(k);
    Model m = *this;
    return {{Role::Continuum, 0, k}, k * k, [m, k](double x) { return m.psi(x, k); },
            "psi(x;" + std::to_string(k) + ")"};
}

LimitResult continuation_limit(const Model& m, LimitKind kind, int sign) {
    const ModelParams& p = m.params();
    const cplx a = p.alpha, z = p.z;
    const double s = sign >= 0 ? 1.0 : -1.0;
    auto bs = m.bound_states();
    cplx k0, scale;
    std::function<cplx(double)> target;
    bool derivative = kind == LimitKind::Derivative;

    auto bad = [&] { throw ParameterError("limit kind not defined for model " + to_string(p.model)); };
    switch (p.model) {
    case ModelId::JordanBound: {
        if (kind != LimitKind::Value && kind != LimitKind::Derivative) bad();
        k0 = s * I * a;
        scale = -s * std::sqrt(a / pi);
        auto f0 = bs[0].eval, f1 = bs[1].eval;
        cplx c = (1.0 - 2.0 * s * a * z) / (4.0 * a * a);
        if (derivative) target = [f0, f1, c](double x) { return f1(x) - c * f0(x); };
        else target = f0;
        break;
    }
    case ModelId::ContinuumBS: {
        if (kind != LimitKind::Value && kind != LimitKind::Derivative) bad();
        k0 = -s * a;
        scale = -s * 4.0 * I * a * a * inv_sqrt_2pi;
        auto f0 = bs[0].eval, f1 = bs[1].eval;
        cplx c = (1.0 - 2.0 * I * s * a * z) / (4.0 * a * a);
        if (derivative) target = [f0, f1, c](double x) { return f1(x) + c * f0(x); };
        else target = f0;
        break;
    }
    case ModelId::TwoLevel: {
        const double b = p.beta;
        if (kind == LimitKind::ValuePlusLevel) {
            k0 = s * I * (a + b);
            scale = s * (2.0 * I * a * b / std::sqrt(pi)) * std::sqrt(1.0 / b + 1.0 / a) * std::exp(-s * b * z);
            target = bs[0].eval;
        } else if (kind == LimitKind::ValueMinusLevel) {
            k0 = s * I * (a - b);
            scale = -s * (2.0 * a * b / std::sqrt(pi)) * std::sqrt(1.0 / b - 1.0 / a) * std::exp(s * b * z);
            target = bs[1].eval;
        } else {
            bad();
        }
        break;
    }
    case ModelId::Threshold: {
        if (kind != LimitKind::Value) bad();
        k0 = 0.0;
        scale = std::pow(-1.0, p.n) * double_factorial(2 * p.n - 1) * inv_sqrt_2pi;
        target = bs[0].eval;
        break;
    }
    }

    auto k_at = [k0](double d) { return k0 == 0.0 ? cplx(d, 0.0) : k0 * (1.0 - d); };
    auto F = [m, derivative, scale, k_at](double x, double d) {
        cplx k = k_at(d);
        cplx v = derivative ? m.regularized_dk(x, k) / (2.0 * k) : m.regularized(x, k);
        return v / scale;
    };
    auto rich = [F](double x, double d) { return (10.0 * F(x, d / 10.0) - F(x, d)) / 9.0; };

    // e^{ikx} grows like e^{|Im k0||x|}; keep the scan where that stays below e^5
    const double L = std::min(10.0, 5.0 / std::max(std::abs(k0.imag()), 0.5));
    double sup = 0.0, drift = 0.0, mag = 0.0;
    for (double x = -L; x <= L + 1e-9; x += 0.01) {
        cplx r23 = rich(x, 1e-3), r12 = rich(x, 1e-2);
        drift = std::max(drift, std::abs(r23 - r12));
        mag = std::max(mag, std::abs(r23));
        sup = std::max(sup, std::abs(r23 - target(x)));
    }
    if (!(drift <= 1e-2 * (1.0 + mag))) throw ConvergenceError("limit offset sequence did not stabilize");

    LimitResult out;
    out.limit = {{Role::Eigen, 0, 0.0}, 0.0, [rich](double x) { return rich(x, 1e-3); }, "limit"};
    out.scale = scale;
    out.target = {{Role::Eigen, 0, 0.0}, 0.0, target, "target"};
    out.k0 = k0;
    out.sup_error = sup;
    return out;
}

} // namespace nhlab
