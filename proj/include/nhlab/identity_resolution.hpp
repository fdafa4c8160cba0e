#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "nhlab/model.hpp"
#include "nhlab/quadrature.hpp"

namespace nhlab {

struct TestFunction {
    std::function<cplx(double)> eval;
    double gamma_class = 2.0; // declared γ in ∫|φ|²(1+|x|^γ) < ∞
    std::string label;

    // |φ| is negligible outside center ± width.  width = inf marks an
    // algebraic tail; the product φ(x)ψ(x;k) then carries 1/x pieces
    // oscillating with |k ± f| for f in frequencies and 1/x² pieces for f in
    // weak_frequencies.
    double center = 0.0;
    double width = 10.0;
    double bandwidth = 10.0; // initial momentum cutoff
    std::vector<double> frequencies;
    std::vector<double> weak_frequencies;

    cplx operator()(double x) const { return eval(x); }
    bool decaying() const { return std::isfinite(width); }

    static TestFunction gaussian(double sigma, double center);
    static TestFunction algebraic(double power, double gamma_class); // (1+x²)^(-power)
    static TestFunction bound_state(const Model& m);                 // ψ0 of Threshold or ContinuumBS
};

// ∫|φ|²(1+|x|^γ)dx converges (numerically, by envelope probing)
bool membership(const TestFunction& f, double gamma);

std::vector<TestFunction> gaussian_battery();     // σ ∈ {0.5,1,2}, centers {0,±1}
std::vector<TestFunction> slow_decay_battery();   // (1+x²)^-0.6, (1+x²)^-0.35

enum class KernelVariant { Full, Reduced, Extended };

std::string to_string(KernelVariant v);
KernelVariant variant_from_string(const std::string& s);

struct KernelFamily {
    ModelParams model;
    KernelVariant variant = KernelVariant::Full;
    double epsilon = 1e-3;
    Orientation orientation = Orientation::Down; // Full variants with real singular points
    double deform_radius = 0.1;
    bool rotated = false; // JordanBound Full: discrete part from the rotated pair Ψ1, Ψ2
    double kappa = 1.0;
};

void validate(const KernelFamily& k);

// weight w in w·ψ0(x)ψ0(x') subtracted by the Reduced/Extended kernels
double counterterm_weight(const ModelParams& p, double epsilon);
double printed_counterterm_weight(const ModelParams& p, double epsilon);

struct KernelValue {
    cplx value;
    cplx continuum;
    cplx discrete; // bound-state terms or the subtracted counterterm
    double error_estimate = 0.0;
};

// Applies kernels of one model to one test function, memoizing the momentum
// transform ∫φ(x)ψ(x;k)dx across variants, ε and x'.
class KernelEvaluator {
public:
    KernelEvaluator(const ModelParams& p, const TestFunction& phi, double tol = 1e-9);
    ~KernelEvaluator();
    KernelEvaluator(const KernelEvaluator&) = delete;
    KernelEvaluator& operator=(const KernelEvaluator&) = delete;

    KernelValue apply(const KernelFamily& k, double xp);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// ∫K_ε(x,x')φ(x)dx at each x'.
std::vector<KernelValue> apply_kernel(const KernelFamily& k, const TestFunction& phi, const std::vector<double>& xp,
                                      double tol = 1e-9);
cplx apply_kernel(const KernelFamily& k, const TestFunction& phi, double xp, double tol = 1e-9);

// Extended minus Reduced, as printed: (2w)ψ0(x')∫sin²(ε(x-x')/2)ψ0(x)φ(x)dx
cplx correction_term(const KernelFamily& k, const TestFunction& phi, double xp, double tol = 1e-10);

struct ConvergenceStudy {
    std::vector<double> epsilon;
    std::vector<cplx> value;
    std::vector<double> error; // |value - φ(x')|
    double rate = 0.0;          // slope of log error against log ε
};

std::vector<double> default_epsilons(); // 1e-1 … 1e-4

ConvergenceStudy convergence_study(const KernelFamily& family, const std::vector<double>& epsilons,
                                   const TestFunction& phi, double xp, double tol = 1e-9);

enum class Lemma { Two, Three };

// Two:   ∫ sin(ε(x-x'))/(x-x') φ(x) dx
// Three: ∫ sin²(ε(x-x')/2)/(ε(x-z)(x'-z)) φ(x) dx
cplx lemma_functional(Lemma which, const TestFunction& phi, double xp, double epsilon, cplx z = {0.0, 1.0});

// √ε·(π∫|φ|²)^(1/2), from ∫sin²τ/τ² dτ = π
double lemma2_bound(const TestFunction& phi, double epsilon);

// ∫φ·g dx for bounded smooth g.  For algebraic φ, omega_min > 0 forces the
// windowed route with the given slowest/fastest frequencies of the product;
// levels = 1 when every piece of the product oscillates.
QuadResult integrate_against(const TestFunction& phi, const Integrand& g, double tol, double omega_min = 0.0,
                             double omega_max = 8.0, int levels = 4);

} // namespace nhlab
