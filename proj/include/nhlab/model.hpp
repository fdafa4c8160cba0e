#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "nhlab/errors.hpp"

namespace nhlab {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

enum class ModelId { JordanBound, TwoLevel, Threshold, ContinuumBS };

std::string to_string(ModelId id);
ModelId model_from_string(const std::string& s); // accepts "jordan-bound" etc.

struct ModelParams {
    ModelId model = ModelId::JordanBound;
    cplx alpha{1.0, 0.0};
    double beta = 0.0;
    cplx z{0.0, 1.0};
    int n = 1;
};

// throws ParameterError
void validate(const ModelParams& p);

struct Role {
    enum Kind { Eigen, Associated, Continuum } kind = Eigen;
    int order = 0;   // Associated
    double k = 0.0;  // Continuum
};

struct SpectralFunction {
    Role role;
    cplx lambda;
    std::function<cplx(double)> eval;
    std::string label;

    cplx operator()(double x) const { return eval(x); }
};

struct GridSpec {
    double lo = -40.0, hi = 40.0, step = 0.01;
    int points() const; // (hi-lo)/step + 1
    double at(int i) const { return lo + i * step; }
};

// Evaluators for one validated parameter set.  Pure, cheap to copy.
class Model {
public:
    explicit Model(const ModelParams& p); // validates, scans |W| on the default grid

    const ModelParams& params() const { return p_; }
    ModelId id() const { return p_.model; }

    cplx potential(double x) const;
    cplx denominator(double x) const; // W(x); may overflow for huge |x|
    double log_abs_denominator(double x) const;

    // normalizable eigenfunctions and associated functions with roles
    std::vector<SpectralFunction> bound_states() const;

    // ψ(·;k) for real k, throws ExcludedMomentum at poles
    SpectralFunction continuum_state(double k) const;

    // Closed forms continued to complex k.  psi = regularized / pole_factor.
    cplx psi(double x, cplx k) const;
    cplx regularized(double x, cplx k) const;
    cplx regularized_dk(double x, cplx k) const; // ∂_k of regularized
    cplx pole_factor(cplx k) const;

    // real momenta where the closed form has a pole
    std::vector<double> excluded_momenta() const;

    GridSpec default_grid() const;

    // λ values of the discrete spectrum (with multiplicity one per cell)
    std::vector<cplx> spectral_points() const;

private:
    ModelParams p_;
    void check_k(cplx k) const;
};

enum class LimitKind { Value, Derivative, ValuePlusLevel, ValueMinusLevel };

struct LimitResult {
    SpectralFunction limit;   // extrapolated left side divided by scale
    cplx scale;               // the printed prefactor
    SpectralFunction target;  // combination of bound states the closed forms predict
    cplx k0;                  // limit point
    double sup_error = 0.0;   // sup |limit - target| on [-L,L], L = min(10, 5/|Im k0|)
};

// sign = +1 selects the upper sign of the printed ± / ∓ identity
LimitResult continuation_limit(const Model& m, LimitKind kind, int sign);

} // namespace nhlab
