#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nhlab/model.hpp"
#include "nhlab/quadrature.hpp"

namespace nhlab {

struct BinormValue {
    cplx value;
    double error_estimate = 0.0;
    std::string route; // "real-line" or "windowed"
};

// ∫ f g dx, no conjugation.  Falls back to the windowed oscillatory route when
// the product decays like 1/|x| but oscillates.
BinormValue binorm_detailed(const std::function<cplx(double)>& f, const std::function<cplx(double)>& g, double tol);
cplx binorm(const SpectralFunction& f, const SpectralFunction& g, double tol = 1e-10);

struct BinormTable {
    std::vector<std::string> labels;
    std::vector<std::vector<cplx>> values;
    std::vector<std::vector<std::optional<cplx>>> targets; // nullopt: reported only
    std::vector<std::vector<std::string>> notes;            // "needs smearing", provenance
    double tol = 1e-8;

    bool entry_pass(size_t i, size_t j) const;
    bool pass() const;
};

using TargetMatrix = std::vector<std::vector<std::optional<cplx>>>;

BinormTable gram(const std::vector<SpectralFunction>& states, const TargetMatrix& targets, double tol = 1e-8);

// the printed binorm relations for the model's bound states
TargetMatrix printed_targets(const Model& m);
BinormTable bound_state_table(const Model& m, double tol = 1e-8);

// Ψ1 = (κψ0 + ψ1/κ)/√2, Ψ2 = i(κψ0 - ψ1/κ)/√2 for JordanBound
std::vector<SpectralFunction> rotated_pair(const Model& m, double kappa = 1.0);

// Gaussian in k truncated at ±6σ, normalized to ∫a² dk = 1
struct Amplitude {
    double center = 1.0;
    double sigma = 0.2;
    double norm = 1.0;

    static Amplitude gaussian(double center, double sigma);
    double operator()(double k) const;
    double lo() const { return center - 6.0 * sigma; }
    double hi() const { return center + 6.0 * sigma; }
};

enum class StateWeight {
    Plain,       // ψ(x;k)
    Regularized  // pole factor times ψ(x;k): ikψ (Threshold), (k²-α²)ψ (ContinuumBS), ...
};

// Φ_a(x) = ∫ a(k) w(k) ψ(x; s·k) dk with s = ±1
cplx smeared_state(const Model& m, const Amplitude& a, double x, int sign, StateWeight w, double tol = 1e-13);

struct SmearedResult {
    cplx computed;
    cplx target;
    double error_estimate;
};

// ∬ Φ_a(x) Φ'_b(x) dx against ∫ a b P(k)P(-k) dk (P = 1 for Plain)
SmearedResult smeared_continuum_orthonormality(const Model& m, const Amplitude& a, const Amplitude& b, StateWeight w,
                                               double tol = 1e-8);

// ∫ bound(x) Φ_a(x) dx, target 0
SmearedResult bound_continuum_orthogonality(const Model& m, const SpectralFunction& bound, const Amplitude& a,
                                            StateWeight w, double tol = 1e-8);

} // namespace nhlab
