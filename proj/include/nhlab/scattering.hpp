#pragma once

#include <vector>

#include "nhlab/model.hpp"

namespace nhlab {

// √λ with Im√λ ≥ 0, cut along λ ≥ 0
cplx branch_sqrt(cplx lambda);

// (πi/√λ) ψ(x_>;√λ) ψ(x_<;-√λ); throws OnCut, AtPole
cplx green(const ModelParams& p, cplx lambda, double x, double xp);

// ∂ₓG(x'-0) - ∂ₓG(x'+0), each side differentiated as a smooth branch;
// equals 1 so that (h - λ)G = δ with h = -∂² + V
cplx green_derivative_jump(const ModelParams& p, cplx lambda, double xp);

std::vector<double> default_probe_radii(); // 1e-1 … 1e-3, nine points

struct PoleOrderFit {
    cplx lambda0;
    double slope = 0.0; // d log|G| / d log r
    double order = 0.0; // -slope
    double r2 = 0.0;
    std::vector<double> radii;
    std::vector<double> magnitudes;
};

PoleOrderFit pole_order(const ModelParams& p, cplx lambda0, const std::vector<double>& radii = default_probe_radii(),
                        double theta = 3.0 * pi / 4.0, double x = 0.3, double xp = -0.7);

// λ of the poles (or branch point) the printed discussion names
std::vector<cplx> green_singularities(const ModelParams& p);

struct Transmission {
    cplx T;
    cplx R;
    double error_estimate = 0.0; // spread of the last two extrapolation levels
};

std::vector<double> default_sample_points(); // 200, 400, 800, 1600

// T = A(+∞)/A(-∞), R = B(-∞)/A(-∞) from the split ψ = A e^{ikx} + B e^{-ikx},
// sampled at ±x and extrapolated in 1/x.  Throws AsymptoteNotReached.
Transmission transmission(const ModelParams& p, double k, const std::vector<double>& xs = default_sample_points());

// the printed T(k); TwoLevel needs 0 < β < α real, or α imaginary with -iα > 0
cplx printed_transmission(const ModelParams& p, double k);

} // namespace nhlab
