#pragma once

#include <vector>

#include "nhlab/model.hpp"

namespace nhlab {

// β → 0 limits taking TwoLevel(α, β, z) to JordanBound(α, z), α > 0
struct CoalescenceStudy {
    std::vector<double> beta;
    std::vector<double> error;     // sup-norm (or pointwise) error per β
    std::vector<double> error_alt; // ψ+ route of the ψ0 limit
    double order = 0.0;            // fitted slope of log error against log β
    double order_alt = 0.0;
};

std::vector<double> default_betas(); // 0.1, 0.05, …, 0.00625

// sup over the grid of |2√α√β ψ-(x) - ψ0(x)| and |-2i√α√β ψ+(x) - ψ0(x)|
CoalescenceStudy coalesce_psi0(double alpha, cplx z, const std::vector<double>& betas,
                               GridSpec grid = {-15.0, 15.0, 0.01});

// 2√α ∂β[√β(ψ- + iψ+)] / ∂β(λ- - λ+) against ψ1, by central difference with step β/2
CoalescenceStudy coalesce_psi1(double alpha, cplx z, const std::vector<double>& betas,
                               GridSpec grid = {-15.0, 15.0, 0.01});

// |ψ+(x)ψ+(x') + ψ-(x)ψ-(x') - ψ0(x)ψ1(x') - ψ1(x)ψ0(x')|
CoalescenceStudy coalesce_kernel(double alpha, cplx z, const std::vector<double>& betas, double x, double xp);

cplx level_splitting(double alpha, double beta); // λ- - λ+ = 4αβ
cplx discrete_trace(double alpha, cplx z, double beta); // ∫(ψ+² + ψ-²)dx
cplx limit_trace(double alpha, cplx z);                 // ∫(ψ0ψ1 + ψ1ψ0)dx

} // namespace nhlab
