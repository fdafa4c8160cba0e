#pragma once

#include <string>
#include <vector>

#include "nhlab/model.hpp"

namespace nhlab {

struct ResidualReport {
    std::string relation;
    double sup_norm = 0.0;
    GridSpec grid;
    int stencil_order = 8;
};

// second-derivative stencil weights, offsets -m..m, order 2,4,6,8
std::vector<double> second_derivative_weights(int order);
std::vector<double> first_derivative_weights(int order);

// (-∂² + V) f on the grid points
std::vector<cplx> apply_h(const Model& m, const std::function<cplx(double)>& f, const GridSpec& g, int order = 8);

// f'' and f' at a single point
cplx second_derivative(const std::function<cplx(double)>& f, double x, double h, int order = 8);
cplx first_derivative(const std::function<cplx(double)>& f, double x, double h, int order = 8);

// one report per printed differential identity, on [lo,hi] with the given step
std::vector<ResidualReport> chain_residuals(const Model& m, double lo = -20.0, double hi = 20.0, double step = 5e-3,
                                            int order = 8);

} // namespace nhlab
