#pragma once

#include <vector>

namespace nhlab {

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0; // log of the prefactor
    double r2 = 0.0;
    int points = 0;
};

// least squares of log|y| against log x over the positive entries; throws
// FitUnstable with fewer than two usable points
LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

} // namespace nhlab
