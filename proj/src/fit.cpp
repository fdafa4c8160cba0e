#include "nhlab/fit.hpp"

#include <cmath>

#include "nhlab/errors.hpp"

namespace nhlab {

LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(x[i] > 0.0) || !(std::abs(y[i]) > 0.0) || !std::isfinite(y[i])) continue;
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(std::abs(y[i])));
    }
    const int n = static_cast<int>(lx.size());
    if (n < 2) throw FitUnstable("log-log fit needs two positive points");
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw FitUnstable("log-log fit over a single abscissa");
    LogLogFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    f.points = n;
    return f;
}

} // namespace nhlab
