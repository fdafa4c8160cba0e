#include "nhlab/coalescence.hpp"

#include <cmath>
#include <limits>

#include "nhlab/biorthogonality.hpp"
#include "nhlab/fit.hpp"

namespace nhlab {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0)) throw ParameterError("coalescence is studied for real alpha > 0");
}

Model two_level(double alpha, double beta, cplx z) { return Model({ModelId::TwoLevel, alpha, beta, z, 1}); }
Model jordan(double alpha, cplx z) { return Model({ModelId::JordanBound, alpha, 0.0, z, 1}); }

double fitted_order(const std::vector<double>& b, const std::vector<double>& e) {
    try {
        return loglog_fit(b, e).slope;
    } catch (const FitUnstable&) {
        return 0.0;
    }
}

} // namespace

std::vector<double> default_betas() { return {0.1, 0.05, 0.025, 0.0125, 0.00625}; }

CoalescenceStudy coalesce_psi0(double alpha, cplx z, const std::vector<double>& betas, GridSpec grid) {
    check_alpha(alpha);
    const auto psi0 = jordan(alpha, z).bound_states()[0];
    const cplx I{0.0, 1.0};
    CoalescenceStudy s;
    for (double b : betas) {
        const auto bs = two_level(alpha, b, z).bound_states(); // ψ+, ψ-
        const double c = 2.0 * std::sqrt(alpha * b);
        double em = 0.0, ep = 0.0;
        for (int i = 0; i < grid.points(); ++i) {
            const double x = grid.at(i);
            const cplx target = psi0(x);
            em = std::max(em, std::abs(c * bs[1](x) - target));
            ep = std::max(ep, std::abs(-I * c * bs[0](x) - target));
        }
        s.beta.push_back(b);
        s.error.push_back(em);
        s.error_alt.push_back(ep);
    }
    s.order = fitted_order(s.beta, s.error);
    s.order_alt = fitted_order(s.beta, s.error_alt);
    return s;
}

CoalescenceStudy coalesce_psi1(double alpha, cplx z, const std::vector<double>& betas, GridSpec grid) {
    check_alpha(alpha);
    const auto psi1 = jordan(alpha, z).bound_states()[1];
    const cplx I{0.0, 1.0};
    CoalescenceStudy s;
    for (double b : betas) {
        const double h = 0.5 * b;
        const auto lo = two_level(alpha, b - h, z).bound_states();
        const auto hi = two_level(alpha, b + h, z).bound_states();
        auto g = [&](const std::vector<SpectralFunction>& bs, double beta, double x) {
            return std::sqrt(beta) * (bs[1](x) + I * bs[0](x));
        };
        const cplx dsplit = (level_splitting(alpha, b + h) - level_splitting(alpha, b - h)) / (2.0 * h);
        double err = 0.0, diff = 0.0, mag = 0.0;
        for (int i = 0; i < grid.points(); ++i) {
            const double x = grid.at(i);
            const cplx gl = g(lo, b - h, x), gh = g(hi, b + h, x);
            const cplx d = (gh - gl) / (2.0 * h);
            diff = std::max(diff, std::abs(gh - gl));
            mag = std::max({mag, std::abs(gh), std::abs(gl)});
            err = std::max(err, std::abs(2.0 * std::sqrt(alpha) * d / dsplit - psi1(x)));
        }
        if (diff < 1e3 * std::numeric_limits<double>::epsilon() * mag)
            throw ConvergenceError("beta differences are at round-off level");
        s.beta.push_back(b);
        s.error.push_back(err);
    }
    s.order = fitted_order(s.beta, s.error);
    return s;
}

CoalescenceStudy coalesce_kernel(double alpha, cplx z, const std::vector<double>& betas, double x, double xp) {
    check_alpha(alpha);
    const auto jb = jordan(alpha, z).bound_states();
    const cplx limit = jb[0](x) * jb[1](xp) + jb[1](x) * jb[0](xp);
    CoalescenceStudy s;
    for (double b : betas) {
        const auto bs = two_level(alpha, b, z).bound_states();
        const cplx v = bs[0](x) * bs[0](xp) + bs[1](x) * bs[1](xp);
        s.beta.push_back(b);
        s.error.push_back(std::abs(v - limit));
    }
    s.order = fitted_order(s.beta, s.error);
    return s;
}

cplx level_splitting(double alpha, double beta) {
    const double lm = -(alpha - beta) * (alpha - beta), lp = -(alpha + beta) * (alpha + beta);
    return lm - lp;
}

cplx discrete_trace(double alpha, cplx z, double beta) {
    check_alpha(alpha);
    const auto bs = two_level(alpha, beta, z).bound_states();
    return binorm(bs[0], bs[0]) + binorm(bs[1], bs[1]);
}

cplx limit_trace(double alpha, cplx z) {
    check_alpha(alpha);
    const auto bs = jordan(alpha, z).bound_states();
    return 2.0 * binorm(bs[0], bs[1]);
}

} // namespace nhlab
