#include "nhlab/diffop.hpp"

#include <cmath>
#include <stdexcept>

namespace nhlab {

std::vector<double> second_derivative_weights(int order) {
    switch (order) {
    case 2: return {1.0, -2.0, 1.0};
    case 4: return {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
    case 6: return {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
    case 8:
        return {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
    }
    throw ParameterError("stencil order must be 2, 4, 6 or 8");
}

std::vector<double> first_derivative_weights(int order) {
    switch (order) {
    case 2: return {-0.5, 0.0, 0.5};
    case 4: return {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
    case 6: return {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
    case 8:
        return {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0, 4.0 / 5, -1.0 / 5, 4.0 / 105, -1.0 / 280};
    }
    throw ParameterError("stencil order must be 2, 4, 6 or 8");
}

cplx second_derivative(const std::function<cplx(double)>& f, double x, double h, int order) {
    auto w = second_derivative_weights(order);
    const int m = static_cast<int>(w.size()) / 2;
    cplx s = 0.0;
    for (int j = -m; j <= m; ++j) s += w[j + m] * f(x + j * h);
    return s / (h * h);
}

cplx first_derivative(const std::function<cplx(double)>& f, double x, double h, int order) {
    auto w = first_derivative_weights(order);
    const int m = static_cast<int>(w.size()) / 2;
    cplx s = 0.0;
    for (int j = -m; j <= m; ++j)
        if (w[j + m] != 0.0) s += w[j + m] * f(x + j * h);
    return s / h;
}

std::vector<cplx> apply_h(const Model& m, const std::function<cplx(double)>& f, const GridSpec& g, int order) {
    auto w = second_derivative_weights(order);
    const int r = static_cast<int>(w.size()) / 2;
    const int n = g.points();
    // samples on the grid extended by the stencil radius
    std::vector<cplx> fs(n + 2 * r);
    for (int i = 0; i < n + 2 * r; ++i) fs[i] = f(g.lo + (i - r) * g.step);
    std::vector<cplx> out(n);
    const double h2 = g.step * g.step;
    for (int i = 0; i < n; ++i) {
        cplx d2 = 0.0;
        for (int j = 0; j < 2 * r + 1; ++j) d2 += w[j] * fs[i + j];
        out[i] = -d2 / h2 + m.potential(g.at(i)) * fs[i + r];
    }
    return out;
}

std::vector<ResidualReport> chain_residuals(const Model& m, double lo, double hi, double step, int order) {
    GridSpec g{lo, hi, step};
    if (g.points() < 17) throw ParameterError("grid needs at least 16 steps");
    auto bs = m.bound_states();
    std::vector<ResidualReport> out;
    auto sup = [](const std::vector<cplx>& a, const std::vector<cplx>& b, cplx lam, const std::vector<cplx>* rhs) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) {
            cplx r = a[i] - lam * b[i];
            if (rhs) r -= (*rhs)[i];
            s = std::max(s, std::abs(r));
        }
        return s;
    };
    auto sample = [&g](const std::function<cplx(double)>& f) {
        std::vector<cplx> v(g.points());
        for (int i = 0; i < g.points(); ++i) v[i] = f(g.at(i));
        return v;
    };

    if (m.id() == ModelId::TwoLevel) {
        for (auto& s : bs) {
            auto hs = apply_h(m, s.eval, g, order);
            out.push_back({"h " + s.label + " = lambda " + s.label, sup(hs, sample(s.eval), s.lambda, nullptr), g, order});
        }
    } else {
        // Jordan chain: (h - λ)ψ_0 = 0, (h - λ)ψ_j = ψ_{j-1}
        std::vector<cplx> prev;
        for (size_t j = 0; j < bs.size(); ++j) {
            auto hs = apply_h(m, bs[j].eval, g, order);
            auto self = sample(bs[j].eval);
            std::string rel = j == 0 ? "(h - lambda) " + bs[j].label + " = 0"
                                     : "(h - lambda) " + bs[j].label + " = " + bs[j - 1].label;
            out.push_back({rel, sup(hs, self, bs[j].lambda, j == 0 ? nullptr : &prev), g, order});
            prev = std::move(self);
        }
    }
    // continuum states at a few momenta away from excluded points
    for (double k : {0.7, 1.3}) {
        auto cs = m.continuum_state(k);
        auto hs = apply_h(m, cs.eval, g, order);
        out.push_back({"(h - k^2) psi(x;" + std::to_string(k).substr(0, 3) + ") = 0",
                       sup(hs, sample(cs.eval), k * k, nullptr), g, order});
    }
    return out;
}

} // namespace nhlab
