#pragma once

// Complex numbers carried as m·e^s so sh/ch of large arguments can be divided
// without overflow.

#include <algorithm>
#include <cmath>
#include <complex>

namespace nhlab::detail {

struct Scaled {
    std::complex<double> m;
    double s = 0.0;

    Scaled() = default;
    Scaled(std::complex<double> v) : m(v), s(0.0) {}
    Scaled(std::complex<double> v, double sc) : m(v), s(sc) {}

    std::complex<double> value() const { return m * std::exp(s); }
    double log_abs() const { return std::log(std::abs(m)) + s; }
};

inline Scaled operator+(const Scaled& a, const Scaled& b) {
    if (a.m == 0.0) return b;
    if (b.m == 0.0) return a;
    double s = std::max(a.s, b.s);
    return {a.m * std::exp(a.s - s) + b.m * std::exp(b.s - s), s};
}
inline Scaled operator-(const Scaled& a) { return {-a.m, a.s}; }
inline Scaled operator-(const Scaled& a, const Scaled& b) { return a + (-b); }
inline Scaled operator*(const Scaled& a, const Scaled& b) { return {a.m * b.m, a.s + b.s}; }
inline Scaled operator/(const Scaled& a, const Scaled& b) { return {a.m / b.m, a.s - b.s}; }

inline Scaled ssinh(std::complex<double> t) {
    double r = std::abs(t.real());
    if (r < 20.0) return {std::sinh(t), 0.0};
    return {(std::exp(t - r) - std::exp(-t - r)) * 0.5, r};
}

inline Scaled scosh(std::complex<double> t) {
    double r = std::abs(t.real());
    if (r < 20.0) return {std::cosh(t), 0.0};
    return {(std::exp(t - r) + std::exp(-t - r)) * 0.5, r};
}

// sh(u)/u, series near 0
inline Scaled ssinhc(std::complex<double> u) {
    if (std::abs(u) < 1e-4) {
        auto u2 = u * u;
        return {1.0 + u2 / 6.0 + u2 * u2 / 120.0, 0.0};
    }
    Scaled s = ssinh(u);
    return {s.m / u, s.s};
}

} // namespace nhlab::detail
