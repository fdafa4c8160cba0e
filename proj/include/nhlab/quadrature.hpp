#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "nhlab/model.hpp"

namespace nhlab {

struct QuadResult {
    cplx value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

using Integrand = std::function<cplx(double)>;
using ContourIntegrand = std::function<cplx(cplx)>;

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_panels = 400000;
    bool throw_on_failure = true;
};

// Adaptive Gauss-Kronrod 7/15 with global bisection.  `breaks` is sorted and
// defines the initial panels.
QuadResult integrate_panels(const Integrand& f, const std::vector<double>& breaks, const QuadOptions& opt);

QuadResult integrate_interval(const Integrand& f, double a, double b, double tol);

struct RealLineOptions {
    double tol = 1e-10;
    std::optional<double> decay_hint; // p in |f| <= C/|x|^p
    std::vector<double> extra_breaks;
    double probe_start = 16.0;
    double max_truncation = 2048.0; // beyond this the tails are mapped x = L/t
    int max_panels = 400000;
};

// Truncated integral with a fitted power-law tail bound folded into the error.
// Throws SlowDecay when the envelope decays like 1/|x| or slower.
QuadResult integrate_real_line(const Integrand& f, const RealLineOptions& opt);
QuadResult integrate_real_line(const Integrand& f, double tol, std::optional<double> decay_hint = {});

// Integral of f(x)·½erfc((|x|-c)/w) over the line.  panel bounds the initial
// panel width (use a fraction of the fastest period).
QuadResult integrate_windowed(const Integrand& f, double c, double w, double panel, const QuadOptions& opt);

struct OscillatoryOptions {
    double tol = 1e-10;
    double omega_min = 0.1;   // slowest oscillation present in the tails
    double omega_max = 4.0;   // fastest, sets panel width
    double x_floor = 100.0;
    double x_cap = 4e5;
    int levels = 1;           // >1: Richardson in 1/X over X·2^j
    double periods = 48.0;    // X >= periods/omega_min
    double panel_phase = pi;  // initial panels span this phase of the fastest mode
    int max_panels = 2000000;
    bool throw_on_failure = false;
};

// Conditionally convergent integrals over the line: smooth window at scale X
// with X >= periods/omega_min, optionally extrapolated in 1/X for non-oscillating
// algebraic tails.
QuadResult integrate_oscillatory(const Integrand& f, const OscillatoryOptions& opt);

enum class Orientation { Up, Down };

struct Segment {
    enum Kind { Line, Arc } kind = Line;
    cplx a, b;             // Line endpoints
    cplx center;           // Arc
    double radius = 0.0;
    double theta0 = 0.0, theta1 = 0.0;

    cplx point(double t) const;      // t in [0,1]
    cplx derivative(double t) const; // dk/dt
};

struct ContourPath {
    std::vector<Segment> segments;

    // straight real segment [a,b]
    static ContourPath real_axis(double a, double b);
    // [-A, A] with semicircles of radius r around each real singular point
    static ContourPath deformed(double A, std::vector<double> singular, double r, Orientation o);
    // [-A,A] with the windows (s-r, s+r) removed, no arcs
    static std::vector<std::pair<double, double>> punctured(double A, std::vector<double> singular, double r);

    cplx start() const;
    cplx end() const;
    bool connected(double tol = 1e-12) const;
};

QuadResult integrate_contour(const ContourIntegrand& f, const ContourPath& path, double tol);
QuadResult integrate_contour(const ContourIntegrand& f, const ContourPath& path, const QuadOptions& opt,
                             int panels_per_segment = 4);

enum class ClosedKernel { Full, Inner };

// Threshold (n = 1) kernels: ∫_{L(A)} ψ(x;k)ψ(x';-k)dk in closed form (Full, a = A)
// and the inner semicircle part ∫_{L(ε)} (Inner, a = ε).
cplx closed_form_kernel(const ModelParams& p, ClosedKernel which, double a, double x, double xp);

} // namespace nhlab
