#include "nhlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

namespace nhlab {

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double eps_mach = std::numeric_limits<double>::epsilon();

struct Panel {
    double a, b;
    cplx value;
    double err;
    double floor = 0.0; // roundoff level of this panel
};

struct ByError {
    bool operator()(const Panel& l, const Panel& r) const { return l.err < r.err; }
};

Panel gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx fv[15];
    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * xgk[j]);
        fv[14 - j] = f(c + h * xgk[j]);
    }
    cplx resk = wgk[7] * fv[7];
    cplx resg = wg[3] * fv[7];
    double resabs = wgk[7] * std::abs(fv[7]);
    for (int j = 0; j < 7; ++j) {
        resk += wgk[j] * (fv[j] + fv[14 - j]);
        resabs += wgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
        if (j % 2 == 1) resg += wg[j / 2] * (fv[j] + fv[14 - j]);
    }
    const cplx mean = 0.5 * resk;
    double resasc = wgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j) resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

    const double ah = std::abs(h);
    double err = std::abs((resk - resg) * h);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    double floor = 0.0;
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps_mach)) {
        floor = 50.0 * eps_mach * resabs;
        err = std::max(floor, err);
    }
    if (!std::isfinite(err) || !std::isfinite(resk.real()) || !std::isfinite(resk.imag()))
        err = std::numeric_limits<double>::infinity();
    return {a, b, resk * h, err, floor};
}

} // namespace

QuadResult integrate_panels(const Integrand& f, const std::vector<double>& breaks, const QuadOptions& opt) {
    QuadResult out;
    if (breaks.size() < 2) return out;
    std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
    std::vector<Panel> done;
    double total_err = 0.0;
    cplx total = 0.0;
    long evals = 0;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        Panel p = gk15(f, breaks[i], breaks[i + 1]);
        evals += 15;
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }
    int iter = 0;
    double roundoff = 0.0;
    auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
    bool ok = true;
    while (!heap.empty() && total_err > target()) {
        if (static_cast<int>(heap.size() + done.size()) >= opt.max_panels) {
            ok = false;
            break;
        }
        Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (p.err <= 1.01 * p.floor) { // at roundoff, halving does not help
            done.push_back(p);
            roundoff += p.err;
            continue;
        }
        if (!(m > p.a && m < p.b) || (p.b - p.a) < 1e-13 * std::max(1.0, std::abs(m))) {
            done.push_back(p); // cannot refine further
            continue;
        }
        Panel l = gk15(f, p.a, m), r = gk15(f, m, p.b);
        evals += 30;
        total += l.value + r.value - p.value;
        total_err += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
        if (++iter % std::max<size_t>(512, heap.size()) == 0) { // resum to limit drift
            total = 0.0;
            total_err = 0.0;
            auto copy = heap;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().err;
                copy.pop();
            }
            for (auto& d : done) {
                total += d.value;
                total_err += d.err;
            }
        }
    }
    while (!heap.empty()) {
        done.push_back(heap.top());
        heap.pop();
    }
    std::sort(done.begin(), done.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    out.value = 0.0;
    out.abs_error_estimate = 0.0;
    for (auto& d : done) {
        out.value += d.value;
        out.abs_error_estimate += d.err;
    }
    out.evaluations = evals;
    if (out.abs_error_estimate - roundoff > target()) ok = false;
    if (!ok && opt.throw_on_failure) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "adaptive quadrature: error estimate %.3e above tolerance %.3e",
                      out.abs_error_estimate, target());
        throw ToleranceNotMet(msg);
    }
    return out;
}

QuadResult integrate_interval(const Integrand& f, double a, double b, double tol) {
    QuadOptions o;
    o.abs_tol = tol;
    if (a == b) return {};
    if (a > b) {
        QuadResult r = integrate_panels(f, {b, a}, o);
        r.value = -r.value;
        return r;
    }
    return integrate_panels(f, {a, b}, o);
}

namespace {

std::vector<double> geometric_breaks(double L, const std::vector<double>& extra) {
    std::vector<double> br{-L, 0.0, L};
    for (double t = 0.5; t < L; t *= 2.0) {
        br.push_back(t);
        br.push_back(-t);
    }
    for (double e : extra)
        if (std::abs(e) < L) br.push_back(e);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return br;
}

double envelope(const Integrand& f, double L) {
    double e = 0.0;
    for (int i = 0; i < 64; ++i) {
        double x = L * (1.0 + (i + 0.5) / 64.0);
        e = std::max({e, std::abs(f(x)), std::abs(f(-x))});
    }
    return e;
}

} // namespace

QuadResult integrate_real_line(const Integrand& f, const RealLineOptions& opt) {
    double L = opt.probe_start;
    double e_prev = envelope(f, L / 2.0);
    long probe_evals = 128;
    double tail = 0.0;
    double trunc = 0.0;
    int slow = 0;
    bool mapped_tails = false;
    for (;;) {
        double e = envelope(f, L);
        probe_evals += 128;
        if (e == 0.0 || e < 1e-300) {
            trunc = 2.0 * L;
            tail = 0.0;
            break;
        }
        double p = opt.decay_hint ? *opt.decay_hint : std::log2(e_prev / std::max(e, 1e-300));
        if (!opt.decay_hint && L >= 64.0) {
            if (p <= 1.05) ++slow;
            else slow = 0;
            if (slow >= 3) throw SlowDecay("integrand envelope decays like |x|^-" + std::to_string(p));
        }
        if (p > 1.0) {
            // both tails, beyond 2L, with C = e·L^p
            double bound = 2.0 * e * L / (p - 1.0) * std::pow(0.5, p - 1.0);
            if (bound < 0.5 * opt.tol) {
                trunc = 2.0 * L;
                tail = bound;
                break;
            }
        }
        if (2.0 * L > opt.max_truncation) {
            trunc = L;
            mapped_tails = true;
            break;
        }
        e_prev = e;
        L *= 2.0;
    }
    QuadOptions qo;
    qo.abs_tol = 0.5 * opt.tol;
    qo.max_panels = opt.max_panels;
    QuadResult r = integrate_panels(f, geometric_breaks(trunc, opt.extra_breaks), qo);
    r.evaluations += probe_evals;
    r.abs_error_estimate += tail;
    if (mapped_tails) {
        // x = ±L/t, dx = L/t² dt
        Integrand g = [&f, trunc](double t) {
            if (t <= 0.0) return cplx(0.0);
            double x = trunc / t;
            return (f(x) + f(-x)) * (trunc / (t * t));
        };
        QuadOptions to = qo;
        to.abs_tol = 0.25 * opt.tol;
        std::vector<double> br{0.0};
        for (double t = 1e-12; t < 1.0; t *= 4.0) br.push_back(t);
        br.push_back(1.0);
        QuadResult rt = integrate_panels(g, br, to);
        r.value += rt.value;
        r.abs_error_estimate += rt.abs_error_estimate;
        r.evaluations += rt.evaluations;
    }
    return r;
}

QuadResult integrate_real_line(const Integrand& f, double tol, std::optional<double> decay_hint) {
    RealLineOptions o;
    o.tol = tol;
    o.decay_hint = decay_hint;
    return integrate_real_line(f, o);
}

QuadResult integrate_windowed(const Integrand& f, double c, double w, double panel, const QuadOptions& opt) {
    const double R = c + 5.0 * w; // erfc(5) ~ 1.5e-12
    Integrand g = [&f, c, w](double x) {
        double chi = 0.5 * std::erfc((std::abs(x) - c) / w);
        return chi == 0.0 ? cplx(0.0) : f(x) * chi;
    };
    // panels grow with |x| up to `panel`, the tails being slowly varying
    std::vector<double> pos{0.0};
    while (pos.back() < R) pos.push_back(std::min(R, pos.back() + std::min(panel, std::max(0.5, 0.25 * pos.back()))));
    std::vector<double> br;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) br.push_back(-*it);
    br.insert(br.end(), pos.begin() + 1, pos.end());
    return integrate_panels(g, br, opt);
}

QuadResult integrate_oscillatory(const Integrand& f, const OscillatoryOptions& opt) {
    const double X0 = std::clamp(opt.periods / opt.omega_min, opt.x_floor, opt.x_cap);
    const double panel = std::min(0.5 * X0, opt.panel_phase / std::max(opt.omega_max, 1e-3));
    QuadOptions qo;
    qo.abs_tol = opt.tol / (2.0 * opt.levels);
    qo.max_panels = opt.max_panels;
    qo.throw_on_failure = opt.throw_on_failure;

    std::vector<cplx> vals;
    std::vector<double> hs;
    QuadResult out;
    for (int j = 0; j < opt.levels; ++j) {
        double X = X0 * std::pow(2.0, j);
        QuadResult r = integrate_windowed(f, 1.5 * X, 0.25 * X, panel, qo);
        vals.push_back(r.value);
        hs.push_back(1.0 / X);
        out.abs_error_estimate += r.abs_error_estimate;
        out.evaluations += r.evaluations;
    }
    if (opt.levels == 1) {
        out.value = vals[0];
        return out;
    }
    // Neville extrapolation to h = 0
    std::vector<cplx> t = vals;
    cplx prev_best = t.back();
    for (int m = 1; m < opt.levels; ++m) {
        for (int i = opt.levels - 1; i >= m; --i)
            t[i] = (hs[i - m] * t[i] - hs[i] * t[i - 1]) / (hs[i - m] - hs[i]);
        if (m == opt.levels - 2) prev_best = t[opt.levels - 1];
    }
    out.value = t[opt.levels - 1];
    out.abs_error_estimate += std::abs(out.value - prev_best);
    return out;
}

cplx Segment::point(double t) const {
    if (kind == Line) return a + (b - a) * t;
    double th = theta0 + (theta1 - theta0) * t;
    return center + radius * cplx(std::cos(th), std::sin(th));
}

cplx Segment::derivative(double t) const {
    if (kind == Line) return b - a;
    double th = theta0 + (theta1 - theta0) * t;
    return radius * (theta1 - theta0) * cplx(-std::sin(th), std::cos(th));
}

ContourPath ContourPath::real_axis(double a, double b) {
    ContourPath p;
    Segment s;
    s.kind = Segment::Line;
    s.a = a;
    s.b = b;
    p.segments.push_back(s);
    return p;
}

ContourPath ContourPath::deformed(double A, std::vector<double> singular, double r, Orientation o) {
    std::sort(singular.begin(), singular.end());
    ContourPath p;
    double cur = -A;
    for (double s : singular) {
        if (s - r <= cur || s + r >= A) throw ParameterError("deformation radius overlaps path ends or another point");
        Segment line;
        line.kind = Segment::Line;
        line.a = cur;
        line.b = s - r;
        p.segments.push_back(line);
        Segment arc;
        arc.kind = Segment::Arc;
        arc.center = s;
        arc.radius = r;
        arc.theta0 = pi;
        arc.theta1 = o == Orientation::Up ? 0.0 : 2.0 * pi;
        p.segments.push_back(arc);
        cur = s + r;
    }
    Segment last;
    last.kind = Segment::Line;
    last.a = cur;
    last.b = A;
    p.segments.push_back(last);
    return p;
}

std::vector<std::pair<double, double>> ContourPath::punctured(double A, std::vector<double> singular, double r) {
    std::sort(singular.begin(), singular.end());
    std::vector<std::pair<double, double>> out;
    double cur = -A;
    for (double s : singular) {
        out.emplace_back(cur, s - r);
        cur = s + r;
    }
    out.emplace_back(cur, A);
    return out;
}

cplx ContourPath::start() const { return segments.front().point(0.0); }
cplx ContourPath::end() const { return segments.back().point(1.0); }

bool ContourPath::connected(double tol) const {
    for (size_t i = 0; i + 1 < segments.size(); ++i)
        if (std::abs(segments[i].point(1.0) - segments[i + 1].point(0.0)) > tol) return false;
    return !segments.empty() && std::abs(start().imag()) < tol && std::abs(end().imag()) < tol;
}

QuadResult integrate_contour(const ContourIntegrand& f, const ContourPath& path, const QuadOptions& opt,
                             int panels_per_segment) {
    // segment i occupies parameter range [i, i+1]
    Integrand g = [&f, &path](double t) {
        int i = std::min(static_cast<int>(std::floor(t)), static_cast<int>(path.segments.size()) - 1);
        const Segment& s = path.segments[i];
        double u = t - i;
        return f(s.point(u)) * s.derivative(u);
    };
    std::vector<double> br;
    for (size_t i = 0; i < path.segments.size(); ++i)
        for (int j = 0; j < panels_per_segment; ++j) br.push_back(i + double(j) / panels_per_segment);
    br.push_back(static_cast<double>(path.segments.size()));
    return integrate_panels(g, br, opt);
}

QuadResult integrate_contour(const ContourIntegrand& f, const ContourPath& path, double tol) {
    QuadOptions o;
    o.abs_tol = tol;
    return integrate_contour(f, path, o, 8);
}

cplx closed_form_kernel(const ModelParams& p, ClosedKernel which, double a, double x, double xp) {
    if (p.model != ModelId::Threshold || p.n != 1) throw ParameterError("closed-form kernels exist for Threshold n=1");
    const double u = x - xp;
    const cplx d = (x - p.z) * (xp - p.z);
    // sin(a u)/u with its removable point
    auto sinc = [](double a_, double u_) { return std::abs(a_ * u_) < 1e-8 ? a_ * (1.0 - a_ * a_ * u_ * u_ / 6.0) : std::sin(a_ * u_) / u_; };
    if (which == ClosedKernel::Full) return (sinc(a, u) - std::cos(a * u) / (a * d)) / pi;
    const double s = std::sin(0.5 * a * u);
    return -1.0 / (pi * a * d) + sinc(a, u) / pi + 2.0 * s * s / (pi * a * d);
}

} // namespace nhlab
