// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "nhlab/biorthogonality.hpp"
#include "nhlab/coalescence.hpp"
#include "nhlab/diffop.hpp"
#include "nhlab/fit.hpp"
#include "nhlab/jordan_finite.hpp"
#include "nhlab/observables.hpp"
#include "nhlab/scattering.hpp"
#include "nhlab/suites.hpp"

using namespace nhlab;

namespace {

const cplx I{0.0, 1.0};

struct Line {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

template <class F>
bool run(int n, double budget, F body) {
    auto t0 = std::chrono::steady_clock::now();
    Line l;
    try {
        body(l);
    } catch (const std::exception& e) {
        l.require(false, std::string("exception: ") + e.what());
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    l.require(dt < budget, "runtime " + fmt("%.1f", dt) + " s over " + fmt("%.0f", budget) + " s");
    std::printf("criterion %d: %s (%.1f s)%s%s\n", n, l.pass ? "PASS" : "FAIL", dt, l.detail.empty() ? "" : "  ",
                l.detail.c_str());
    std::fflush(stdout);
    return l.pass;
}

ModelParams params(ModelId id, double beta = 0.0, int n = 1) {
    ModelParams p;
    p.model = id;
    p.beta = beta;
    p.n = n;
    return p;
}

// trapezoid on ±√(160/ε), spectrally accurate for the Gaussian-damped packet
template <class F>
cplx trapezoid(F f, double e) {
    const double L = std::sqrt(160.0 / e), h = 2e-3;
    cplx s = 0.0;
    for (double x = -L; x <= L; x += h) s += f(x);
    return s * h;
}

cplx oracle_potential(double e) {
    return trapezoid(
        [&](double x) {
            cplx p = packet_eval(e, I, x);
            return p * p * 2.0 / ((x - I) * (x - I));
        },
        e);
}

double close(cplx a, cplx b) { return std::abs(a - b); }

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "nhlab";
    bool all = true;

    all &= run(1, 5.0, [](Line& l) {
        for (ModelId id : {ModelId::JordanBound, ModelId::ContinuumBS}) {
            for (auto& r : chain_residuals(Model(params(id)), -20.0, 20.0)) {
                l.require(r.sup_norm < 1e-6, to_string(id) + " " + r.relation + " = " + fmt("%.2e", r.sup_norm));
            }
        }
    });

    all &= run(2, 60.0, [](Line& l) {
        auto jb = Model(params(ModelId::JordanBound)).bound_states();
        l.require(close(binorm(jb[0], jb[0]), 0.0) < 1e-8, "jordan-bound psi0 psi0");
        l.require(close(binorm(jb[0], jb[1]), 1.0) < 1e-8, "jordan-bound psi0 psi1");
        auto tl = Model(params(ModelId::TwoLevel, 0.3)).bound_states();
        l.require(close(binorm(tl[0], tl[0]), 1.0) < 1e-8, "two-level psi+ psi+");
        l.require(close(binorm(tl[1], tl[1]), 1.0) < 1e-8, "two-level psi- psi-");
        l.require(close(binorm(tl[0], tl[1]), 0.0) < 1e-8, "two-level psi+ psi-");
        auto th = Model(params(ModelId::Threshold, 0.0, 3)).bound_states();
        for (size_t i = 0; i < th.size(); ++i)
            for (size_t j = i; j < th.size(); ++j)
                l.require(close(binorm(th[i], th[j]), 0.0) < 1e-8, "threshold n=3 pair " + std::to_string(i) +
                                                                        std::to_string(j));
    });

    all &= run(3, 60.0, [](Line& l) {
        auto eps = default_packet_epsilons();
        std::vector<double> b, h, v, ratio;
        for (double e : eps) {
            cplx bn = packet_binorm(e, I);
            PacketEv t = packet_ev(e, I, PacketObservable::Total);
            PacketEv p = packet_ev(e, I, PacketObservable::Potential);
            b.push_back(std::abs(bn));
            h.push_back(std::abs(t.value));
            v.push_back(std::abs(p.value));
            ratio.push_back(std::abs(t.value / bn));
            l.require(std::abs(bn / printed_packet_binorm(e) - 1.0) < 1e-3, "binorm prefactor at eps " + fmt("%g", e));
        }
        const double sb = loglog_fit(eps, b).slope, sh = loglog_fit(eps, h).slope, sv = loglog_fit(eps, v).slope;
        l.require(std::abs(sb - 0.5) <= 0.02, "binorm slope " + fmt("%.4f", sb));
        l.require(std::abs(sh - 1.5) <= 0.02, "<H> slope " + fmt("%.4f", sh));
        l.require(std::abs(sv - 1.5) <= 0.02, "<V> slope " + fmt("%.4f", sv) + " (not a power law at z=i)");
        // prefactors: the oracle governs, the printed values are compared for the record
        for (double e : {1e-1, 1e-3}) {
            const double s = std::pow(e, 1.5);
            cplx pv = packet_ev(e, I, PacketObservable::Potential).value;
            l.require(close(pv, oracle_potential(e)) < 1e-8 * s, "<V> against the quadrature oracle at " + fmt("%g", e));
        }
        const double s = std::pow(1e-3, 1.5);
        PacketEv t = packet_ev(1e-3, I, PacketObservable::Total);
        l.require(std::abs(t.value / t.printed - 1.0) < 1e-3, "<H> prefactor " + fmt("%.7f", t.value.real() / s));
        PacketEv p = packet_ev(1e-3, I, PacketObservable::Potential);
        std::printf("  <V>/eps^1.5 at eps=1e-3: %.9f, printed %.9f\n", p.value.real() / s, p.printed.real() / s);
        // eps ascending: the ratio must shrink towards the small-eps end
        for (size_t i = 1; i < ratio.size(); ++i) l.require(ratio[i - 1] < ratio[i], "<H>/binorm not shrinking with eps");
        l.require(ratio.front() < 0.05 * ratio.back(), "<H>/binorm ratio does not vanish");
    });

    all &= run(4, 60.0, [](Line& l) {
        auto betas = default_betas();
        CoalescenceStudy c0 = coalesce_psi0(1.0, I, betas), c1 = coalesce_psi1(1.0, I, betas);
        for (auto* c : {&c0, &c1}) {
            for (size_t i = 1; i < c->error.size(); ++i) l.require(c->error[i] < c->error[i - 1], "errors not decreasing");
            l.require(c->order >= 0.8, "order " + fmt("%.3f", c->order));
        }
        for (auto [x, xp] : {std::pair{0.3, -0.7}, {0.0, 0.0}, {1.2, 0.5}, {-2.0, 1.0}}) {
            double e = coalesce_kernel(1.0, I, {1e-3}, x, xp).error[0];
            l.require(e < 1e-2, "kernel at (" + fmt("%g", x) + "," + fmt("%g", xp) + ") = " + fmt("%.2e", e));
        }
    });

    all &= run(5, 120.0, [](Line& l) {
        Suite s = identity_suite();
        for (auto& r : s.records)
            if (!r.pass) l.require(false, r.id + " (" + r.note + ")");
    });

    all &= run(6, 60.0, [](Line& l) {
        double o = pole_order(params(ModelId::JordanBound), -1.0).order;
        l.require(std::abs(o - 2.0) <= 0.05, "jordan-bound order " + fmt("%.4f", o));
        for (double lam : {-1.69, -0.49}) {
            o = pole_order(params(ModelId::TwoLevel, 0.3), lam).order;
            l.require(std::abs(o - 1.0) <= 0.05, "two-level order " + fmt("%.4f", o));
        }
        double sl = pole_order(params(ModelId::Threshold), 0.0).slope;
        l.require(std::abs(sl + 1.5) <= 0.05, "threshold exponent " + fmt("%.4f", sl));
        for (ModelId id : {ModelId::JordanBound, ModelId::TwoLevel, ModelId::Threshold, ModelId::ContinuumBS}) {
            ModelParams p = default_params(id);
            // k = α is excluded for continuum-bs
            std::vector<double> ks = id == ModelId::ContinuumBS ? std::vector<double>{0.5, 1.5, 2.0}
                                                                : std::vector<double>{0.5, 1.0, 2.0};
            for (double k : ks) {
                Transmission t = transmission(p, k);
                l.require(close(t.T, printed_transmission(p, k)) < 1e-6, to_string(id) + " T at k=" + fmt("%g", k));
                l.require(std::abs(t.R) < 1e-8, to_string(id) + " R at k=" + fmt("%g", k));
            }
        }
    });

    all &= run(7, 10.0, [](Line& l) {
        std::mt19937_64 rng(20240601);
        int bad = 0;
        for (int i = 0; i < 100; ++i) {
            JordanSpec s = random_spec(rng);
            TriangleTransform t = random_transform(s, rng);
            bad += !verify_spec(s, t).pass(1e-10);
        }
        l.require(bad == 0, std::to_string(bad) + " of 100 specs fail");
        Eigen::Matrix2cd expect;
        expect << -0.5, -0.5 * I, -0.5 * I, -1.5;
        l.require(mansym(1.0, 1.0) == expect, "mansym cell");
    });

    all &= run(8, 300.0, [&](Line& l) {
        std::string cmd = cli + " verify --all --out acceptance_verify_all.json";
        int st = std::system(cmd.c_str());
        int code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
        l.require(code == 0, "verify --all exit code " + std::to_string(code));
    });

    return all ? 0 : 1;
}
