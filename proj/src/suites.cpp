#include "nhlab/suites.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "nhlab/biorthogonality.hpp"
#include "nhlab/coalescence.hpp"
#include "nhlab/diffop.hpp"
#include "nhlab/fit.hpp"
#include "nhlab/identity_resolution.hpp"
#include "nhlab/jordan_finite.hpp"
#include "nhlab/observables.hpp"
#include "nhlab/scattering.hpp"

namespace nhlab {

namespace {

using clk = std::chrono::steady_clock;

double seconds_since(clk::time_point t0) { return std::chrono::duration<double>(clk::now() - t0).count(); }

template <class F>
Suite timed(std::string name, F body) {
    Suite s;
    s.name = std::move(name);
    auto t0 = clk::now();
    body(s);
    s.runtime = seconds_since(t0);
    return s;
}

// runs one check, turning a thrown library error into a failed record
template <class F>
void guarded(Suite& s, const std::string& id, const std::string& anchor, F body) {
    try {
        body();
    } catch (const std::exception& e) {
        s.add(failure(id, anchor, e));
    }
}

std::string tag(const ModelParams& p) { return to_string(p.model); }

json vec_json(const std::vector<double>& v) {
    json j = json::array();
    for (double x : v) j.push_back(std::isfinite(x) ? json(x) : json(nullptr));
    return j;
}

bool decreasing(const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

} // namespace

ModelParams default_params(ModelId id) {
    ModelParams p;
    p.model = id;
    p.alpha = 1.0;
    p.z = cplx(0.0, 1.0);
    if (id == ModelId::TwoLevel) p.beta = 0.3;
    return p;
}

Suite chain_suite(const ModelParams& p) {
    return timed("chain/" + tag(p) + (p.model == ModelId::Threshold ? "-n" + std::to_string(p.n) : ""), [&](Suite& s) {
        const std::string anchor = tag(p) + "/chain";
        guarded(s, "residuals", anchor, [&] {
            Model m(p);
            for (auto& r : chain_residuals(m, -20.0, 20.0))
                s.add(check_below(r.relation, anchor, r.sup_norm, 1e-6, "stencil order 8, step 5e-3 on [-20,20]"));
        });
    });
}

Suite binorm_suite(const ModelParams& p) {
    return timed("binorm/" + tag(p) + (p.model == ModelId::Threshold ? "-n" + std::to_string(p.n) : ""), [&](Suite& s) {
        const std::string anchor = tag(p) + "/binorm";
        Model m(p);
        guarded(s, "bound-states", anchor, [&] {
            BinormTable t = bound_state_table(m, 1e-8);
            for (size_t i = 0; i < t.labels.size(); ++i)
                for (size_t j = i; j < t.labels.size(); ++j) {
                    std::string id = t.labels[i] + "*" + t.labels[j];
                    if (t.targets[i][j]) s.add(check_close(id, anchor, t.values[i][j], *t.targets[i][j], t.tol, t.notes[i][j]));
                    else s.add(info(id, anchor, to_json(t.values[i][j]), "not fixed by the closed forms; " + t.notes[i][j]));
                }
        });
        if (p.model == ModelId::JordanBound) {
            guarded(s, "rotated-pair", anchor, [&] {
                auto pr = rotated_pair(m, 1.0);
                TargetMatrix tg{{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(1.0)}};
                BinormTable t = gram(pr, tg, 1e-8);
                for (size_t i = 0; i < 2; ++i)
                    for (size_t j = i; j < 2; ++j)
                        s.add(check_close(t.labels[i] + "*" + t.labels[j], tag(p) + "/rotated-pair", t.values[i][j],
                                          *tg[i][j], 1e-8, t.notes[i][j]));
            });
            guarded(s, "smeared-same", anchor, [&] {
                auto a = Amplitude::gaussian(1.0, 0.2);
                auto r = smeared_continuum_orthonormality(m, a, a, StateWeight::Plain, 1e-6);
                s.add(check_close("smeared k=1 vs k=1", tag(p) + "/continuum-delta", r.computed, r.target, 1e-4));
            });
            guarded(s, "smeared-disjoint", anchor, [&] {
                auto a = Amplitude::gaussian(1.0, 0.1), b = Amplitude::gaussian(2.0, 0.1);
                auto r = smeared_continuum_orthonormality(m, a, b, StateWeight::Plain, 1e-7);
                s.add(check_close("smeared k=1 vs k=2", tag(p) + "/continuum-delta", r.computed, 0.0, 1e-6));
            });
            for (size_t i = 0; i < 2; ++i)
                guarded(s, "bound-continuum", anchor, [&] {
                    auto bs = m.bound_states();
                    auto r = bound_continuum_orthogonality(m, bs[i], Amplitude::gaussian(1.0, 0.2), StateWeight::Plain,
                                                           1e-7);
                    s.add(check_close(bs[i].label + " vs bump k=1", tag(p) + "/bound-continuum", r.computed, 0.0, 1e-6));
                });
        }
        if (p.model == ModelId::Threshold && p.n == 1)
            guarded(s, "smeared-weighted", anchor, [&] {
                auto a = Amplitude::gaussian(1.0, 0.2);
                auto r = smeared_continuum_orthonormality(m, a, a, StateWeight::Regularized, 1e-6);
                s.add(check_close("ik-weighted k=1 vs k=1", tag(p) + "/continuum-delta", r.computed, r.target, 1e-4,
                                  "target is the k^2-weighted overlap"));
            });
        if (p.model == ModelId::ContinuumBS)
            guarded(s, "psi1-bump", anchor, [&] {
                auto bs = m.bound_states();
                auto r = bound_continuum_orthogonality(m, bs[1], Amplitude::gaussian(p.alpha.real(), 0.2),
                                                       StateWeight::Regularized, 1e-6);
                s.add(check_close(bs[1].label + " vs bump k=alpha", tag(p) + "/bound-continuum", r.computed, 0.0, 1e-4,
                                  "regularized continuum states, distributional"));
            });
    });
}

Suite limits_suite(const ModelParams& p) {
    return timed("limits/" + tag(p), [&](Suite& s) {
        Model m(p);
        std::vector<std::pair<LimitKind, const char*>> kinds;
        switch (p.model) {
        case ModelId::JordanBound:
        case ModelId::ContinuumBS: kinds = {{LimitKind::Value, "value"}, {LimitKind::Derivative, "derivative"}}; break;
        case ModelId::TwoLevel:
            kinds = {{LimitKind::ValuePlusLevel, "value-plus"}, {LimitKind::ValueMinusLevel, "value-minus"}};
            break;
        case ModelId::Threshold: kinds = {{LimitKind::Value, "value"}}; break;
        }
        for (auto [kind, name] : kinds)
            for (int sign : {+1, -1}) {
                if (p.model == ModelId::Threshold && sign < 0) continue;
                std::string id = std::string(name) + (sign > 0 ? "/upper" : "/lower");
                guarded(s, id, tag(p) + "/limits", [&] {
                    LimitResult r = continuation_limit(m, kind, sign);
                    s.add(check_below(id, tag(p) + "/limits", r.sup_error, 1e-3, "sup-norm against the bound states"));
                });
            }
    });
}

Suite scattering_suite(const ModelParams& p, std::vector<double> ks) {
    return timed("scatter/" + tag(p), [&](Suite& s) {
        const std::string anchor = tag(p) + "/scattering";
        Model m(p);
        if (ks.empty()) {
            ks = {0.5, 1.0, 2.0};
            // k = α is a pole of the ContinuumBS closed form
            if (p.model == ModelId::ContinuumBS) ks = {0.5, 1.5, 2.0};
        }
        Table tab;
        tab.columns = {"k", "T_re", "T_im", "abs_T", "abs_R", "printed_re", "printed_im", "pass"};
        for (double k : ks) {
            const std::string kid = "k=" + format_number(k);
            guarded(s, "T " + kid, anchor, [&] {
                Transmission t = transmission(p, k);
                cplx pt = printed_transmission(p, k);
                Record rt = check_close("T " + kid, anchor, t.T, pt, 1e-6, "printed closed form");
                Record rr = check_below("R " + kid, anchor, std::abs(t.R), 1e-8);
                Record ru = check_close("|T| " + kid, anchor, std::abs(t.T), 1.0, 1e-6);
                tab.rows.push_back({k, t.T.real(), t.T.imag(), std::abs(t.T), std::abs(t.R), pt.real(), pt.imag(),
                                    rt.pass && rr.pass && ru.pass});
                s.add(rt);
                s.add(rr);
                s.add(ru);
            });
        }
        s.tables.push_back(tab);
        guarded(s, "T k=50", anchor, [&] {
            Transmission t50 = transmission(p, 50.0), t2 = transmission(p, 2.0);
            s.add(check_below("|T-1| k=50", anchor, std::abs(t50.T - 1.0), 0.1, "T -> 1 at large k"));
            s.add(check_true("|T-1| shrinks from k=2 to k=50", anchor,
                             std::abs(t50.T - 1.0) <= std::abs(t2.T - 1.0) + 1e-12));
            s.add(check_below("R k=50", anchor, std::abs(t50.R), 1e-8));
        });
        if (p.model == ModelId::ContinuumBS) {
            bool threw = false;
            try {
                transmission(p, p.alpha.real());
            } catch (const ExcludedMomentum&) {
                threw = true;
            }
            s.add(check_true("k=alpha excluded", anchor, threw, "pole of the closed form"));
        }

        const std::string ganchor = tag(p) + "/green";
        const cplx lam{-0.3, 0.4};
        guarded(s, "green symmetry", ganchor, [&] {
            double d = std::abs(green(p, lam, 0.5, -1.2) - green(p, lam, -1.2, 0.5));
            s.add(check_below("symmetry", ganchor, d, 1e-12));
        });
        guarded(s, "green jump", ganchor, [&] {
            s.add(check_close("derivative jump", ganchor, green_derivative_jump(p, lam, 0.2), 1.0, 1e-6,
                              "dG(x'-0) - dG(x'+0), so that (h - lambda)G = delta"));
        });
        guarded(s, "green residual", ganchor, [&] {
            const double xp = 0.2, h = 5e-3;
            double worst = 0.0;
            auto G = [&](double x) { return green(p, lam, x, xp); };
            for (double x : {-3.0, -1.0, -0.4, 0.8, 1.7, 4.0}) {
                cplx r = -second_derivative(G, x, h) + (m.potential(x) - lam) * G(x);
                worst = std::max(worst, std::abs(r));
            }
            s.add(check_below("(h - lambda)G off the diagonal", ganchor, worst, 1e-6));
        });
        const auto sing = green_singularities(p);
        for (size_t i = 0; i < sing.size(); ++i) {
            const std::string id = "pole order at lambda=" + format_number(sing[i].real());
            guarded(s, id, ganchor, [&] {
                if (p.model == ModelId::ContinuumBS) {
                    PoleOrderFit f = pole_order(p, sing[i]);
                    s.add(info(id, ganchor, f.order, "double pole on the cut; reported only"));
                    return;
                }
                PoleOrderFit f = pole_order(p, sing[i]);
                if (p.model == ModelId::Threshold)
                    s.add(check_close("branch exponent at lambda=0", ganchor, f.slope, -1.5, 0.05));
                else
                    s.add(check_close(id, ganchor, f.order, p.model == ModelId::JordanBound ? 2.0 : 1.0, 0.05));
            });
        }
    });
}

std::vector<double> default_packet_epsilons() {
    std::vector<double> e;
    for (int i = 0; i <= 6; ++i) e.push_back(std::pow(10.0, -3.0 + i / 3.0));
    return e;
}

Suite packet_suite(cplx z, const std::vector<double>& epsilons) {
    return timed("packet", [&](Suite& s) {
        const std::string anchor = "threshold/packet";
        if (epsilons.size() < 2) throw ParameterError("packet sweep needs at least two epsilon values");
        Table tab;
        tab.columns = {"epsilon", "binorm", "ev_total", "ev_potential", "ev_kinetic",
                       "binorm_im", "ev_total_im", "ev_potential_im", "ev_kinetic_im"};
        std::vector<double> B, T, V, eps = epsilons;
        std::sort(eps.begin(), eps.end());
        double kin_cross = 0.0;
        for (double e : eps) {
            cplx b = packet_binorm(e, z);
            PacketEv t = packet_ev(e, z, PacketObservable::Total);
            PacketEv v = packet_ev(e, z, PacketObservable::Potential);
            PacketEv k = packet_ev(e, z, PacketObservable::Kinetic);
            kin_cross = std::max(kin_cross, std::abs(k.value - k.via_diffop) / std::abs(k.value));
            kin_cross = std::max(kin_cross, std::abs(k.value - (t.value - v.value)) / std::abs(k.value));
            B.push_back(std::abs(b));
            T.push_back(std::abs(t.value));
            V.push_back(std::abs(v.value));
            tab.rows.push_back({e, b.real(), t.value.real(), v.value.real(), k.value.real(), b.imag(), t.value.imag(),
                                v.value.imag(), k.value.imag()});
        }
        s.tables.push_back(tab);
        const LogLogFit fb = loglog_fit(eps, B), ft = loglog_fit(eps, T), fv = loglog_fit(eps, V);
        s.add(check_close("binorm slope", anchor, fb.slope, 0.5, 0.02));
        s.add(check_close("<H> slope", anchor, ft.slope, 1.5, 0.02));
        s.add(check_close("<V> slope", anchor, fv.slope, 1.5, 0.02,
                          "<V>/eps^1.5 depends on sqrt(eps) z; the power law holds only for eps |z|^2 << 1"));

        const double pb = std::sqrt(pi / 8.0), pt = std::sqrt(9.0 * pi / 128.0), pv = -std::sqrt(25.0 * pi / 36.0);
        s.add(check_close("binorm prefactor", anchor, std::exp(fb.intercept), pb, 1e-3 * pb));
        // per-ε quadrature is the oracle for the ε^{3/2} prefactors
        const double e0 = eps.front(), e32 = std::pow(e0, 1.5);
        const double oracle_t = tab.rows.front()[2].get<double>() / e32;
        const double oracle_v = tab.rows.front()[3].get<double>() / e32;
        s.add(check_close("<H> prefactor vs printed", anchor, oracle_t, pt, 1e-3 * pt, "oracle at smallest epsilon"));
        {
            Record r = info("<V> prefactor vs printed", anchor, json{{"oracle", oracle_v}, {"printed", pv}},
                            std::abs(oracle_v - pv) > 1e-3 * std::abs(pv)
                                ? "oracle disagrees with the printed prefactor: suspected typo, oracle governs"
                                : "agrees");
            r.target = pv;
            s.add(r);
        }
        if (z == cplx(0.0, 1.0)) {
            // frozen oracle values at z = i
            const std::vector<std::pair<double, double>> frozen{
                {1e-1, -1.332340482}, {1e-2, -1.801966312}, {1e-3, -1.992370415}};
            for (auto [e, val] : frozen) {
                PacketEv v = packet_ev(e, z, PacketObservable::Potential);
                s.add(check_close("<V>/eps^1.5 at eps=" + format_number(e), anchor, v.value.real() / std::pow(e, 1.5),
                                  val, 1e-6 * std::abs(val), "regression against the quadrature oracle"));
            }
        }
        {
            // ε|z|² << 1: the potential prefactor approaches its ε → 0 limit
            const cplx zs{0.0, 0.01};
            std::vector<double> vs;
            for (double e : eps) vs.push_back(std::abs(packet_ev(e, zs, PacketObservable::Potential).value));
            const LogLogFit f = loglog_fit(eps, vs);
            s.add(info("<V> slope at z=0.01i", anchor, f.slope, "scaling regime where sqrt(eps)|z| is small"));
            const double lim = -std::sqrt(25.0 * pi / 18.0);
            const double v = packet_ev(1e-3, zs, PacketObservable::Potential).value.real() / std::pow(1e-3, 1.5);
            s.add(check_close("<V>/eps^1.5 at eps=1e-3, z=0.01i", anchor, v, lim, 1e-2 * std::abs(lim),
                              "eps -> 0 limit -sqrt(25 pi/18) of the oracle"));
        }
        std::vector<double> rt, rv;
        for (size_t i = eps.size(); i-- > 0;) {
            rt.push_back(T[i] / B[i]);
            rv.push_back(V[i] / B[i]);
        }
        s.add(check_true("<H>/binorm -> 0", anchor, decreasing(rt) && rt.back() < 0.05 * rt.front()));
        s.add(check_true("<V>/binorm -> 0", anchor, decreasing(rv) && rv.back() < 0.05 * rv.front()));
        s.add(check_below("kinetic cross-check (relative)", anchor, kin_cross, 1e-6,
                          "total - potential against the stencil and analytic second derivatives"));
    });
}

Suite averages_suite(cplx z) {
    return timed("averages", [&](Suite& s) {
        const std::string anchor = "threshold/averages";
        ModelParams p = default_params(ModelId::Threshold);
        p.z = z;
        Model m(p);
        auto psi0 = m.bound_states()[0].eval;
        guarded(s, "hermitian", anchor, [&] {
            AverageResult h = average(m, psi0, OperatorId::Potential, Prescription::Hermitian);
            if (z == cplx(0.0, 1.0)) s.add(check_close("hermitian <V> on psi0", anchor, h.value, -0.5, 1e-8));
            else s.add(info("hermitian <V> on psi0", anchor, to_json(h.value)));
            AverageResult id = average(m, psi0, OperatorId::Identity, Prescription::Hermitian);
            s.add(check_close("hermitian <1> on psi0", anchor, id.value, 1.0, 1e-10));
        });
        guarded(s, "raw", anchor, [&] {
            AverageResult r = average(m, psi0, OperatorId::Potential, Prescription::Raw);
            s.add(check_true("raw <V> on psi0 is 0/0", anchor, r.indeterminate, r.note));
            bool threw = false;
            try {
                checked_value(r);
            } catch (const ZeroDenominator&) {
                threw = true;
            }
            s.add(check_true("raw value raises ZeroDenominator", anchor, threw));
        });
        guarded(s, "binorm", anchor, [&] {
            Eigen::MatrixXcd O(2, 2);
            O << 1.0, 2.0, 2.0, cplx(0.0, 1.0);
            AverageResult r = binorm_average({cplx(1.0), cplx(0.0, 1.0)}, O);
            // Σ C*_r C_s O_rs = 1 + 2i - 2i + i = 1 + i, over Σ|C|² = 2
            s.add(check_close("binorm prescription example", anchor, r.value, cplx(0.5, 0.5), 1e-14));
        });
    });
}

Suite coalescence_suite(double alpha, cplx z, const std::vector<double>& betas) {
    return timed("coalesce", [&](Suite& s) {
        const std::string anchor = "two-level/coalescence";
        if (betas.size() < 2) throw ParameterError("coalescence sweep needs at least two beta values");
        Table tab;
        tab.columns = {"beta", "psi0_error", "psi0_error_plus", "psi1_error", "kernel_error"};
        CoalescenceStudy c0 = coalesce_psi0(alpha, z, betas);
        CoalescenceStudy c1 = coalesce_psi1(alpha, z, betas);
        CoalescenceStudy ck = coalesce_kernel(alpha, z, betas, 0.3, -0.7);
        for (size_t i = 0; i < betas.size(); ++i)
            tab.rows.push_back({betas[i], c0.error[i], c0.error_alt[i], c1.error[i], ck.error[i]});
        s.tables.push_back(tab);
        s.add(check_at_least("psi0 order (psi-)", anchor, c0.order, 0.8));
        s.add(check_at_least("psi0 order (psi+)", anchor, c0.order_alt, 0.8));
        s.add(check_at_least("psi1 order", anchor, c1.order, 0.8));
        s.add(check_true("errors monotone in beta", anchor,
                         decreasing(c0.error) && decreasing(c0.error_alt) && decreasing(c1.error)));
        s.add(info("psi0 errors", anchor, vec_json(c0.error)));
        s.add(info("psi1 errors", anchor, vec_json(c1.error)));

        const std::vector<double> small{1e-3};
        CoalescenceStudy s0 = coalesce_psi0(alpha, z, small);
        s.add(check_below("psi0 sup error at beta=1e-3", anchor, std::max(s0.error[0], s0.error_alt[0]), 1e-2));
        CoalescenceStudy s1 = coalesce_psi1(alpha, z, {1e-2});
        s.add(check_below("psi1 sup error at beta=1e-2", anchor, s1.error[0], 1e-2));
        double kmax = 0.0;
        for (auto [x, xp] : std::vector<std::pair<double, double>>{{0.3, -0.7}, {-1.2, 0.4}, {0.9, 0.9}, {2.0, -2.5}})
            kmax = std::max(kmax, coalesce_kernel(alpha, z, small, x, xp).error[0]);
        s.add(check_below("kernel limit at beta=1e-3", anchor, kmax, 1e-2, "max over four (x, x') points"));
        s.add(check_close("level splitting", anchor, level_splitting(alpha, 0.05), 4.0 * alpha * 0.05, 1e-14));
        for (double b : {0.3, 0.01})
            s.add(check_close("discrete trace beta=" + format_number(b), anchor, discrete_trace(alpha, z, b), 2.0, 1e-8));
        s.add(check_close("limit trace", anchor, limit_trace(alpha, z), 2.0, 1e-8));
    });
}

std::vector<double> default_probe_points() { return {-1.5, -0.5, 0.0, 0.5, 1.0}; }

Suite identity_suite(const IdentityOptions& o) {
    return timed("identity", [&](Suite& s) {
        const double eps = o.epsilon;
        auto has = [&](ModelId id) { return std::find(o.models.begin(), o.models.end(), id) != o.models.end(); };
        if (o.full) {
            const auto battery = gaussian_battery();
            const auto xs = default_probe_points();
            for (ModelId id : o.models) {
                const ModelParams p = default_params(id);
                const std::string anchor = tag(p) + "/resolution-full";
                for (auto& phi : battery) {
                    guarded(s, phi.label, anchor, [&] {
                        KernelEvaluator ev(p, phi);
                        std::vector<std::pair<std::string, KernelFamily>> fams;
                        KernelFamily f{p, KernelVariant::Full};
                        fams.push_back({"full", f});
                        if (id == ModelId::JordanBound) {
                            f.rotated = true;
                            fams.push_back({"full rotated", f});
                        }
                        if (id == ModelId::ContinuumBS && &phi == &battery.front()) {
                            f.orientation = Orientation::Up;
                            fams.push_back({"full up", f});
                        }
                        for (auto& [name, fam] : fams) {
                            double worst = 0.0;
                            for (double xp : xs) worst = std::max(worst, std::abs(ev.apply(fam, xp).value - phi(xp)));
                            s.add(check_below(name + " " + phi.label, anchor, worst, 1e-4, "max over five probe points"));
                        }
                    });
                }
            }
        }
        if (o.reduced) {
            for (ModelId id : {ModelId::Threshold, ModelId::ContinuumBS}) {
                if (!has(id)) continue;
                const ModelParams p = default_params(id);
                const std::string anchor = tag(p) + "/resolution-reduced";
                const double xp = 0.5;
                guarded(s, "psi0", anchor, [&] {
                    const TestFunction psi0 = TestFunction::bound_state(Model(p));
                    // ψ0 decays like 1/x, so its transform is the expensive part
                    KernelEvaluator ev(p, psi0, id == ModelId::ContinuumBS ? 1e-6 : 1e-9);
                    KernelFamily red{p, KernelVariant::Reduced, eps}, ext{p, KernelVariant::Extended, eps};
                    const cplx target = psi0(xp);
                    s.add(check_below("reduced annihilates psi0", anchor, std::abs(ev.apply(red, xp).value), 1e-3));
                    s.add(check_below("extended reproduces psi0", anchor, std::abs(ev.apply(ext, xp).value - target),
                                      1e-3));
                });
                guarded(s, "gaussian", anchor, [&] {
                    const TestFunction g = TestFunction::gaussian(1.0, 0.0);
                    KernelEvaluator ev(p, g);
                    KernelFamily red{p, KernelVariant::Reduced, eps}, ext{p, KernelVariant::Extended, eps};
                    const cplx vr = ev.apply(red, xp).value, ve = ev.apply(ext, xp).value;
                    s.add(check_below("extended reproduces Gaussian", anchor, std::abs(ve - g(xp)), 1e-3));
                    s.add(info("reduced on Gaussian error", anchor, std::abs(vr - g(xp))));
                    const KernelFamily ext2{p, KernelVariant::Extended, 1e-2}, red2{p, KernelVariant::Reduced, 1e-2};
                    const cplx diff = ev.apply(ext2, xp).value - ev.apply(red2, xp).value;
                    s.add(check_close("extended - reduced = correction term", anchor, diff,
                                      correction_term(ext2, g, xp), 1e-6, "eps = 1e-2"));
                });
            }
            if (has(ModelId::Threshold)) {
                const ModelParams p = default_params(ModelId::Threshold);
                guarded(s, "convergence", "threshold/resolution-reduced", [&] {
                    ConvergenceStudy c = convergence_study(KernelFamily{p, KernelVariant::Reduced},
                                                           {0.1, 0.05, 0.025, 0.0125}, TestFunction::gaussian(1.0, 0.0),
                                                           0.5);
                    s.add(check_true("reduced errors decrease on Gaussian", "threshold/resolution-reduced",
                                     decreasing(c.error), "rate " + format_number(c.rate)));
                });
            }
        }
        if (o.lemmas) {
            const std::string anchor = "lemmas";
            double worst = 0.0;
            for (auto& phi : gaussian_battery()) {
                guarded(s, "lemma2 " + phi.label, anchor, [&] {
                    const double v = std::abs(lemma_functional(Lemma::Two, phi, 0.5, eps));
                    const double b = lemma2_bound(phi, eps);
                    worst = std::max(worst, v / b);
                    s.add(check_true("lemma2 bound " + phi.label, anchor, v <= b,
                                     format_number(v) + " <= " + format_number(b)));
                });
            }
            s.add(info("lemma2 worst value/bound", anchor, worst));
            s.add(check_close("lemma2 at eps=0", anchor, lemma_functional(Lemma::Two, gaussian_battery()[0], 0.5, 0.0),
                              0.0, 0.0));
            guarded(s, "lemma3 slow", anchor, [&] {
                const TestFunction slow = slow_decay_battery()[0];
                s.add(info("lemma3 on (1+x^2)^-0.6", anchor, to_json(lemma_functional(Lemma::Three, slow, 0.5, eps)),
                           "gamma <= 1: recorded, not asserted"));
            });
        }
    });
}

Suite finite_suite(std::uint64_t seed, int count) {
    return timed("finite", [&](Suite& s) {
        const std::string anchor = "finite/jordan";
        std::mt19937_64 rng(seed);
        double worst = 0.0;
        int failed = 0;
        for (int i = 0; i < count; ++i) {
            JordanSpec sp = random_spec(rng);
            TriangleTransform t = random_transform(sp, rng);
            FiniteCheck f = verify_spec(sp, t, 1.0);
            worst = std::max(worst, f.worst());
            failed += !f.pass(1e-10);
        }
        s.add(check_below("random specs worst residual", anchor, worst, 1e-10,
                          std::to_string(count) + " specs, seed " + std::to_string(seed)));
        s.add(check_close("random specs failing", anchor, double(failed), 0.0, 0.0));

        JordanSpec cell{{{cplx(-1.0), {2}}}};
        JordanBuild b = build(cell);
        Eigen::MatrixXcd H(2, 2);
        H << -1.0, 1.0, 0.0, -1.0;
        s.add(check_close("2x2 Jordan block", anchor, (b.H - H).cwiseAbs().maxCoeff(), 0.0, 0.0));
        TSymmetricForm ts = t_symmetric_form(cell, b.system);
        RotatedForm r = diagonalize_identity(cell, b.system, ts, 1.0);
        s.add(check_close("mansym matrix, kappa=1", anchor, (r.M - mansym(1.0, 1.0)).cwiseAbs().maxCoeff(), 0.0, 0.0,
                          "exact"));
        s.add(check_close("rotated cell rank", anchor, double(rank_of_power(r.M, -1.0, 1)), 1.0, 0.0));
        Eigen::Vector2cd v(1.0, cplx(0.0, -1.0));
        s.add(check_close("eigenvector (1,-i)", anchor, ((r.M + Eigen::Matrix2cd::Identity()) * v).norm(), 0.0, 1e-15));
        s.add(check_close("zero bilinear norm of (1,-i)", anchor, v.dot(v.conjugate()), 0.0, 0.0));

        bool threw = false;
        try {
            TriangleTransform::from_alpha(cell, {{cplx(0.0), cplx(1.0)}});
        } catch (const SingularTransform&) {
            threw = true;
        }
        s.add(check_true("alpha_00 = 0 rejected", anchor, threw));
        BiorthSystem same = triangle(cell, b.system, TriangleTransform::identity(cell));
        s.add(check_close("identity transform", anchor,
                          std::max((same.direct - b.system.direct).cwiseAbs().maxCoeff(),
                                   (same.conjugate - b.system.conjugate).cwiseAbs().maxCoeff()),
                          0.0, 0.0));
        for (int p : {1, 2, 3}) {
            BinormPattern pat = binorm_structure(p);
            int zeros = 0, anti = 0;
            for (auto& row : pat)
                for (auto e : row) {
                    zeros += e == Pairing::Zero;
                    anti += e == Pairing::AntiDiagonal;
                }
            s.add(check_close("binorm pattern p=" + std::to_string(p) + " zeros", anchor, double(zeros),
                              double(p * (p - 1) / 2), 0.0));
            s.add(check_close("binorm pattern p=" + std::to_string(p) + " anti-diagonal", anchor, double(anti),
                              double(p), 0.0));
        }
        Eigen::MatrixXcd P3 = chain_pairings(3, {cplx(1.0), cplx(0.3), cplx(0.0, 0.2)});
        s.add(check_true("odd cell middle pairing nonzero", anchor, std::abs(P3(1, 1)) > 1e-10));
    });
}

Report verify_model(const ModelParams& p) {
    auto t0 = clk::now();
    Report r;
    r.command = "verify";
    r.config = {{"model", to_json(p)}};
    r.suites.push_back(chain_suite(p));
    r.suites.push_back(binorm_suite(p));
    r.suites.push_back(limits_suite(p));
    r.suites.push_back(scattering_suite(p));
    r.runtime = seconds_since(t0);
    return r;
}

Report verify_all(std::uint64_t seed) {
    auto t0 = clk::now();
    Report r;
    r.command = "verify --all";
    r.config = {{"seed", seed}};
    for (ModelId id : {ModelId::JordanBound, ModelId::TwoLevel, ModelId::Threshold, ModelId::ContinuumBS}) {
        const ModelParams p = default_params(id);
        r.suites.push_back(chain_suite(p));
        r.suites.push_back(binorm_suite(p));
        r.suites.push_back(limits_suite(p));
        r.suites.push_back(scattering_suite(p));
    }
    ModelParams t3 = default_params(ModelId::Threshold);
    t3.n = 3;
    r.suites.push_back(chain_suite(t3));
    r.suites.push_back(binorm_suite(t3));
    r.suites.push_back(packet_suite(cplx(0.0, 1.0)));
    r.suites.push_back(averages_suite(cplx(0.0, 1.0)));
    r.suites.push_back(coalescence_suite(1.0, cplx(0.0, 1.0), default_betas()));
    r.suites.push_back(identity_suite());
    r.suites.push_back(finite_suite(seed));
    r.runtime = seconds_since(t0);
    return r;
}

} // namespace nhlab
