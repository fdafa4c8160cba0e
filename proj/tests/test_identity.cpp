#include <doctest.h>

#include "nhlab/identity_resolution.hpp"

using namespace nhlab;

namespace {
ModelParams params(ModelId id, double beta = 0.0) {
    ModelParams p;
    p.model = id;
    p.beta = beta;
    return p;
}

KernelFamily family(ModelId id, KernelVariant v, double eps = 1e-3) {
    KernelFamily k;
    k.model = params(id, id == ModelId::TwoLevel ? 0.3 : 0.0);
    k.variant = v;
    k.epsilon = eps;
    return k;
}
} // namespace

TEST_CASE("test function classes") {
    TestFunction g = TestFunction::gaussian(1.0, 0.0);
    CHECK(membership(g, 2.0));
    TestFunction slow = TestFunction::algebraic(0.6, 0.1);
    CHECK(membership(slow, 0.1));
    CHECK_FALSE(membership(slow, 1.5));
    CHECK(gaussian_battery().size() == 5);
}

TEST_CASE("full jordan-bound kernel reproduces a gaussian") {
    TestFunction g = TestFunction::gaussian(1.0, 0.0);
    auto v = apply_kernel(family(ModelId::JordanBound, KernelVariant::Full), g, {0.0, 1.0});
    CHECK(std::abs(v[0].value - g(0.0)) < 1e-4);
    CHECK(std::abs(v[1].value - g(1.0)) < 1e-4);
}

TEST_CASE("extended threshold kernel on a gaussian") {
    TestFunction g = TestFunction::gaussian(1.0, 0.0);
    CHECK(std::abs(apply_kernel(family(ModelId::Threshold, KernelVariant::Extended), g, 0.5) - g(0.5)) < 1e-3);
}

TEST_CASE("threshold bound state: reduced annihilates, extended reproduces") {
    Model m(params(ModelId::Threshold));
    TestFunction psi0 = TestFunction::bound_state(m);
    KernelEvaluator ev(m.params(), psi0);
    for (double xp : {-0.5, 0.5}) {
        CHECK(std::abs(ev.apply(family(ModelId::Threshold, KernelVariant::Reduced), xp).value) < 1e-3);
        CHECK(std::abs(ev.apply(family(ModelId::Threshold, KernelVariant::Extended), xp).value - psi0(xp)) < 1e-3);
    }
}

TEST_CASE("continuum-bs bound state is projected away by the reduced kernel") {
    Model m(params(ModelId::ContinuumBS));
    TestFunction psi0 = TestFunction::bound_state(m);
    KernelEvaluator ev(m.params(), psi0, 1e-9);
    CHECK(std::abs(ev.apply(family(ModelId::ContinuumBS, KernelVariant::Reduced), 0.5).value) < 1e-3);
}

TEST_CASE("extended minus reduced is the printed correction") {
    Model m(params(ModelId::Threshold));
    TestFunction psi0 = TestFunction::bound_state(m);
    KernelEvaluator ev(m.params(), psi0);
    auto red = family(ModelId::Threshold, KernelVariant::Reduced, 1e-2);
    auto ext = family(ModelId::Threshold, KernelVariant::Extended, 1e-2);
    const double xp = 0.3;
    cplx diff = ev.apply(ext, xp).value - ev.apply(red, xp).value;
    CHECK(std::abs(diff - correction_term(ext, psi0, xp)) < 1e-6);
}

TEST_CASE("reduced threshold kernel converges on a gaussian") {
    TestFunction g = TestFunction::gaussian(1.0, 0.0);
    ConvergenceStudy c = convergence_study(family(ModelId::Threshold, KernelVariant::Reduced),
                                           {0.1, 0.05, 0.025, 0.0125}, g, 0.5);
    for (size_t i = 1; i < c.error.size(); ++i) CHECK(c.error[i] < c.error[i - 1]);
}

TEST_CASE("reduced kernel does not converge to psi0") {
    Model m(params(ModelId::Threshold));
    TestFunction psi0 = TestFunction::bound_state(m);
    ConvergenceStudy c =
        convergence_study(family(ModelId::Threshold, KernelVariant::Reduced), {1e-2, 1e-3}, psi0, 0.5);
    CHECK(c.error.back() > 0.5 * std::abs(psi0(0.5)));
    for (cplx v : c.value) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("lemma 2 obeys the Bunyakovskii bound") {
    for (auto& g : gaussian_battery()) {
        CAPTURE(g.label);
        for (double eps : {1e-1, 1e-2, 1e-3})
            CHECK(std::abs(lemma_functional(Lemma::Two, g, 0.5, eps)) <= lemma2_bound(g, eps));
    }
    CHECK(lemma_functional(Lemma::Two, TestFunction::gaussian(1.0, 0.0), 0.5, 0.0) == cplx(0.0));
}

TEST_CASE("kernel validation") {
    auto k = family(ModelId::Threshold, KernelVariant::Reduced);
    k.epsilon = -1.0;
    CHECK_THROWS_AS(validate(k), ParameterError);
    CHECK(variant_from_string("extended") == KernelVariant::Extended);
}
