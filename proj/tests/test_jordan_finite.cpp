#include <doctest.h>

#include "nhlab/jordan_finite.hpp"

using namespace nhlab;

namespace {
const cplx I{0.0, 1.0};

JordanSpec single(cplx lambda, int p) { return JordanSpec{{{lambda, {p}}}}; }
} // namespace

TEST_CASE("canonical blocks") {
    JordanBuild b = build(single(-1.0, 2));
    Eigen::Matrix2cd expect;
    expect << -1.0, 1.0, 0.0, -1.0;
    CHECK((b.H - expect).norm() == 0.0);
    CHECK(build(single(2.0, 1)).H(0, 0) == cplx(2.0));
}

TEST_CASE("powers of H - lambda on a cell") {
    JordanSpec s = single(0.5, 3);
    JordanBuild b = build(s);
    Eigen::MatrixXcd N = b.H - 0.5 * Eigen::MatrixXcd::Identity(3, 3);
    CHECK((N * N * N).norm() == 0.0);
    CHECK((N * N * b.system.direct.col(2)).norm() > 0.5);
    CHECK(rank_of_power(b.H, 0.5, 1) == 2);
    CHECK(rank_of_power(b.H, 0.5, 2) == 1);
    CHECK(rank_of_power(b.H, 0.5, 3) == 0);
}

TEST_CASE("identity transform changes nothing") {
    JordanSpec s{{{-1.0, {2, 1}}, {0.3 + 0.2 * I, {3}}}};
    JordanBuild b = build(s);
    BiorthSystem t = triangle(s, b.system, TriangleTransform::identity(s));
    CHECK((t.direct - b.system.direct).norm() < 1e-15);
    CHECK((t.conjugate - b.system.conjugate).norm() < 1e-15);
}

TEST_CASE("singular transform is refused") {
    JordanSpec s = single(-1.0, 2);
    CHECK_THROWS_AS(TriangleTransform::from_alpha(s, {{0.0, 1.0}}), SingularTransform);
}

TEST_CASE("t-symmetric form of a 2-cell") {
    JordanSpec s = single(-1.0, 2);
    JordanBuild b = build(s);
    TSymmetricForm t = t_symmetric_form(s, b.system);
    // -α²|ψ0><ψ^1| - α²|ψ1><ψ^0| + |ψ0><ψ^0|
    Eigen::Matrix2cd expect;
    expect << 1.0, -1.0, -1.0, 0.0;
    CHECK((t.M - expect).norm() < 1e-14);
    Eigen::Matrix2cd anti;
    anti << 0.0, 1.0, 1.0, 0.0;
    CHECK((t.identity - anti).norm() < 1e-14);
    TSymmetricForm one = t_symmetric_form(single(2.0, 1), build(single(2.0, 1)).system);
    CHECK(std::abs(one.M(0, 0) - 2.0) < 1e-15);
}

TEST_CASE("rotated 2-cell") {
    Eigen::Matrix2cd expect;
    expect << -0.5, -0.5 * I, -0.5 * I, -1.5;
    CHECK((mansym(1.0, 1.0) - expect).norm() == 0.0);

    JordanSpec s = single(-1.0, 2);
    JordanBuild b = build(s);
    RotatedForm r = diagonalize_identity(s, b.system, t_symmetric_form(s, b.system), 1.0);
    CHECK((r.M - expect).norm() < 1e-14);
    CHECK((r.identity - Eigen::Matrix2cd::Identity()).norm() < 1e-12);
    CHECK((r.S * r.S.transpose() - t_symmetric_form(s, b.system).identity).norm() < 1e-14);

    // one eigenvector (1, -i) with zero bilinear norm
    Eigen::Vector2cd e(1.0, -I);
    CHECK((expect * e + e).norm() < 1e-15);
    CHECK(std::abs(e.dot(e.conjugate())) < 1e-15);
    CHECK(rank_of_power(expect, -1.0, 1) == 1);
    CHECK(rank_of_power(expect, -1.0, 2) == 0);
}

TEST_CASE("kappa changes the cell") {
    Eigen::Matrix2cd m = mansym(1.0, 2.0);
    CHECK(std::abs(m(0, 0) - (-1.0 + 1.0 / 8.0)) < 1e-15);
    CHECK(std::abs(m(0, 1) + I / 8.0) < 1e-15);
}

TEST_CASE("binorm patterns") {
    auto p1 = binorm_structure(1);
    CHECK(p1[0][0] == Pairing::AntiDiagonal);
    auto p2 = binorm_structure(2);
    CHECK(p2[0][0] == Pairing::Zero);
    CHECK(p2[0][1] == Pairing::AntiDiagonal);
    CHECK(p2[1][0] == Pairing::AntiDiagonal);
    CHECK(p2[1][1] == Pairing::Free);
    auto p3 = binorm_structure(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i + j <= 1) CHECK(p3[i][j] == Pairing::Zero);
            if (i + j == 2) CHECK(p3[i][j] == Pairing::AntiDiagonal);
        }
}

TEST_CASE("odd cells pair the middle function with itself") {
    Eigen::MatrixXcd g = chain_pairings(3, {1.0, 0.4, -0.2});
    CHECK(std::abs(g(1, 1)) > 0.1);
    CHECK(std::abs(g(0, 2) - g(1, 1)) < 1e-14);
    CHECK(std::abs(g(0, 0)) < 1e-14);
    CHECK(std::abs(g(0, 1)) < 1e-14);
}

TEST_CASE("random specs") {
    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        JordanSpec s = random_spec(rng);
        CHECK(s.dimension() <= 12);
        TriangleTransform t = random_transform(s, rng);
        FiniteCheck c = verify_spec(s, t);
        CHECK(c.structure);
        CHECK(c.pattern);
        worst = std::max(worst, c.worst());
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(validate(JordanSpec{{{1.0, {0}}}}), ParameterError);
    CHECK_THROWS_AS(validate(JordanSpec{{{1.0, {1}}, {1.0, {2}}}}), ParameterError);
}
