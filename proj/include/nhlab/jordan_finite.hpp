#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nhlab/model.hpp"

namespace nhlab {

struct JordanSpec {
    struct Level {
        cplx lambda;
        std::vector<int> sizes; // p_{n,a}, one per cell
    };
    std::vector<Level> levels;

    int dimension() const;
};

void validate(const JordanSpec& s);

struct Cell {
    int n = 0, a = 0;
    int offset = 0, size = 1;
    cplx lambda;
};

std::vector<Cell> cells(const JordanSpec& s);

// direct vectors are columns, conjugate vectors rows; pairing = conjugate·direct
struct BiorthSystem {
    Eigen::MatrixXcd direct;
    Eigen::MatrixXcd conjugate;

    Eigen::MatrixXcd pairing() const { return conjugate * direct; }
};

struct JordanBuild {
    Eigen::MatrixXcd H; // block Jordan, ones above the diagonal
    BiorthSystem system;
};

JordanBuild build(const JordanSpec& s);

// sup over cells of |(H-λ)ψ_0|, |(H-λ)ψ_i - ψ_{i-1}|, |ψ~_{p-1}(H-λ)|, |ψ~_i(H-λ) - ψ~_{i+1}|
double chain_residual(const JordanSpec& s, const Eigen::MatrixXcd& H, const BiorthSystem& b);
double biorthogonality_residual(const BiorthSystem& b);

// per cell, ψ'_i = Σ_{j≤i} α_{i-j} ψ_j and ψ~'_i = Σ_{j≥i} β*_{j-i} ψ~_j
struct TriangleTransform {
    std::vector<std::vector<cplx>> alpha;
    std::vector<std::vector<cplx>> beta;

    static TriangleTransform identity(const JordanSpec& s);
    static TriangleTransform from_alpha(const JordanSpec& s, std::vector<std::vector<cplx>> alpha); // SingularTransform
    double constraint_residual() const; // max over cells of |α̂β̂† - I|, |β̂†α̂ - I|
};

BiorthSystem triangle(const JordanSpec& s, const BiorthSystem& b, const TriangleTransform& t);

// H = Σ ψ_r M_rs ψ^_s with ψ^_{n,a,j} = ψ~_{n,a,p-j-1}
struct TSymmetricForm {
    Eigen::MatrixXcd M;        // symmetric
    Eigen::MatrixXcd identity; // anti-diagonal per cell
    Eigen::MatrixXcd hat;      // rows ψ^
};

TSymmetricForm t_symmetric_form(const JordanSpec& s, const BiorthSystem& b);

// Ψ = ψ·S, Ψ^ = Sᵀψ^ with S Sᵀ = identity matrix of the t-symmetric form;
// pairs (j, p-1-j) rotate as Ψ1 = (κψ_j + ψ_{p-1-j}/κ)/√2, Ψ2 = i(κψ_j - ψ_{p-1-j}/κ)/√2
struct RotatedForm {
    Eigen::MatrixXcd S;
    Eigen::MatrixXcd direct;    // columns Ψ
    Eigen::MatrixXcd conjugate; // rows Ψ^
    Eigen::MatrixXcd M;         // H = direct·M·conjugate, symmetric
    Eigen::MatrixXcd identity;  // unit matrix
};

RotatedForm diagonalize_identity(const JordanSpec& s, const BiorthSystem& b, const TSymmetricForm& t,
                                 double kappa = 1.0);

// [[λ+1/(2κ²), -i/(2κ²)], [-i/(2κ²), λ-1/(2κ²)]] with λ = -α²
Eigen::Matrix2cd mansym(cplx alpha, double kappa = 1.0);

enum class Pairing { Zero, AntiDiagonal, Free };
using BinormPattern = std::vector<std::vector<Pairing>>;

// bilinear pairings of chain functions within one cell of size p
BinormPattern binorm_structure(int p);

// u_iᵀu_j for the chain of a single cell after a triangle transform, in the
// rotated coordinates where the bilinear form is the unit matrix
Eigen::MatrixXcd chain_pairings(int p, const std::vector<cplx>& alpha, double kappa = 1.0);

// rank of (A - λ)^m with a relative threshold
int rank_of_power(const Eigen::MatrixXcd& A, cplx lambda, int m, double threshold = 1e-8);

// levels with distinct λ, cells of size ≤ max_cell, total dimension ≤ max_dim
JordanSpec random_spec(std::mt19937_64& rng, int max_dim = 12, int max_cell = 5);
TriangleTransform random_transform(const JordanSpec& s, std::mt19937_64& rng);

struct FiniteCheck {
    double chain = 0.0;           // after the triangle transform
    double biorthogonality = 0.0; // after the triangle transform
    double constraint = 0.0;      // α̂β̂† = I
    double symmetry = 0.0;        // |M - Mᵀ| of the t-symmetric form
    double anti_diagonal = 0.0;   // off-anti-diagonal part of the per-cell identity
    double reconstruction = 0.0;  // |ψ M ψ^ - H| and |Ψ M' Ψ^ - H|
    double unit_identity = 0.0;   // |Ψ Ψ^ - I|, |Ψ^ Ψ - I|
    double zero_eigenvector = 0.0; // |vᵀv| for eigenvectors of cells with p ≥ 2 in the rotated basis
    bool structure = true;        // ranks of (M'-λ)^m match the spec
    bool pattern = true;          // chain pairings follow binorm_structure

    double worst() const;
    bool pass(double tol) const { return structure && pattern && worst() <= tol; }
};

FiniteCheck verify_spec(const JordanSpec& s, const TriangleTransform& t, double kappa = 1.0);

} // namespace nhlab
