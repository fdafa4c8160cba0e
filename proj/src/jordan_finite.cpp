#include "nhlab/jordan_finite.hpp"

#include <algorithm>
#include <cmath>

namespace nhlab {

namespace {

using Mat = Eigen::MatrixXcd;
const cplx I{0.0, 1.0};

// lower-triangular Toeplitz matrix with first column c
Mat lower_toeplitz(const std::vector<cplx>& c) {
    const int p = static_cast<int>(c.size());
    Mat A = Mat::Zero(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j <= i; ++j) A(i, j) = c[i - j];
    return A;
}

// power-series inverse of c
std::vector<cplx> series_inverse(const std::vector<cplx>& c) {
    std::vector<cplx> g(c.size());
    g[0] = 1.0 / c[0];
    for (size_t m = 1; m < c.size(); ++m) {
        cplx s = 0.0;
        for (size_t j = 1; j <= m; ++j) s += c[j] * g[m - j];
        g[m] = -s / c[0];
    }
    return g;
}

double sup(const Mat& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

} // namespace

int JordanSpec::dimension() const {
    int n = 0;
    for (auto& l : levels)
        for (int p : l.sizes) n += p;
    return n;
}

void validate(const JordanSpec& s) {
    if (s.levels.empty()) throw ParameterError("Jordan spec has no eigenvalues");
    for (size_t i = 0; i < s.levels.size(); ++i) {
        if (s.levels[i].sizes.empty()) throw ParameterError("every eigenvalue needs at least one cell");
        for (int p : s.levels[i].sizes)
            if (p < 1) throw ParameterError("cell sizes must be positive");
        for (size_t j = 0; j < i; ++j)
            if (s.levels[j].lambda == s.levels[i].lambda)
                throw ParameterError("repeated eigenvalue; list its cells under one level");
    }
}

std::vector<Cell> cells(const JordanSpec& s) {
    std::vector<Cell> out;
    int off = 0;
    for (size_t n = 0; n < s.levels.size(); ++n)
        for (size_t a = 0; a < s.levels[n].sizes.size(); ++a) {
            const int p = s.levels[n].sizes[a];
            out.push_back({int(n), int(a), off, p, s.levels[n].lambda});
            off += p;
        }
    return out;
}

JordanBuild build(const JordanSpec& s) {
    validate(s);
    const int N = s.dimension();
    JordanBuild b;
    b.H = Mat::Zero(N, N);
    for (auto& c : cells(s))
        for (int i = 0; i < c.size; ++i) {
            b.H(c.offset + i, c.offset + i) = c.lambda;
            if (i + 1 < c.size) b.H(c.offset + i, c.offset + i + 1) = 1.0;
        }
    b.system.direct = Mat::Identity(N, N);
    b.system.conjugate = Mat::Identity(N, N);
    return b;
}

double chain_residual(const JordanSpec& s, const Mat& H, const BiorthSystem& b) {
    double r = 0.0;
    const int N = s.dimension();
    for (auto& c : cells(s)) {
        Mat A = H - c.lambda * Mat::Identity(N, N);
        for (int i = 0; i < c.size; ++i) {
            Eigen::VectorXcd d = A * b.direct.col(c.offset + i);
            if (i > 0) d -= b.direct.col(c.offset + i - 1);
            r = std::max(r, d.cwiseAbs().maxCoeff());
            Eigen::RowVectorXcd e = b.conjugate.row(c.offset + i) * A;
            if (i + 1 < c.size) e -= b.conjugate.row(c.offset + i + 1);
            r = std::max(r, e.cwiseAbs().maxCoeff());
        }
    }
    return r;
}

double biorthogonality_residual(const BiorthSystem& b) {
    const Mat P = b.pairing();
    return sup(P - Mat::Identity(P.rows(), P.cols()));
}

TriangleTransform TriangleTransform::identity(const JordanSpec& s) {
    std::vector<std::vector<cplx>> alpha;
    for (auto& c : cells(s)) {
        std::vector<cplx> a(c.size, 0.0);
        a[0] = 1.0;
        alpha.push_back(a);
    }
    return from_alpha(s, alpha);
}

TriangleTransform TriangleTransform::from_alpha(const JordanSpec& s, std::vector<std::vector<cplx>> alpha) {
    auto cs = cells(s);
    if (alpha.size() != cs.size()) throw ParameterError("one coefficient sequence per cell");
    TriangleTransform t;
    for (size_t i = 0; i < cs.size(); ++i) {
        if (int(alpha[i].size()) != cs[i].size) throw ParameterError("coefficient sequence length must match the cell");
        if (alpha[i][0] == 0.0) throw SingularTransform("alpha_00 = 0");
        std::vector<cplx> beta = series_inverse(alpha[i]);
        for (auto& b : beta) b = std::conj(b);
        t.beta.push_back(beta);
    }
    t.alpha = std::move(alpha);
    return t;
}

double TriangleTransform::constraint_residual() const {
    double r = 0.0;
    for (size_t c = 0; c < alpha.size(); ++c) {
        const Mat A = lower_toeplitz(alpha[c]);
        std::vector<cplx> bc(beta[c].size());
        for (size_t m = 0; m < bc.size(); ++m) bc[m] = std::conj(beta[c][m]);
        const Mat Bd = lower_toeplitz(bc); // β^†
        const Mat E = Mat::Identity(A.rows(), A.cols());
        r = std::max({r, sup(A * Bd - E), sup(Bd * A - E)});
    }
    return r;
}

BiorthSystem triangle(const JordanSpec& s, const BiorthSystem& b, const TriangleTransform& t) {
    auto cs = cells(s);
    if (t.alpha.size() != cs.size() || t.beta.size() != cs.size())
        throw ParameterError("transform does not match the spec");
    BiorthSystem out = b;
    for (size_t k = 0; k < cs.size(); ++k) {
        const Cell& c = cs[k];
        if (t.alpha[k][0] == 0.0) throw SingularTransform("alpha_00 = 0");
        for (int i = 0; i < c.size; ++i) {
            out.direct.col(c.offset + i).setZero();
            for (int j = 0; j <= i; ++j) out.direct.col(c.offset + i) += t.alpha[k][i - j] * b.direct.col(c.offset + j);
            out.conjugate.row(c.offset + i).setZero();
            for (int l = i; l < c.size; ++l)
                out.conjugate.row(c.offset + i) += std::conj(t.beta[k][l - i]) * b.conjugate.row(c.offset + l);
        }
    }
    return out;
}

TSymmetricForm t_symmetric_form(const JordanSpec& s, const BiorthSystem& b) {
    const int N = s.dimension();
    TSymmetricForm t;
    t.M = Mat::Zero(N, N);
    t.identity = Mat::Zero(N, N);
    t.hat = Mat::Zero(N, N);
    for (auto& c : cells(s)) {
        const int o = c.offset, p = c.size;
        for (int j = 0; j < p; ++j) {
            t.hat.row(o + j) = b.conjugate.row(o + p - 1 - j);
            t.identity(o + j, o + p - 1 - j) = 1.0;
            t.M(o + j, o + p - 1 - j) = c.lambda;
            if (p - 2 - j >= 0) t.M(o + j, o + p - 2 - j) = 1.0;
        }
    }
    return t;
}

RotatedForm diagonalize_identity(const JordanSpec& s, const BiorthSystem& b, const TSymmetricForm& t, double kappa) {
    if (!(kappa > 0.0)) throw ParameterError("kappa must be positive");
    const int N = s.dimension();
    const double r2 = std::sqrt(2.0);
    RotatedForm r;
    r.S = Mat::Zero(N, N);
    for (auto& c : cells(s)) {
        const int o = c.offset, p = c.size;
        for (int j = 0; 2 * j < p - 1; ++j) {
            const int u = o + j, v = o + p - 1 - j;
            r.S(u, u) = kappa / r2;
            r.S(u, v) = I * kappa / r2;
            r.S(v, u) = 1.0 / (kappa * r2);
            r.S(v, v) = -I / (kappa * r2);
        }
        if (p % 2 == 1) r.S(o + p / 2, o + p / 2) = 1.0;
    }
    // S Sᵀ = J and J² = 1, so S⁻¹ = SᵀJ.  S = R·diag(c) with c = 1/√2 on
    // rotated pairs; applying c² = 1/2 as one factor keeps the 2×2 cell exact.
    Mat R = r.S;
    std::vector<bool> paired(N, true);
    for (auto& c : cells(s))
        if (c.size % 2 == 1) paired[c.offset + c.size / 2] = false;
    for (int j = 0; j < N; ++j)
        if (paired[j]) R.col(j) *= r2;
    auto scale = [&](const Mat& W) {
        Mat out = W;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                out(i, j) *= paired[i] && paired[j] ? 0.5 : (paired[i] || paired[j] ? 1.0 / r2 : 1.0);
        return out;
    };
    const Mat Rinv = R.transpose() * t.identity; // (R⁻¹ up to the c² factors)
    r.direct = b.direct * r.S;
    r.conjugate = r.S.transpose() * t.hat;
    r.M = scale(Rinv * t.M * Rinv.transpose());
    r.identity = scale(Rinv * t.identity * Rinv.transpose());
    return r;
}

Eigen::Matrix2cd mansym(cplx alpha, double kappa) {
    const cplx lam = -alpha * alpha;
    const double q = 1.0 / (2.0 * kappa * kappa);
    Eigen::Matrix2cd m;
    m << lam + q, -I * q, -I * q, lam - q;
    return m;
}

BinormPattern binorm_structure(int p) {
    if (p < 1) throw ParameterError("cell size must be positive");
    BinormPattern b(p, std::vector<Pairing>(p, Pairing::Free));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            if (i + j <= p - 2) b[i][j] = Pairing::Zero;
            else if (i + j == p - 1) b[i][j] = Pairing::AntiDiagonal;
        }
    return b;
}

Eigen::MatrixXcd chain_pairings(int p, const std::vector<cplx>& alpha, double kappa) {
    JordanSpec s{{{cplx(0.0), {p}}}};
    JordanBuild jb = build(s);
    BiorthSystem tb = triangle(s, jb.system, TriangleTransform::from_alpha(s, {alpha}));
    TSymmetricForm t = t_symmetric_form(s, jb.system);
    RotatedForm r = diagonalize_identity(s, jb.system, t, kappa);
    // coordinates of the transformed chain in the rotated basis
    const Mat U = r.S.transpose() * t.identity * tb.direct;
    return U.transpose() * U;
}

int rank_of_power(const Mat& A, cplx lambda, int m, double threshold) {
    Mat B = A - lambda * Mat::Identity(A.rows(), A.cols());
    Mat P = Mat::Identity(A.rows(), A.cols());
    for (int i = 0; i < m; ++i) P = P * B;
    // threshold relative to |B|^m, not to P, so a vanishing power has rank 0
    const double scale = std::pow(std::max(1.0, B.operatorNorm()), m);
    Eigen::JacobiSVD<Mat> svd(P);
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) r += svd.singularValues()(i) > threshold * scale;
    return r;
}

JordanSpec random_spec(std::mt19937_64& rng, int max_dim, int max_cell) {
    std::uniform_int_distribution<int> dim(1, max_dim), cell(1, max_cell), levels(1, 4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const int N = dim(rng);
    JordanSpec s;
    const int L = levels(rng);
    int used = 0;
    while (used < N) {
        const int p = std::min(cell(rng), N - used);
        if (int(s.levels.size()) < L) {
            // keep eigenvalues well separated so ranks are unambiguous
            cplx lam;
            bool far;
            do {
                lam = cplx(u(rng), u(rng));
                far = true;
                for (auto& l : s.levels) far = far && std::abs(l.lambda - lam) > 0.3;
            } while (!far);
            s.levels.push_back({lam, {p}});
        } else {
            std::uniform_int_distribution<size_t> pick(0, s.levels.size() - 1);
            s.levels[pick(rng)].sizes.push_back(p);
        }
        used += p;
    }
    return s;
}

TriangleTransform random_transform(const JordanSpec& s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0), mod(0.5, 1.5), ph(0.0, 2.0 * pi);
    std::vector<std::vector<cplx>> alpha;
    for (auto& c : cells(s)) {
        std::vector<cplx> a(c.size);
        a[0] = std::polar(mod(rng), ph(rng));
        for (int i = 1; i < c.size; ++i) a[i] = cplx(u(rng), u(rng));
        alpha.push_back(a);
    }
    return TriangleTransform::from_alpha(s, alpha);
}

double FiniteCheck::worst() const {
    return std::max({chain, biorthogonality, constraint, symmetry, anti_diagonal, reconstruction, unit_identity,
                     zero_eigenvector});
}

FiniteCheck verify_spec(const JordanSpec& s, const TriangleTransform& t, double kappa) {
    FiniteCheck f;
    const JordanBuild jb = build(s);
    const int N = s.dimension();
    const Mat E = Mat::Identity(N, N);
    const BiorthSystem tb = triangle(s, jb.system, t);
    f.chain = chain_residual(s, jb.H, tb);
    f.biorthogonality = biorthogonality_residual(tb);
    f.constraint = t.constraint_residual();

    const TSymmetricForm ts = t_symmetric_form(s, tb);
    f.symmetry = sup(ts.M - ts.M.transpose());
    Mat off = ts.identity;
    for (auto& c : cells(s))
        for (int j = 0; j < c.size; ++j) off(c.offset + j, c.offset + c.size - 1 - j) -= 1.0;
    f.anti_diagonal = sup(off);

    const RotatedForm r = diagonalize_identity(s, tb, ts, kappa);
    f.reconstruction = std::max(sup(tb.direct * ts.M * ts.hat - jb.H), sup(r.direct * r.M * r.conjugate - jb.H));
    f.unit_identity = std::max({sup(r.direct * r.conjugate - E), sup(r.conjugate * r.direct - E), sup(r.identity - E),
                                sup(r.M - r.M.transpose())});

    for (size_t n = 0; n < s.levels.size(); ++n) {
        const auto& l = s.levels[n];
        const int pmax = *std::max_element(l.sizes.begin(), l.sizes.end());
        for (int m = 1; m <= pmax + 1; ++m) {
            int expect = N;
            for (int p : l.sizes) expect -= std::min(m, p);
            f.structure = f.structure && rank_of_power(r.M, l.lambda, m) == expect;
        }
    }
    for (auto& c : cells(s)) {
        if (c.size < 2) continue;
        const auto blk = r.M.block(c.offset, c.offset, c.size, c.size);
        Eigen::FullPivLU<Mat> lu(blk - c.lambda * Mat::Identity(c.size, c.size));
        Mat ker = lu.kernel();
        if (ker.cols() != 1) {
            f.structure = false;
            continue;
        }
        Eigen::VectorXcd v = ker.col(0) / ker.col(0).norm();
        f.zero_eigenvector = std::max(f.zero_eigenvector, std::abs(v.dot(v.conjugate())));
    }

    for (size_t k = 0; k < t.alpha.size(); ++k) {
        const int p = static_cast<int>(t.alpha[k].size());
        const Mat P = chain_pairings(p, t.alpha[k], kappa);
        const BinormPattern pat = binorm_structure(p);
        const cplx anti = P(0, p - 1);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                if (pat[i][j] == Pairing::Zero) f.pattern = f.pattern && std::abs(P(i, j)) < 1e-10;
                if (pat[i][j] == Pairing::AntiDiagonal)
                    f.pattern = f.pattern && std::abs(P(i, j) - anti) < 1e-10 && std::abs(anti) > 1e-10;
            }
    }
    return f;
}

} // namespace nhlab
