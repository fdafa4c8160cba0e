#include "nhlab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nhlab/diffop.hpp"
#include "nhlab/quadrature.hpp"

namespace nhlab {

namespace {

void check_z(cplx z) {
    if (z.imag() == 0.0) throw ParameterError("packet needs Im z != 0");
}

void check_eps(double eps) {
    if (!(eps > 0.0)) throw ParameterError("packet epsilon must be positive");
}

// Gaussian-weighted line integral; the packet is negligible beyond |x| = L
QuadResult packet_integral(const Integrand& f, double eps, double tol) {
    const double L = std::sqrt(160.0 / eps);
    std::vector<double> br{-L, L};
    for (double t = 0.5; t < L; t *= 1.5) {
        br.push_back(t);
        br.push_back(-t);
    }
    br.push_back(0.0);
    std::sort(br.begin(), br.end());
    QuadOptions o;
    o.abs_tol = tol * std::pow(eps, 1.5); // values scale like ε^{1/2} … ε^{3/2}
    o.rel_tol = 1e-13;
    o.throw_on_failure = false; // the stencil route sits on a roundoff floor
    return integrate_panels(f, br, o);
}

} // namespace

cplx packet_eval(double eps, cplx z, double x) {
    check_z(z);
    return (0.5 * eps * x + 1.0 / (x - z)) * std::exp(-0.25 * eps * x * x);
}

cplx packet_second_derivative(double eps, cplx z, double x) {
    const cplx u = 1.0 / (x - z);
    const cplx a = 0.5 * eps * x + u, a1 = 0.5 * eps - u * u, a2 = 2.0 * u * u * u;
    const double g = std::exp(-0.25 * eps * x * x);
    const double g1 = -0.5 * eps * x * g, g2 = (-0.5 * eps + 0.25 * eps * eps * x * x) * g;
    return a2 * g + 2.0 * a1 * g1 + a * g2;
}

cplx packet_momentum_integral(double eps, cplx z, double x) {
    check_z(z);
    check_eps(eps);
    const cplx I{0.0, 1.0};
    Integrand f = [&](double k) { return (-I * k + 1.0 / (x - z)) * std::exp(I * k * x - k * k / eps); };
    const double K = std::sqrt(50.0 * eps);
    std::vector<double> br;
    const int n = 40;
    for (int i = 0; i <= n; ++i) br.push_back(-K + 2.0 * K * i / n);
    QuadOptions o;
    o.abs_tol = 1e-14;
    o.rel_tol = 1e-14;
    o.throw_on_failure = false;
    return integrate_panels(f, br, o).value / std::sqrt(pi * eps);
}

double printed_packet_binorm(double eps) { return std::sqrt(pi / 8.0) * std::sqrt(eps); }

cplx packet_binorm(double eps, cplx z, double tol) {
    check_z(z);
    check_eps(eps);
    Integrand f = [&](double x) {
        cplx p = packet_eval(eps, z, x);
        return p * p;
    };
    return packet_integral(f, eps, tol).value;
}

std::string to_string(PacketObservable o) {
    switch (o) {
    case PacketObservable::Total: return "total";
    case PacketObservable::Potential: return "potential";
    case PacketObservable::Kinetic: return "kinetic";
    }
    return "?";
}

PacketEv packet_ev(double eps, cplx z, PacketObservable which, double tol) {
    check_z(z);
    check_eps(eps);
    if (eps > 1.0) throw ParameterError("packet epsilon must lie in (0, 1]");
    auto psi = [&](double x) { return packet_eval(eps, z, x); };
    auto V = [&](double x) { return 2.0 / ((x - z) * (x - z)); };
    const double h = 0.02;
    Integrand kin = [&](double x) { return -psi(x) * packet_second_derivative(eps, z, x); };
    Integrand kin_fd = [&](double x) { return -psi(x) * second_derivative(psi, x, h, 8); };
    Integrand pot = [&](double x) {
        cplx p = psi(x);
        return p * V(x) * p;
    };
    const double e32 = std::pow(eps, 1.5);
    const cplx pr_total = std::sqrt(9.0 * pi / 128.0) * e32, pr_pot = -std::sqrt(25.0 * pi / 36.0) * e32;
    PacketEv r;
    cplx P = 0.0, K = 0.0, Kfd = 0.0;
    if (which != PacketObservable::Kinetic) P = packet_integral(pot, eps, tol).value;
    if (which != PacketObservable::Potential) {
        K = packet_integral(kin, eps, tol).value;
        Kfd = packet_integral(kin_fd, eps, std::max(tol, 1e-8)).value; // stencil error ~1e-10
    }
    switch (which) {
    case PacketObservable::Total:
        r.value = K + P;
        r.via_diffop = Kfd + P;
        r.printed = pr_total;
        break;
    case PacketObservable::Potential:
        r.value = P;
        r.via_diffop = P;
        r.printed = pr_pot;
        break;
    case PacketObservable::Kinetic:
        r.value = K;
        r.via_diffop = Kfd;
        r.printed = pr_total - pr_pot;
        break;
    }
    return r;
}

std::string to_string(Prescription p) {
    switch (p) {
    case Prescription::Hermitian: return "hermitian";
    case Prescription::Binorm: return "binorm";
    case Prescription::Raw: return "raw";
    }
    return "?";
}

std::string to_string(OperatorId o) {
    switch (o) {
    case OperatorId::Hamiltonian: return "hamiltonian";
    case OperatorId::Potential: return "potential";
    case OperatorId::Kinetic: return "kinetic";
    case OperatorId::Identity: return "identity";
    }
    return "?";
}

AverageResult average(const Model& m, const std::function<cplx(double)>& phi, OperatorId op, Prescription p,
                      double tol) {
    if (p == Prescription::Binorm)
        throw ParameterError("the binorm prescription needs basis coefficients; use binorm_average");
    const double h = 0.01;
    auto apply = [&](double x) -> cplx {
        switch (op) {
        case OperatorId::Identity: return phi(x);
        case OperatorId::Potential: return m.potential(x) * phi(x);
        case OperatorId::Kinetic: return -second_derivative(phi, x, h, 8);
        case OperatorId::Hamiltonian: return -second_derivative(phi, x, h, 8) + m.potential(x) * phi(x);
        }
        return 0.0;
    };
    const bool herm = p == Prescription::Hermitian;
    Integrand num = [&](double x) { return (herm ? std::conj(phi(x)) : phi(x)) * apply(x); };
    Integrand den = [&](double x) { return herm ? cplx(std::norm(phi(x)), 0.0) : phi(x) * phi(x); };
    AverageResult r;
    r.numerator = integrate_real_line(num, tol).value;
    r.denominator = integrate_real_line(den, tol).value;
    const double floor = 100.0 * tol;
    if (!herm && std::abs(r.denominator) < floor) {
        r.indeterminate = std::abs(r.numerator) < floor;
        r.value = cplx(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
        r.note = r.indeterminate ? "0/0, use packet regularization" : "vanishing denominator";
        return r;
    }
    r.value = r.numerator / r.denominator;
    return r;
}

AverageResult binorm_average(const std::vector<cplx>& C, const Eigen::MatrixXcd& O) {
    const Eigen::Index n = static_cast<Eigen::Index>(C.size());
    if (O.rows() != n || O.cols() != n) throw ParameterError("operator matrix does not match the coefficients");
    Eigen::VectorXcd c(n);
    for (Eigen::Index i = 0; i < n; ++i) c(i) = C[i];
    AverageResult r;
    r.denominator = c.squaredNorm();
    r.numerator = c.adjoint() * O * c;
    if (std::abs(r.denominator) == 0.0) throw ZeroDenominator("all coefficients vanish");
    r.value = r.numerator / r.denominator;
    return r;
}

cplx checked_value(const AverageResult& r) {
    if (r.indeterminate || std::isnan(r.value.real()))
        throw ZeroDenominator(r.note.empty() ? "vanishing denominator" : r.note);
    return r.value;
}

} // namespace nhlab
