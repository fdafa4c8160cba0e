#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nhlab/model.hpp"

namespace nhlab {

// ψ_ε(x) = (εx/2 + 1/(x-z))·exp(-εx²/4), regularizing the Threshold (n = 1) ψ0
cplx packet_eval(double eps, cplx z, double x);
cplx packet_second_derivative(double eps, cplx z, double x);

// first line of the packet formula: ∫dk/√(πε) (-ik + 1/(x-z)) exp(ikx - k²/ε)
cplx packet_momentum_integral(double eps, cplx z, double x);

double printed_packet_binorm(double eps);                // √(π/8) ε^½
cplx packet_binorm(double eps, cplx z, double tol = 1e-12); // ∫ψ_ε² dx

enum class PacketObservable { Total, Potential, Kinetic };
std::string to_string(PacketObservable o);

struct PacketEv {
    cplx value;      // analytic ψ_ε'' in the kinetic part
    cplx via_diffop; // 8th-order stencil for ψ_ε''
    cplx printed;    // √(9π/128) ε^{3/2}, -√(25π/36) ε^{3/2}, and their difference
};

// ∫ψ_ε·(Oψ_ε)dx; kinetic = total - potential
PacketEv packet_ev(double eps, cplx z, PacketObservable which, double tol = 1e-12);

enum class Prescription { Hermitian, Binorm, Raw };
enum class OperatorId { Hamiltonian, Potential, Kinetic, Identity };

std::string to_string(Prescription p);
std::string to_string(OperatorId o);

struct AverageResult {
    cplx numerator;
    cplx denominator;
    cplx value;                // NaN when indeterminate
    bool indeterminate = false; // raw form with vanishing numerator and denominator
    std::string note;
};

// closed-form state φ: Hermitian ∫φ*Oφ/∫|φ|², Raw ∫φOφ/∫φ² (reports 0/0)
AverageResult average(const Model& m, const std::function<cplx(double)>& phi, OperatorId op, Prescription p,
                      double tol = 1e-10);

// state Σ C_r ψ_r in a biorthogonal basis with O_rs = <ψ~_r|O|ψ_s>:
// Σ C_r* C_s O_rs / Σ|C_r|²
AverageResult binorm_average(const std::vector<cplx>& C, const Eigen::MatrixXcd& O);

// raw-mode result as a number; throws ZeroDenominator on 0/0
cplx checked_value(const AverageResult& r);

} // namespace nhlab
