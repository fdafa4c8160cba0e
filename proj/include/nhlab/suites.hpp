#pragma once

#include <cstdint>
#include <vector>

#include "nhlab/model.hpp"
#include "nhlab/report.hpp"

namespace nhlab {

// default parameter sets of the verification runs
ModelParams default_params(ModelId id);

Suite chain_suite(const ModelParams& p);
Suite binorm_suite(const ModelParams& p);
Suite limits_suite(const ModelParams& p);
Suite scattering_suite(const ModelParams& p, std::vector<double> ks = {});

std::vector<double> default_packet_epsilons(); // 1e-3 … 1e-1, seven points
Suite packet_suite(cplx z, const std::vector<double>& epsilons = default_packet_epsilons());
Suite averages_suite(cplx z);

Suite coalescence_suite(double alpha, cplx z, const std::vector<double>& betas);

struct IdentityOptions {
    bool full = true;        // Full kernels on the Gaussian battery
    bool reduced = true;     // Reduced/Extended on ψ0 and a Gaussian
    bool lemmas = true;
    std::vector<ModelId> models{ModelId::JordanBound, ModelId::TwoLevel, ModelId::Threshold, ModelId::ContinuumBS};
    double epsilon = 1e-3;
};
std::vector<double> default_probe_points(); // five x' values
Suite identity_suite(const IdentityOptions& o = {});

Suite finite_suite(std::uint64_t seed, int count = 100);

// the suites run by `verify` for one model, and for --all
Report verify_model(const ModelParams& p);
Report verify_all(std::uint64_t seed);

} // namespace nhlab
