#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "torres/fan.hpp"
#include "torres/polynomial.hpp"

namespace torres {

struct SamplerConfig {
    long sample_count = 1000000;
    std::uint64_t seed = 1;
    int chart = 0;  // max-cone index of the torus chart
};

struct IntegralEstimate {
    std::complex<double> value{0.0, 0.0};
    double std_error = 0.0;
    long samples_used = 0;
};

/// Monte Carlo evaluation of the residue as an integral over a dense chart:
/// the chart integrand is g * conj(det M) * det(n_I) / (sum |f_i|^2)^(n+1)
/// with M the (n+1)x(n+1) matrix of sections over their chart partials, and
/// the constant works out to n! pi^n after the compactifying substitution
/// u = tan(theta) e^{i phi} per complex coordinate. Requires a smooth
/// simplicial fan of rank at most 2.
IntegralEstimate residue_integral(const Fan& fan, const ClassGroup& cg, const DegreeClass& beta,
                                  const std::vector<Polynomial>& f, const Polynomial& g,
                                  const SamplerConfig& config);

/// Estimate of the trace normalization on projective n-space; converges to 1.
IntegralEstimate appendix_normalization(int n, const SamplerConfig& config);

}  // namespace torres
