#pragma once

#include <cstdint>

#include "weylab/quantize.hpp"

namespace weylab {

/// Singular values of the quadrature-scaled kernel matrix h^n K, descending.
struct SingularSpectrum {
  std::vector<double> sigma;
  double scale = 1.0;      // quadrature factor absorbed before decomposition
  double residual = 0.0;   // max-norm reconstruction residual of the SVD
};

SingularSpectrum singular_values(const OperatorKernel& kernel);

/// (sum sigma_i^p)^{1/p}; sigma_1 for p = inf. Requires p >= 1.
double schatten_norm(const SingularSpectrum& spec, double p);

/// Relative gap |s_2 - (2 pi)^{-n/2} ||a||_{L^2}| / ((2 pi)^{-n/2} ||a||_{L^2}).
double hs_identity_gap(const SymbolField& a);

/// Value of (sum_j |(S f_j, g_j)|^p)^{1/p} for explicit orthonormal columns
/// F, G (the definitional functional at a chosen sequence).
double on_sequence_value(const OperatorKernel& kernel, double p,
                         const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& G);

/// Monte-Carlo supremum of the definitional functional over random
/// orthonormal sequences; a lower bound for schatten_norm.
double on_sequence_lower_bound(const OperatorKernel& kernel, double p,
                               int trials, std::uint64_t seed);

/// 2^n s_1(a) - ||a||_{L^inf}; nonnegative up to 1e-8 s_1.
double lone_infinity_bound_gap(const SymbolField& a);

}  // namespace weylab
