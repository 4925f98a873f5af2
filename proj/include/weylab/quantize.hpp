#pragma once

#include <Eigen/Dense>

#include "weylab/grid.hpp"

namespace weylab {

/// Dense Schwartz kernel of Op_t(a) over the configuration grid.
/// K(x,y) = (2 pi)^{-n} \int a((1-t)x + t y, xi) e^{i <x-y, xi>} dxi,
/// with the xi integral discretized on the centered reciprocal grid at
/// doubled resolution (spacing pi/2L), so that Op_t(1) is exactly the
/// identity and the periodic image of the displacement x - y sits at
/// distance 4L, outside the kernel support of decaying symbols.
struct OperatorKernel {
  PhaseGrid grid;    // configuration grid (n, L, N)
  double t = 0.5;    // quantization parameter
  Eigen::MatrixXcd K;
  bool scaled = false;  // true once the quadrature weight h^n is absorbed
};

OperatorKernel build_kernel(const SymbolField& a, double t);

/// (K f)(x) = h^n sum_y K(x,y) f(y)
FunctionField apply(const OperatorKernel& kernel, const FunctionField& f);

/// Returns b with Op_s(a) = Op_t(b) at the discrete level.
SymbolField convert_quantization(const SymbolField& a, double s, double t);

/// Remainder of the truncated expansion of e^{i t Phi(D)} a after N_terms
/// terms; Phi(D)^k acts as a Fourier multiplier, except for symbols flagged
/// as polynomials where the nilpotent series is evaluated exactly.
SymbolField expansion_remainder(const SymbolField& a, double t, int N_terms);

}  // namespace weylab
