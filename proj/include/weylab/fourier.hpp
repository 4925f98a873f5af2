#pragma once

#include "weylab/grid.hpp"

namespace weylab {

enum class FourierDirection { Forward, Inverse };

/// Continuum-normalized centered Fourier transform
///   (2 pi)^{-d/2} \int f(x) e^{-+ i <x,u>} dx
/// realized as a scaled DFT with centered frequency axis [-pi/h, pi/h).
/// inverse(forward(f)) == f at the representable-number level.
SymbolField fourier(const SymbolField& a, FourierDirection dir);
FunctionField fourier(const FunctionField& f, FourierDirection dir);

/// Symplectic Fourier transform
///   F_sigma a(X) = pi^{-n} \int a(Y) e^{2 i sigma(X,Y)} dY ,
/// quadrature over the grid; output lives on the same phase grid.
SymbolField symplectic_fourier(const SymbolField& a);

/// Quadrature-scaled periodic convolution (h^{2n} times cyclic convolution),
/// the discrete realization of the continuum convolution on [-L,L)^{2n}.
SymbolField periodic_convolve(const SymbolField& a, const SymbolField& b);

/// Applies the Fourier multiplier m(U) on the centered frequency grid:
/// result = F^{-1}[ m(U) F a ].
SymbolField fourier_multiplier(const SymbolField& a,
                               const std::function<cd(std::span<const double>)>& m);

namespace detail {
/// Raw centered multi-axis DFT on a flat row-major array with `dims` axes of
/// length grid.N. Space-domain samples <-> centered frequency samples.
void centered_dft(const PhaseGrid& g, int dims, std::vector<cd>& v,
                  FourierDirection dir);

/// Zero-padded trigonometric upsampling by integer factor q along the given
/// axes (exact for band-limited data). Axis lengths multiply by q.
std::vector<cd> upsample(const PhaseGrid& g, int dims, const std::vector<cd>& v,
                         const std::vector<int>& axes, int q);

/// Trigonometric interpolation weights from the N uniform axis samples to the
/// target coordinates, row-major (targets x N).
std::vector<cd> interp_matrix(const PhaseGrid& g,
                              const std::vector<double>& targets);

/// Applies the T x lens[axis] matrix along one axis of a row-major tensor;
/// lens[axis] is updated to T.
std::vector<cd> apply_matrix_axis(const std::vector<cd>& in,
                                  std::vector<std::size_t>& lens, int axis,
                                  const std::vector<cd>& M, std::size_t T);
}  // namespace detail

}  // namespace weylab
