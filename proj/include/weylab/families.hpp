#pragma once

#include <cstdint>

#include "weylab/grid.hpp"

namespace weylab {

/// Random trigonometric polynomial (frequencies |omega| <= bw per axis, step
/// 1/2) under a Gaussian envelope e^{-|X|^2/2}; decays fast enough at the
/// box boundary for L >= 8 that truncation is negligible.
SymbolField random_band_limited(const PhaseGrid& grid, std::uint64_t seed,
                                int bw = 4, double envelope = 0.5);

/// amp * e^{-|X|^2 / (2 width^2)}
SymbolField gaussian_symbol(const PhaseGrid& grid, double amp = 2.0,
                            double width = std::sqrt(0.5));

/// Smooth bump supported in B_R(0), value 1 at the origin, optionally
/// modulated by a random trigonometric polynomial.
SymbolField bump_symbol(const PhaseGrid& grid, double R,
                        std::uint64_t seed = 0, int bw = 2);

/// Random real polynomial of joint degree <= deg with coefficients in
/// [-1, 1]; the field carries poly_degree so exact polynomial paths engage.
SymbolField polynomial_symbol(const PhaseGrid& grid, int deg,
                              std::uint64_t seed);

/// Random band-limited configuration-space function with Gaussian envelope.
FunctionField random_function(const PhaseGrid& grid, std::uint64_t seed,
                              int bw = 4);

}  // namespace weylab
