#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace weylab {

using cd = std::complex<double>;

/// Uniform sampling of the truncated phase space [-L,L)^{2n}.
/// Every axis carries N points x_k = -L + k*h with h = 2L/N; N must be even
/// so that midpoints of grid points land on the half-shifted lattice.
struct PhaseGrid {
  int n = 1;       // base-space dimension
  double L = 8.0;  // half-width
  int N = 128;     // points per axis

  PhaseGrid() = default;
  PhaseGrid(int n_, double L_, int N_);

  double spacing() const { return 2.0 * L / N; }
  double point(int k) const { return -L + k * spacing(); }
  /// Centered DFT frequency node, k = 0..N-1, spacing pi/L, range [-pi/h, pi/h).
  double freq(int k) const { return (k - N / 2) * freq_spacing(); }
  double freq_spacing() const { return M_PI / L; }

  std::size_t points_per_axis() const { return static_cast<std::size_t>(N); }
  std::size_t config_size() const;  // N^n
  std::size_t phase_size() const;   // N^{2n}

  bool operator==(const PhaseGrid&) const = default;
};

/// Optional analytic rule behind a sampled field; takes the full coordinate
/// vector (length 2n for symbols, n for functions).
using Generator = std::function<cd(std::span<const double>)>;

enum class Domain { Space, Frequency };

/// Complex samples of a symbol a(x,xi) over a PhaseGrid (2n axes, row-major,
/// x-axes first). `gen`, when present, reproduces `values` at the grid nodes.
struct SymbolField {
  PhaseGrid grid;
  std::vector<cd> values;
  Generator gen;             // may be empty
  Domain domain = Domain::Space;
  int poly_degree = -1;      // >=0 when gen is a polynomial of that joint degree

  int dims() const { return 2 * grid.n; }
  std::size_t size() const { return grid.phase_size(); }

  /// Coordinates of the flat index, axis order (x_1..x_n, xi_1..xi_n).
  void coords(std::size_t flat, std::span<double> out) const;

  /// Point evaluation: generator when present, periodic trigonometric
  /// interpolation of the samples otherwise.
  cd value_at(std::span<const double> X) const;

  void resample_from_generator();
};

/// Complex samples of f over the configuration grid (n axes).
struct FunctionField {
  PhaseGrid grid;
  std::vector<cd> values;
  Generator gen;
  Domain domain = Domain::Space;

  int dims() const { return grid.n; }
  std::size_t size() const { return grid.config_size(); }
  void coords(std::size_t flat, std::span<double> out) const;
  void resample_from_generator();
};

SymbolField make_symbol(const PhaseGrid& grid, Generator gen);
FunctionField make_function(const PhaseGrid& grid, Generator gen);

/// Riemann-sum L^p norm; p = inf is the sample sup.
double lp_norm(const SymbolField& a, double p);
double lp_norm(const FunctionField& f, double p);

/// sup |a| over grid points with |X| >= R.
double linf_tail(const SymbolField& a, double R);

/// Quadrature value of  integral a * conj(b).
cd pairing(const SymbolField& a, const SymbolField& b);

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

namespace detail {
double quad_weight(const PhaseGrid& g, Domain d);
std::size_t ipow(std::size_t base, int exp);
}  // namespace detail

}  // namespace weylab
