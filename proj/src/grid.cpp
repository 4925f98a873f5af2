#include "weylab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace weylab {

namespace detail {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

double quad_weight(const PhaseGrid& g, Domain d) {
  return d == Domain::Space ? g.spacing() : g.freq_spacing();
}

}  // namespace detail

PhaseGrid::PhaseGrid(int n_, double L_, int N_) : n(n_), L(L_), N(N_) {
  if (n < 1) throw std::invalid_argument("PhaseGrid: n must be positive");
  if (L <= 0) throw std::invalid_argument("PhaseGrid: L must be positive");
  if (N < 2 || N % 2 != 0)
    throw std::invalid_argument("PhaseGrid: N must be a positive even integer");
}

std::size_t PhaseGrid::config_size() const {
  return detail::ipow(points_per_axis(), n);
}

std::size_t PhaseGrid::phase_size() const {
  return detail::ipow(points_per_axis(), 2 * n);
}

namespace {

void flat_coords(const PhaseGrid& g, Domain d, int dims, std::size_t flat,
                 std::span<double> out) {
  const std::size_t N = g.points_per_axis();
  for (int ax = dims - 1; ax >= 0; --ax) {
    const int k = static_cast<int>(flat % N);
    out[ax] = d == Domain::Space ? g.point(k) : g.freq(k);
    flat /= N;
  }
}

template <class Field>
void resample(Field& f) {
  if (!f.gen) throw std::runtime_error("resample: field has no generator");
  f.values.resize(f.size());
  std::vector<double> X(f.dims());
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    f.coords(i, X);
    f.values[i] = f.gen(X);
  }
}

// Periodic trigonometric interpolation of uniform samples, one point.
// Cost O(N^d); intended for occasional off-grid probes only.
cd trig_interp(const PhaseGrid& g, const std::vector<cd>& v, int dims,
               std::span<const double> X) {
  const int N = g.N;
  const double h = g.spacing();
  // Dirichlet-type kernel for even N with the asymmetric Nyquist mode:
  //   D(s) = (1/N) sum_{m=0}^{N-1} e^{i (m - N/2) (pi/L) s}
  auto dirichlet = [&](double s) -> cd {
    const double w = M_PI / g.L;
    const double phase = std::fmod(s / h, 1.0);
    if (std::abs(phase) < 1e-13 || std::abs(std::abs(phase) - 1.0) < 1e-13) {
      // on-lattice: exact Kronecker behaviour
      long k = std::lround(s / h) % N;
      return (k % N + N) % N == 0 ? cd(1.0, 0.0) : cd(0.0, 0.0);
    }
    const cd num = std::exp(cd(0, w * N * s)) - 1.0;
    const cd den = std::exp(cd(0, w * s)) - 1.0;
    return std::exp(cd(0, -w * (N / 2) * s)) * num / den / double(N);
  };
  std::vector<std::vector<cd>> wts(dims);
  for (int ax = 0; ax < dims; ++ax) {
    wts[ax].resize(N);
    for (int k = 0; k < N; ++k) wts[ax][k] = dirichlet(X[ax] - g.point(k));
  }
  // accumulate over the full product lattice
  cd acc = 0.0;
  std::vector<int> idx(dims, 0);
  const std::size_t total = v.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    cd w = 1.0;
    for (int ax = dims - 1; ax >= 0; --ax) {
      w *= wts[ax][rem % N];
      rem /= N;
    }
    if (w != cd(0.0, 0.0)) acc += w * v[flat];
  }
  return acc;
}

}  // namespace

void SymbolField::coords(std::size_t flat, std::span<double> out) const {
  flat_coords(grid, domain, dims(), flat, out);
}

void FunctionField::coords(std::size_t flat, std::span<double> out) const {
  flat_coords(grid, domain, dims(), flat, out);
}

cd SymbolField::value_at(std::span<const double> X) const {
  if (gen) return gen(X);
  return trig_interp(grid, values, dims(), X);
}

void SymbolField::resample_from_generator() { resample(*this); }
void FunctionField::resample_from_generator() { resample(*this); }

SymbolField make_symbol(const PhaseGrid& grid, Generator gen) {
  SymbolField a;
  a.grid = grid;
  a.gen = std::move(gen);
  a.resample_from_generator();
  return a;
}

FunctionField make_function(const PhaseGrid& grid, Generator gen) {
  FunctionField f;
  f.grid = grid;
  f.gen = std::move(gen);
  f.resample_from_generator();
  return f;
}

namespace {

template <class Field>
double lp_norm_impl(const Field& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0;
    for (const cd& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  const double w = detail::quad_weight(f.grid, f.domain);
  double s = 0;
  for (const cd& v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(std::pow(w, f.dims()) * s, 1.0 / p);
}

}  // namespace

double lp_norm(const SymbolField& a, double p) { return lp_norm_impl(a, p); }
double lp_norm(const FunctionField& f, double p) { return lp_norm_impl(f, p); }

double linf_tail(const SymbolField& a, double R) {
  const double diag = a.grid.L * std::sqrt(2.0 * a.grid.n);
  if (R >= diag)
    throw std::invalid_argument("linf_tail: R exceeds the grid diagonal");
  double m = 0;
  std::vector<double> X(a.dims());
  bool any = false;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    a.coords(i, X);
    double r2 = 0;
    for (double x : X) r2 += x * x;
    if (r2 >= R * R) {
      any = true;
      m = std::max(m, std::abs(a.values[i]));
    }
  }
  if (!any) throw std::invalid_argument("linf_tail: empty region");
  return m;
}

cd pairing(const SymbolField& a, const SymbolField& b) {
  if (!(a.grid == b.grid) || a.domain != b.domain)
    throw std::invalid_argument("pairing: grid mismatch");
  cd s = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s += a.values[i] * std::conj(b.values[i]);
  const double w = detail::quad_weight(a.grid, a.domain);
  return std::pow(w, a.dims()) * s;
}

}  // namespace weylab
