#include "weylab/fourier.hpp"

#include <fftw3.h>

#include <cmath>

namespace weylab {

namespace detail {

namespace {

// Parity of the digit sum of the row-major multi-index.
int index_parity(std::size_t flat, std::size_t N, int dims) {
  int s = 0;
  for (int ax = 0; ax < dims; ++ax) {
    s += static_cast<int>(flat % N);
    flat /= N;
  }
  return s & 1;
}

void raw_dft(std::vector<cd>& v, int dims, int N, int sign) {
  std::vector<int> lens(dims, N);
  fftw_plan plan = fftw_plan_dft(
      dims, lens.data(), reinterpret_cast<fftw_complex*>(v.data()),
      reinterpret_cast<fftw_complex*>(v.data()), sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

}  // namespace

void centered_dft(const PhaseGrid& g, int dims, std::vector<cd>& v,
                  FourierDirection dir) {
  const std::size_t N = g.points_per_axis();
  const bool fwd = dir == FourierDirection::Forward;
  const double scale =
      std::pow((fwd ? g.spacing() : g.freq_spacing()) / std::sqrt(2.0 * M_PI),
               dims);
  // global sign from the e^{i L xi} boundary phase, (-1)^{d N/2}
  const double corner = ((dims * (g.N / 2)) % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (index_parity(i, N, dims)) v[i] = -v[i];
  raw_dft(v, dims, g.N, fwd ? FFTW_FORWARD : FFTW_BACKWARD);
  for (std::size_t i = 0; i < v.size(); ++i) {
    double s = index_parity(i, N, dims) ? -scale : scale;
    v[i] *= corner * s;
  }
}

std::vector<cd> interp_matrix(const PhaseGrid& g,
                              const std::vector<double>& targets) {
  const int N = g.N;
  const double h = g.spacing();
  const double w = M_PI / g.L;
  std::vector<cd> M(targets.size() * N);
  for (std::size_t r = 0; r < targets.size(); ++r) {
    for (int k = 0; k < N; ++k) {
      const double s = targets[r] - g.point(k);
      const double ratio = s / h;
      cd val;
      if (std::abs(ratio - std::round(ratio)) < 1e-12) {
        long d = std::lround(ratio) % N;
        val = ((d % N) + N) % N == 0 ? cd(1, 0) : cd(0, 0);
      } else {
        const cd num = std::exp(cd(0, w * N * s)) - 1.0;
        const cd den = std::exp(cd(0, w * s)) - 1.0;
        val = std::exp(cd(0, -w * (N / 2) * s)) * num / den / double(N);
      }
      M[r * N + k] = val;
    }
  }
  return M;
}

std::vector<cd> apply_matrix_axis(const std::vector<cd>& in,
                                  std::vector<std::size_t>& lens, int axis,
                                  const std::vector<cd>& M, std::size_t T) {
  const std::size_t Nin = lens[axis];
  std::size_t inner = 1, outer = 1;
  for (std::size_t ax = axis + 1; ax < lens.size(); ++ax) inner *= lens[ax];
  for (int ax = 0; ax < axis; ++ax) outer *= lens[ax];
  std::vector<cd> out(outer * T * inner, cd(0, 0));
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t t = 0; t < T; ++t) {
      cd* dst = out.data() + (o * T + t) * inner;
      const cd* mrow = M.data() + t * Nin;
      for (std::size_t k = 0; k < Nin; ++k) {
        const cd w = mrow[k];
        if (w == cd(0, 0)) continue;
        const cd* src = in.data() + (o * Nin + k) * inner;
        for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
      }
    }
  lens[axis] = T;
  return out;
}

std::vector<cd> upsample(const PhaseGrid& g, int dims, const std::vector<cd>& v,
                         const std::vector<int>& axes, int q) {
  if (q == 1) return v;
  std::vector<double> targets(g.N * static_cast<std::size_t>(q));
  const double hq = g.spacing() / q;
  for (std::size_t j = 0; j < targets.size(); ++j) targets[j] = -g.L + j * hq;
  const std::vector<cd> M = interp_matrix(g, targets);
  std::vector<std::size_t> lens(dims, g.points_per_axis());
  std::vector<cd> out = v;
  for (int ax : axes) out = apply_matrix_axis(out, lens, ax, M, targets.size());
  return out;
}

}  // namespace detail

namespace {

template <class Field>
Field fourier_impl(const Field& f, FourierDirection dir) {
  const bool fwd = dir == FourierDirection::Forward;
  if (fwd && f.domain != Domain::Space)
    throw std::invalid_argument("fourier: field already in frequency domain");
  Field out = f;
  out.gen = nullptr;
  detail::centered_dft(f.grid, f.dims(), out.values, dir);
  out.domain = fwd ? Domain::Frequency : Domain::Space;
  return out;
}

}  // namespace

SymbolField fourier(const SymbolField& a, FourierDirection dir) {
  return fourier_impl(a, dir);
}
FunctionField fourier(const FunctionField& f, FourierDirection dir) {
  return fourier_impl(f, dir);
}

SymbolField symplectic_fourier(const SymbolField& a) {
  const PhaseGrid& g = a.grid;
  const int n = g.n;
  const std::size_t N = g.points_per_axis();
  // chirp matrix P[j][k] = e^{2 i p_j p_k} over the space axis
  std::vector<cd> P(N * N), Pc(N * N);
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) {
      P[j * N + k] = std::exp(cd(0, 2.0 * g.point(j) * g.point(k)));
      Pc[j * N + k] = std::conj(P[j * N + k]);
    }
  std::vector<std::size_t> lens(2 * n, N);
  std::vector<cd> t = a.values;
  for (int ax = 0; ax < n; ++ax)
    t = detail::apply_matrix_axis(t, lens, ax, P, N);       // y_j -> xi_j slot
  for (int ax = n; ax < 2 * n; ++ax)
    t = detail::apply_matrix_axis(t, lens, ax, Pc, N);      // eta_j -> x_j slot
  // slots are now (xi_1..xi_n, x_1..x_n); swap the blocks back to (x, xi)
  SymbolField out = a;
  out.gen = nullptr;
  const double scale =
      std::pow(1.0 / M_PI, n) * std::pow(g.spacing(), 2 * n);
  std::vector<std::size_t> idx(2 * n);
  const std::size_t total = t.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int ax = 2 * n - 1; ax >= 0; --ax) {
      idx[ax] = rem % N;
      rem /= N;
    }
    std::size_t swapped = 0;
    for (int ax = 0; ax < 2 * n; ++ax)
      swapped = swapped * N + idx[(ax + n) % (2 * n)];
    out.values[flat] = scale * t[swapped];
  }
  return out;
}

SymbolField periodic_convolve(const SymbolField& a, const SymbolField& b) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument("periodic_convolve: grid mismatch");
  const int d = a.dims();
  std::vector<cd> fa = a.values, fb = b.values;
  detail::centered_dft(a.grid, d, fa, FourierDirection::Forward);
  detail::centered_dft(a.grid, d, fb, FourierDirection::Forward);
  // continuum convolution theorem under the (2pi)^{-d/2} convention
  const double c = std::pow(2.0 * M_PI, d / 2.0);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= c * fb[i];
  detail::centered_dft(a.grid, d, fa, FourierDirection::Inverse);
  SymbolField out = a;
  out.gen = nullptr;
  out.values = std::move(fa);
  return out;
}

SymbolField fourier_multiplier(
    const SymbolField& a,
    const std::function<cd(std::span<const double>)>& m) {
  SymbolField hat = fourier(a, FourierDirection::Forward);
  std::vector<double> U(a.dims());
  for (std::size_t i = 0; i < hat.values.size(); ++i) {
    hat.coords(i, U);
    hat.values[i] *= m(U);
  }
  SymbolField out = fourier(hat, FourierDirection::Inverse);
  out.poly_degree = -1;
  return out;
}

}  // namespace weylab
