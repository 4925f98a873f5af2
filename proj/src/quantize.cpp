#include "weylab/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "weylab/fourier.hpp"

namespace weylab {

namespace {

// Rational reconstruction t = r/q with q <= max_q; returns false otherwise.
bool rationalize(double t, int max_q, long& r, long& q) {
  for (long den = 1; den <= max_q; ++den) {
    const double num = t * den;
    if (std::abs(num - std::round(num)) < 1e-12) {
      r = std::lround(num);
      q = den;
      return true;
    }
  }
  return false;
}

void check_finite(const std::vector<cd>& v, const char* what) {
  for (const cd& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::runtime_error(std::string(what) + ": non-finite samples");
}

std::vector<double> fornberg(double x0, std::span<const double> alpha, int M);

// targets x N matrix of Lagrange interpolation weights on a clamped stencil
// of p = deg+1 grid points; exact for polynomials of degree <= deg and valid
// at targets outside the grid (polynomial extension).
std::vector<cd> lagrange_matrix(const PhaseGrid& g,
                                const std::vector<double>& targets, int deg) {
  const int N = g.N;
  const int p = std::min(N, deg + 1);
  std::vector<cd> M(targets.size() * static_cast<std::size_t>(N), cd(0, 0));
  std::vector<double> nodes(p);
  for (std::size_t r = 0; r < targets.size(); ++r) {
    const int i = static_cast<int>(std::round((targets[r] + g.L) / g.spacing()));
    const int s = std::clamp(i - p / 2, 0, N - p);
    for (int k = 0; k < p; ++k) nodes[k] = g.point(s + k);
    const std::vector<double> W = fornberg(targets[r], nodes, 0);
    for (int k = 0; k < p; ++k) M[r * N + s + k] = W[k];
  }
  return M;
}

void decode(std::size_t flat, std::size_t base, int dims,
            std::span<std::size_t> out) {
  for (int ax = dims - 1; ax >= 0; --ax) {
    out[ax] = flat % base;
    flat /= base;
  }
}

// Symbol values on the (q-refined midpoint lattice)^n x (frequency nodes)^n,
// row-major with the midpoint block first.  Frequency nodes outside the
// symbol's truncation box are filled from the generator when available and
// set to zero otherwise (the sampled field carries no information there).
std::vector<cd> midpoint_table(const SymbolField& a, long q,
                               const std::vector<double>& xi,
                               bool zero_outside) {
  const PhaseGrid& g = a.grid;
  const int n = g.n;
  const std::size_t Nm = g.points_per_axis() * static_cast<std::size_t>(q);
  const std::size_t Nf = xi.size();
  const std::size_t rows = detail::ipow(Nm, n);
  const std::size_t cols = detail::ipow(Nf, n);
  std::vector<cd> table(rows * cols);
  if (a.gen) {
    std::vector<double> X(2 * n);
    std::vector<std::size_t> mi(n), li(n);
    const double hq = g.spacing() / q;
    for (std::size_t row = 0; row < rows; ++row) {
      decode(row, Nm, n, mi);
      for (int j = 0; j < n; ++j) X[j] = -g.L + mi[j] * hq;
      for (std::size_t col = 0; col < cols; ++col) {
        decode(col, Nf, n, li);
        for (int j = 0; j < n; ++j) X[n + j] = xi[li[j]];
        table[row * cols + col] = a.gen(X);
      }
    }
    return table;
  }
  // Sampled path.  Polynomial-flagged symbols use exact Lagrange evaluation
  // (valid outside the box as polynomial extension); everything else uses
  // zero-padded trigonometric interpolation, with quadrature nodes outside
  // the box set to zero for decaying symbols and filled by the periodic
  // extension otherwise.
  const bool poly = a.poly_degree >= 0;
  std::vector<cd> v = a.values;
  std::vector<std::size_t> lens(2 * n, g.points_per_axis());
  if (q > 1) {
    std::vector<double> fine(Nm);
    const double hq = g.spacing() / q;
    for (std::size_t j = 0; j < Nm; ++j) fine[j] = -g.L + j * hq;
    const std::vector<cd> Mx = poly
                                   ? lagrange_matrix(g, fine, a.poly_degree)
                                   : detail::interp_matrix(g, fine);
    for (int ax = 0; ax < n; ++ax)
      v = detail::apply_matrix_axis(v, lens, ax, Mx, Nm);
  }
  std::vector<cd> M;
  if (poly) {
    M = lagrange_matrix(g, xi, a.poly_degree);
  } else {
    std::vector<double> inside;
    std::vector<std::size_t> where;
    for (std::size_t l = 0; l < Nf; ++l)
      if (!zero_outside || (xi[l] >= -g.L && xi[l] < g.L)) {
        inside.push_back(xi[l]);
        where.push_back(l);
      }
    std::vector<cd> Min = detail::interp_matrix(g, inside);
    M.assign(Nf * g.points_per_axis(), cd(0, 0));
    for (std::size_t r = 0; r < where.size(); ++r)
      for (std::size_t k = 0; k < g.points_per_axis(); ++k)
        M[where[r] * g.points_per_axis() + k] =
            Min[r * g.points_per_axis() + k];
  }
  for (int ax = n; ax < 2 * n; ++ax)
    v = detail::apply_matrix_axis(v, lens, ax, M, Nf);
  return v;
}

// Fornberg weights: C(i, m) is the weight of node alpha[i] in the m-th
// derivative at x0; exact for polynomials of degree < alpha.size().
std::vector<double> fornberg(double x0, std::span<const double> alpha, int M) {
  const int p = static_cast<int>(alpha.size());
  std::vector<double> C(static_cast<std::size_t>(p) * (M + 1), 0.0);
  auto at = [&](int i, int m) -> double& {
    return C[static_cast<std::size_t>(i) * (M + 1) + m];
  };
  double c1 = 1.0, c4 = alpha[0] - x0;
  at(0, 0) = 1.0;
  for (int i = 1; i < p; ++i) {
    const int mn = std::min(i, M);
    double c2 = 1.0, c5 = c4;
    c4 = alpha[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = alpha[i] - alpha[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int m = mn; m >= 1; --m)
          at(i, m) = c1 * (m * at(i - 1, m - 1) - c5 * at(i - 1, m)) / c2;
        at(i, 0) = -c1 * c5 * at(i - 1, 0) / c2;
      }
      for (int m = mn; m >= 1; --m)
        at(j, m) = (c4 * at(j, m) - m * at(j, m - 1)) / c3;
      at(j, 0) = c4 * at(j, 0) / c3;
    }
    c1 = c2;
  }
  return C;
}

// N x N matrix applying d^m/dx^m along one axis, exact for polynomials of
// degree <= deg (stencil of deg+1 points, clamped at the boundary).
std::vector<cd> fd_matrix(const PhaseGrid& g, int order, int deg) {
  const int N = g.N;
  const int p = std::min(N, std::max(deg + 1, order + 1));
  std::vector<cd> M(static_cast<std::size_t>(N) * N, cd(0, 0));
  std::vector<double> nodes(p);
  for (int i = 0; i < N; ++i) {
    const int s = std::clamp(i - p / 2, 0, N - p);
    for (int k = 0; k < p; ++k) nodes[k] = g.point(s + k);
    const std::vector<double> W = fornberg(g.point(i), nodes, order);
    for (int k = 0; k < p; ++k)
      M[static_cast<std::size_t>(i) * N + (s + k)] =
          W[static_cast<std::size_t>(k) * (order + 1) + order];
  }
  return M;
}

// Exact tail sum_{k >= k_min} (ic Phi(D))^k a / k! for polynomial a:
// Phi(D)^k a = (-1)^k sum_{|alpha|=k} (k!/alpha!) d_x^alpha d_xi^alpha a,
// which vanishes once 2k exceeds the joint degree.
SymbolField poly_exponential_tail(const SymbolField& a, double c, int k_min) {
  const int n = a.grid.n;
  const int deg = a.poly_degree;
  const std::size_t N = a.grid.points_per_axis();
  SymbolField out = a;
  out.gen = nullptr;
  out.poly_degree = -1;
  std::fill(out.values.begin(), out.values.end(), cd(0, 0));
  std::vector<int> alpha(n, 0);
  // iterate over all alpha with |alpha| <= deg/2
  std::function<void(int, int)> walk = [&](int slot, int used) {
    if (slot == n) {
      const int k = used;
      if (k < k_min) return;
      // coefficient (ic)^k/k! * (-1)^k * k!/alpha! = (-ic)^k / alpha!
      cd coef = std::pow(cd(0, -c), k);
      for (int j = 0; j < n; ++j)
        for (int m = 2; m <= alpha[j]; ++m) coef /= static_cast<double>(m);
      std::vector<cd> v = a.values;
      std::vector<std::size_t> lens(2 * n, N);
      for (int j = 0; j < n; ++j) {
        if (alpha[j] == 0) continue;
        const std::vector<cd> D = fd_matrix(a.grid, alpha[j], deg);
        v = detail::apply_matrix_axis(v, lens, j, D, N);
        v = detail::apply_matrix_axis(v, lens, n + j, D, N);
      }
      for (std::size_t i = 0; i < v.size(); ++i) out.values[i] += coef * v[i];
      return;
    }
    for (int m = 0; used + m <= deg / 2; ++m) {
      alpha[slot] = m;
      walk(slot + 1, used + m);
    }
    alpha[slot] = 0;
  };
  walk(0, 0);
  return out;
}

}  // namespace

OperatorKernel build_kernel(const SymbolField& a, double t) {
  const PhaseGrid& g = a.grid;
  if (g.N % 2 != 0)
    throw std::invalid_argument("build_kernel: N must be even");
  check_finite(a.values, "build_kernel");
  const int n = g.n;
  const std::size_t N = g.points_per_axis();
  const double h = g.spacing();

  // Two xi quadratures over [-pi/h, pi/h), both of which make Op_t(1) the
  // exact identity:
  //  * symbols that decay at the xi truncation boundary get nodes at the
  //    doubled reciprocal resolution pi/(2L), so the kernel is 4L-periodic
  //    in the displacement x - y and the periodic image sits outside the
  //    physical box (no corner wrap-around in the kernel);
  //  * symbols without xi decay (constants, polynomials, ...) get the N
  //    grid frequencies themselves, which realizes the exact periodic DFT
  //    calculus: Op_t(a(xi)) is then diagonal on grid exponentials.
  double amax = 0.0, bmax = 0.0;
  {
    std::vector<std::size_t> idx(2 * n);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      const double m = std::abs(a.values[i]);
      amax = std::max(amax, m);
      decode(i, N, 2 * n, idx);
      for (int ax = n; ax < 2 * n; ++ax)
        if (idx[ax] == 0 || idx[ax] == N - 1) {
          bmax = std::max(bmax, m);
          break;
        }
    }
  }
  const bool decays = bmax <= 2e-2 * amax;
  const std::size_t Nf = decays ? 2 * N : N;
  const double df = 2.0 * M_PI / (Nf * h);
  std::vector<double> xi(Nf);
  for (std::size_t l = 0; l < Nf; ++l)
    xi[l] = (static_cast<double>(l) - static_cast<double>(Nf / 2)) * df;

  // per-axis displacement phases e^{i d h xi_l}, d = j - k
  std::vector<cd> ph((2 * N - 1) * Nf);
  for (std::size_t d = 0; d < 2 * N - 1; ++d) {
    const double u = (static_cast<double>(d) - static_cast<double>(N - 1)) * h;
    for (std::size_t l = 0; l < Nf; ++l)
      ph[d * Nf + l] = std::exp(cd(0, u * xi[l]));
  }

  long r = 0, q = 0;
  const bool tabulated = rationalize(t, 32, r, q) && r >= 0 && r <= q;
  if (!tabulated && !a.gen)
    throw std::invalid_argument(
        "build_kernel: sampled symbols need t = r/q with 0 <= r <= q <= 32; "
        "attach a generator for other t");

  std::vector<cd> table;
  std::size_t Nm = 0;
  if (tabulated) {
    table = midpoint_table(a, q, xi, decays);
    check_finite(table, "build_kernel");
    Nm = N * static_cast<std::size_t>(q);
  }

  const std::size_t rows = detail::ipow(N, n);
  const std::size_t cols = detail::ipow(Nf, n);
  const double scale = std::pow(df / (2.0 * M_PI), n);

  // frequency multi-indices, decoded once
  std::vector<std::size_t> li(cols * n);
  for (std::size_t c = 0; c < cols; ++c)
    decode(c, Nf, n, std::span(li).subspan(c * n, n));

  OperatorKernel ker;
  ker.grid = g;
  ker.t = t;
  ker.K.resize(static_cast<Eigen::Index>(rows),
               static_cast<Eigen::Index>(rows));
  std::vector<std::size_t> ji(n), ki(n);
  std::vector<double> X(2 * n);
  for (std::size_t j = 0; j < rows; ++j) {
    decode(j, N, n, ji);
    for (std::size_t k = 0; k < rows; ++k) {
      decode(k, N, n, ki);
      std::size_t mu = 0;
      if (tabulated) {
        for (int ax = 0; ax < n; ++ax)
          mu = mu * Nm + static_cast<std::size_t>(
                             q * static_cast<long>(ji[ax]) +
                             r * (static_cast<long>(ki[ax]) -
                                  static_cast<long>(ji[ax])));
      } else {
        for (int ax = 0; ax < n; ++ax)
          X[ax] = (1.0 - t) * g.point(static_cast<int>(ji[ax])) +
                  t * g.point(static_cast<int>(ki[ax]));
      }
      cd sum(0, 0);
      for (std::size_t c = 0; c < cols; ++c) {
        cd w(1, 0);
        for (int ax = 0; ax < n; ++ax) {
          const std::size_t d = N - 1 + ji[ax] - ki[ax];
          w *= ph[d * Nf + li[c * n + ax]];
        }
        cd val;
        if (tabulated) {
          val = table[mu * cols + c];
        } else {
          for (int ax = 0; ax < n; ++ax) X[n + ax] = xi[li[c * n + ax]];
          val = a.gen(X);
        }
        sum += val * w;
      }
      ker.K(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          scale * sum;
    }
  }
  if (!ker.K.allFinite())
    throw std::runtime_error("build_kernel: non-finite kernel entries");
  return ker;
}

FunctionField apply(const OperatorKernel& kernel, const FunctionField& f) {
  if (!(kernel.grid == f.grid))
    throw std::invalid_argument("apply: grid mismatch");
  const double w =
      kernel.scaled ? 1.0 : std::pow(kernel.grid.spacing(), kernel.grid.n);
  Eigen::Map<const Eigen::VectorXcd> fv(f.values.data(),
                                        static_cast<Eigen::Index>(f.size()));
  Eigen::VectorXcd out = w * (kernel.K * fv);
  FunctionField g = f;
  g.gen = nullptr;
  std::copy(out.data(), out.data() + out.size(), g.values.begin());
  return g;
}

SymbolField convert_quantization(const SymbolField& a, double s, double t) {
  const int n = a.grid.n;
  const double c = s - t;
  if (a.poly_degree >= 0) {
    // e^{ic Phi(D)} is a terminating series on polynomials; the exact sum
    // avoids the Gibbs pollution a non-periodic polynomial suffers under
    // the DFT multiplier.
    SymbolField out = poly_exponential_tail(a, c, 0);
    out.poly_degree = a.poly_degree;
    return out;
  }
  return fourier_multiplier(a, [n, c](std::span<const double> U) {
    double phi = 0.0;
    for (int j = 0; j < n; ++j) phi += U[j] * U[n + j];
    return std::exp(cd(0, c * phi));
  });
}

SymbolField expansion_remainder(const SymbolField& a, double t, int N_terms) {
  if (N_terms < 1)
    throw std::invalid_argument("expansion_remainder: N_terms >= 1 required");
  const int n = a.grid.n;

  if (a.poly_degree >= 0) {
    // Phi(D) = -sum_j d/dx_j d/dxi_j is nilpotent on polynomials; sum the
    // exact finite series with polynomial-exact finite differences.
    return poly_exponential_tail(a, t, N_terms);
  }

  const double pmax =
      n * std::pow(M_PI / a.grid.spacing(), 2) * std::abs(t);
  double term = 1.0, peak = 1.0;
  for (int k = 1; k < N_terms; ++k) {
    term *= pmax / k;
    peak = std::max(peak, term);
  }
  if (!std::isfinite(peak) || peak > 1e290)
    throw std::overflow_error(
        "expansion_remainder: truncated series overflows at this resolution; "
        "reduce N_terms");

  return fourier_multiplier(a, [n, t, N_terms](std::span<const double> U) {
    double phi = 0.0;
    for (int j = 0; j < n; ++j) phi += U[j] * U[n + j];
    const cd z(0, t * phi);
    cd partial(0, 0), term(1, 0);
    for (int k = 0; k < N_terms; ++k) {
      partial += term;
      term *= z / static_cast<double>(k + 1);
    }
    return std::exp(z) - partial;
  });
}

}  // namespace weylab
