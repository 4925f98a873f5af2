#include "weylab/harmonic.hpp"

#include <cmath>
#include <stdexcept>

#include "weylab/fourier.hpp"
#include "weylab/schatten.hpp"

namespace weylab {

namespace {

// antiderivative of a local-variable polynomial with constant term c0
std::vector<double> antiderive(const std::vector<double>& p, double c0) {
  std::vector<double> out(p.size() + 1);
  out[0] = c0;
  for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] = p[k] / (k + 1);
  return out;
}

double poly_eval(const std::vector<double>& p, double u) {
  double v = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) v = v * u + p[k];
  return v;
}

std::vector<int> first_multi(int d) { return std::vector<int>(d, 0); }

// enumerate alpha with |alpha| = N over d slots
void multi_indices(int d, int N, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(d, 0);
  std::function<void(int, int)> walk = [&](int slot, int left) {
    if (slot == d - 1) {
      cur[slot] = left;
      out.push_back(cur);
      return;
    }
    for (int m = 0; m <= left; ++m) {
      cur[slot] = m;
      walk(slot + 1, left - m);
    }
  };
  if (d > 0) walk(0, N);
}

// spectral partial derivative d^alpha via the Fourier multiplier (i u)^alpha
SymbolField spectral_derivative(const SymbolField& a,
                                const std::vector<int>& alpha) {
  return fourier_multiplier(a, [alpha](std::span<const double> U) {
    cd m(1, 0);
    for (std::size_t c = 0; c < alpha.size(); ++c)
      for (int k = 0; k < alpha[c]; ++k) m *= cd(0, U[c]);
    return m;
  });
}

}  // namespace

double BSpline::eval(double t) const {
  if (t < 0.0 || t >= static_cast<double>(j)) return 0.0;
  const int i = std::min(static_cast<int>(t), j - 1);
  return poly_eval(pieces[i], t - i);
}

double BSpline::integral() const {
  double s = 0.0;
  for (const auto& p : pieces)
    for (std::size_t k = 0; k < p.size(); ++k) s += p[k] / (k + 1);
  return s;
}

BSpline make_bspline(int j) {
  if (j < 1) throw std::invalid_argument("make_bspline: order >= 1 required");
  BSpline H;
  H.j = 1;
  H.pieces = {{1.0}};
  for (int order = 1; order < j; ++order) {
    // antiderivative pieces A_i on [i, i+1), continuous, A(0) = 0
    std::vector<std::vector<double>> A(order);
    double c = 0.0;
    for (int i = 0; i < order; ++i) {
      A[i] = antiderive(H.pieces[i], c);
      c = poly_eval(A[i], 1.0);
    }
    // H_{order+1} piece i = A_i - A_{i-1}, with A_{-1} = 0, A_order = total
    std::vector<std::vector<double>> next(order + 1);
    for (int i = 0; i <= order; ++i) {
      std::vector<double> hi =
          i < order ? A[i] : std::vector<double>{c};  // constant total mass
      std::vector<double> lo =
          i > 0 ? A[i - 1] : std::vector<double>{0.0};
      std::vector<double> piece(std::max(hi.size(), lo.size()), 0.0);
      for (std::size_t k = 0; k < hi.size(); ++k) piece[k] += hi[k];
      for (std::size_t k = 0; k < lo.size(); ++k) piece[k] -= lo[k];
      next[i] = std::move(piece);
    }
    H.pieces = std::move(next);
    H.j = order + 1;
  }
  return H;
}

cd difference_op(const std::function<cd(double)>& f, double h, int j,
                 double x) {
  if (j < 1) throw std::invalid_argument("difference_op: j >= 1 required");
  cd s(0, 0);
  double binom = 1.0;
  for (int i = 0; i <= j; ++i) {
    const double sgn = ((j - i) % 2 == 0) ? 1.0 : -1.0;
    s += sgn * binom * f(x + i * h);
    binom = binom * (j - i) / (i + 1);
  }
  return s;
}

cd difference_op(const std::function<cd(const Eigen::VectorXd&)>& f,
                 const Eigen::VectorXd& h, int j, const Eigen::VectorXd& x) {
  if (j < 1) throw std::invalid_argument("difference_op: j >= 1 required");
  cd s(0, 0);
  double binom = 1.0;
  for (int i = 0; i <= j; ++i) {
    const double sgn = ((j - i) % 2 == 0) ? 1.0 : -1.0;
    s += sgn * binom * f(x + i * h);
    binom = binom * (j - i) / (i + 1);
  }
  return s;
}

RatioReport derivative_bound_report(const std::function<double(double, int)>& f,
                                    double r, DerivativeBound kind) {
  if (!(r > 0.0))
    throw std::invalid_argument("derivative_bound_report: r > 0 required");
  const int samples = 400;
  RatioReport rep;
  if (kind == DerivativeBound::Fderest) {
    double m0 = 0.0, m2 = 0.0;
    for (int i = 0; i <= samples; ++i) {
      const double t = r * i / samples;
      m0 = std::max(m0, std::abs(f(t, 0)));
      m2 = std::max(m2, std::abs(f(t, 2)));
    }
    rep.lhs = std::abs(f(0.0, 1));
    rep.rhs = 4.0 * (1.0 / r + 1.0) * (m0 + m2);
  } else {
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (int i = 0; i <= samples; ++i) {
      const double t = -r + 2.0 * r * i / samples;
      m0 = std::max(m0, std::abs(f(t, 0)));
      m1 = std::max(m1, std::abs(f(t, 1)));
      m2 = std::max(m2, std::abs(f(t, 2)));
    }
    rep.lhs = m1;
    rep.rhs = m0 + m2;
  }
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

double sobolev_seminorm(const SymbolField& a, int N, double p, double box) {
  if (!(p >= 1.0))
    throw std::invalid_argument("sobolev_seminorm: p >= 1 required");
  const int d = a.dims();
  std::vector<std::vector<int>> alphas;
  multi_indices(d, N, alphas);
  const double w = std::pow(a.grid.spacing(), d);
  double total = 0.0;
  std::vector<double> X(d);
  for (const auto& alpha : alphas) {
    const SymbolField da = N == 0 ? a : spectral_derivative(a, alpha);
    double acc = 0.0;
    for (std::size_t i = 0; i < da.values.size(); ++i) {
      da.coords(i, X);
      bool in = true;
      for (double v : X)
        if (std::abs(v) > box) in = false;
      if (!in) continue;
      const double m = std::abs(da.values[i]);
      if (std::isinf(p))
        acc = std::max(acc, m);
      else
        acc += std::pow(m, p);
    }
    total += std::isinf(p) ? acc : std::pow(w * acc, 1.0 / p);
  }
  return total;
}

SymbolField sup_envelope(const SymbolField& a, int N) {
  const int d = a.dims();
  const int n = a.grid.N;
  // pointwise max of |d^alpha a| over |alpha| = N
  std::vector<std::vector<int>> alphas;
  multi_indices(d, N, alphas);
  std::vector<double> E(a.values.size(), 0.0);
  for (const auto& alpha : alphas) {
    const SymbolField da = N == 0 ? a : spectral_derivative(a, alpha);
    for (std::size_t i = 0; i < E.size(); ++i)
      E[i] = std::max(E[i], std::abs(da.values[i]));
  }
  // offsets within the Euclidean unit ball
  const int reach = static_cast<int>(std::floor(1.0 / a.grid.spacing()));
  std::vector<std::vector<int>> offsets;
  std::vector<int> cur(d, 0);
  std::function<void(int, double)> walk = [&](int slot, double used) {
    if (slot == d) {
      offsets.push_back(cur);
      return;
    }
    for (int o = -reach; o <= reach; ++o) {
      const double r2 = used + std::pow(o * a.grid.spacing(), 2);
      if (r2 > 1.0) continue;
      cur[slot] = o;
      walk(slot + 1, r2);
    }
    cur[slot] = 0;
  };
  walk(0, 0.0);

  SymbolField out = a;
  out.gen = nullptr;
  out.poly_degree = -1;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < E.size(); ++i) {
    std::size_t rem = i;
    for (int c = d - 1; c >= 0; --c) {
      idx[c] = rem % n;
      rem /= n;
    }
    double best = 0.0;
    for (const auto& o : offsets) {
      std::size_t flat = 0;
      for (int c = 0; c < d; ++c) {
        const int k = (static_cast<int>(idx[c]) + o[c] % n + n) % n;
        flat = flat * n + static_cast<std::size_t>(k);
      }
      best = std::max(best, E[flat]);
    }
    out.values[i] = cd(best, 0.0);
  }
  return out;
}

double modulation_norm(const SymbolField& f, double p,
                       const SymbolField& window) {
  if (!(p >= 1.0))
    throw std::invalid_argument("modulation_norm: p >= 1 required");
  if (!(f.grid == window.grid))
    throw std::invalid_argument("modulation_norm: grid mismatch");
  if (std::abs(lp_norm(window, 2.0) - 1.0) > 1e-8)
    throw std::invalid_argument("modulation_norm: window must have unit L2 norm");
  const int d = f.dims();
  const std::size_t N = f.grid.points_per_axis();
  const std::size_t total = f.values.size();
  const double wspace = std::pow(f.grid.spacing(), d);
  const double wfreq = std::pow(f.grid.freq_spacing(), d);

  std::vector<std::size_t> kidx(d);
  std::vector<cd> buf(total);
  double acc = 0.0, top = 0.0;
  for (std::size_t shift = 0; shift < total; ++shift) {
    std::size_t rem = shift;
    for (int c = d - 1; c >= 0; --c) {
      kidx[c] = rem % N;
      rem /= N;
    }
    // f(x) * conj(window(x - k)) with periodic shift
    for (std::size_t i = 0; i < total; ++i) {
      std::size_t r = i, flat = 0;
      for (int c = d - 1; c >= 0; --c) {
        const std::size_t ic = r % N;
        r /= N;
        const std::size_t sc = (ic + N - kidx[c]) % N;
        // rebuild row-major source index of the shifted window
        flat += sc * detail::ipow(N, d - 1 - c);
      }
      buf[i] = f.values[i] * std::conj(window.values[flat]);
    }
    detail::centered_dft(f.grid, d, buf, FourierDirection::Forward);
    for (const cd& v : buf) {
      const double m = std::abs(v);
      top = std::max(top, m);
      if (!std::isinf(p)) acc += std::pow(m, p);
    }
  }
  if (std::isinf(p)) return top;
  return std::pow(wspace * wfreq * acc, 1.0 / p);
}

SymbolField gaussian_window(const PhaseGrid& grid, double width) {
  const double c = 1.0 / (2.0 * width * width);
  SymbolField w = make_symbol(grid, [c](std::span<const double> X) {
    double r2 = 0.0;
    for (double v : X) r2 += v * v;
    return cd(std::exp(-c * r2), 0.0);
  });
  const double nrm = lp_norm(w, 2.0);
  for (cd& v : w.values) v /= nrm;
  w.gen = nullptr;
  return w;
}

RatioReport bernstein_gap(const SymbolField& a, double p, double q, int N) {
  if (linf_tail(a, 1.0) != 0.0)
    throw std::invalid_argument("bernstein_gap: symbol must be supported in B_1(0)");
  RatioReport rep;
  rep.lhs = schatten_norm(singular_values(build_kernel(a, 0.5)), p);
  if (N == 0) {
    rep.rhs = lp_norm(a, q);
  } else {
    const int d = a.dims();
    for (int c = 0; c < d; ++c) {
      std::vector<int> alpha(d, 0);
      alpha[c] = N;
      rep.rhs += lp_norm(spectral_derivative(a, alpha), q);
    }
  }
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

RatioReport mp_schatten_gap(const SymbolField& a, double p) {
  if (!(p >= 1.0 && p <= 2.0))
    throw std::invalid_argument("mp_schatten_gap: p in [1,2] required");
  RatioReport rep;
  if (lp_norm(a, 2.0) == 0.0) return rep;
  rep.lhs = schatten_norm(singular_values(build_kernel(a, 0.5)), p);
  rep.rhs = modulation_norm(a, p, gaussian_window(a.grid));
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

}  // namespace weylab
