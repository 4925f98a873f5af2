#include "weylab/symbol_class.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace weylab {

namespace {

double jap(double t2) { return std::sqrt(1.0 + t2); }  // <v> from |v|^2

// <x> and <xi> of a phase point (x-block first)
void brackets(const Eigen::VectorXd& X, int n, double& bx, double& bxi) {
  bx = jap(X.head(n).squaredNorm());
  bxi = jap(X.tail(n).squaredNorm());
}

}  // namespace

void validate(const ClassSpec& spec) {
  if (spec.rho.empty() || spec.rho.size() % 2 != 0 ||
      spec.rho.size() != spec.delta.size())
    throw std::invalid_argument(
        "ClassSpec: rho and delta must both have length 2n");
  for (std::size_t j = 0; j < spec.rho.size(); ++j) {
    if (spec.rho[j] > 1.0)
      throw std::invalid_argument("ClassSpec: rho <= 1 required");
    if (spec.delta[j] < 0.0)
      throw std::invalid_argument("ClassSpec: delta >= 0 required");
  }
}

QuadFormField class_metric(const ClassSpec& spec) {
  validate(spec);
  const int n = spec.n();
  QuadFormField g;
  g.n = n;
  g.eval = [spec, n](const Eigen::VectorXd& X) {
    double bx, bxi;
    brackets(X, n, bx, bxi);
    QuadForm q;
    q.A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
      q.A(j, j) = std::pow(bx, -2.0 * spec.rho[n + j]) *
                  std::pow(bxi, 2.0 * spec.delta[j]);
      q.A(n + j, n + j) = std::pow(bx, 2.0 * spec.delta[n + j]) *
                          std::pow(bxi, -2.0 * spec.rho[j]);
    }
    return q;
  };
  return g;
}

WeightField class_planck(const ClassSpec& spec) {
  validate(spec);
  const int n = spec.n();
  WeightField w;
  w.n = n;
  w.eval = [spec, n](const Eigen::VectorXd& X) {
    double bx, bxi;
    brackets(X, n, bx, bxi);
    double h = 0.0;
    for (int j = 0; j < n; ++j)
      h = std::max(h, std::pow(bx, spec.delta[n + j] - spec.rho[n + j]) *
                          std::pow(bxi, spec.delta[j] - spec.rho[j]));
    return h;
  };
  return w;
}

WeightField lambda_G(const ClassSpec& spec) {
  validate(spec);
  const int n = spec.n();
  WeightField w;
  w.n = n;
  w.eval = [spec, n](const Eigen::VectorXd& X) {
    double bx, bxi;
    brackets(X, n, bx, bxi);
    double prod = 1.0;
    for (int j = 0; j < n; ++j)
      prod *= std::pow(bx, spec.delta[n + j] - spec.rho[n + j]) *
                  std::pow(bxi, spec.delta[j] - spec.rho[j]) +
              1.0;
    return prod;
  };
  return w;
}

WeightField class_weight(const ClassSpec& spec) {
  validate(spec);
  const int n = spec.n();
  WeightField w;
  w.n = n;
  w.eval = [spec, n](const Eigen::VectorXd& X) {
    double bx, bxi;
    brackets(X, n, bx, bxi);
    return std::pow(bx, spec.s) * std::pow(bxi, spec.r);
  };
  return w;
}

std::vector<double> seminorm_estimate(
    const SymbolField& a, const QuadFormField& g, int k,
    const std::vector<Eigen::VectorXd>& probes) {
  if (k < 0) throw std::invalid_argument("seminorm_estimate: k >= 0");
  if (!a.gen && k > 4)
    throw std::invalid_argument(
        "seminorm_estimate: k > 4 requires a generator");
  const int d = a.dims();
  // deterministic direction sample on the Euclidean unit sphere
  const int dirs = std::max(64 * std::max(k, 1), 64);
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXd> U(dirs, Eigen::VectorXd(d));
  for (auto& u : U) {
    do {
      for (int i = 0; i < d; ++i) u(i) = gauss(rng);
    } while (u.norm() < 1e-8);
    u.normalize();
  }
  // binomial coefficients for the central k-th difference
  std::vector<double> binom(k + 1, 1.0);
  for (int i = 1; i <= k; ++i) binom[i] = binom[i - 1] * (k - i + 1) / i;
  const double tau = 1e-2;  // dimensionless step along the g-unit direction

  std::vector<double> out;
  out.reserve(probes.size());
  std::vector<double> P(d);
  for (const auto& X : probes) {
    // map Euclidean directions to the g_X-unit sphere: D = A^{-1/2} u
    const QuadForm q = g.eval(X);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q.A);
    const Eigen::MatrixXd B = es.eigenvectors() *
                              es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                              es.eigenvectors().transpose();
    double best = 0.0;
    for (const auto& u : U) {
      const Eigen::VectorXd D = B * u;
      cd acc(0, 0);
      for (int i = 0; i <= k; ++i) {
        const double t = (0.5 * k - i) * tau;
        for (int c = 0; c < d; ++c) P[c] = X(c) + t * D(c);
        const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
        acc += sgn * binom[i] * a.value_at(P);
      }
      best = std::max(best, std::abs(acc) / std::pow(tau, k));
    }
    out.push_back(best);
  }
  return out;
}

MembershipReport membership_report(const SymbolField& a, const ClassSpec& spec,
                                   int N,
                                   const std::vector<Eigen::VectorXd>& probes) {
  validate(spec);
  const QuadFormField g = class_metric(spec);
  const WeightField m = class_weight(spec);
  MembershipReport rep;
  for (int k = 0; k <= N; ++k) {
    const std::vector<double> vals = seminorm_estimate(a, g, k, probes);
    double sup = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i)
      sup = std::max(sup, vals[i] / m.eval(probes[i]));
    rep.per_k.push_back(sup);
    rep.total += sup;
  }
  return rep;
}

SymbolField make_test_symbol(const PhaseGrid& grid, const ClassSpec& spec,
                             SymbolKind kind, const TestSymbolParams& params) {
  validate(spec);
  if (grid.n != spec.n())
    throw std::invalid_argument("make_test_symbol: grid/spec dimension mismatch");
  const int n = grid.n;
  const double r = spec.r, s = spec.s;
  const double omega = params.omega, R = params.R;
  Generator gen;
  switch (kind) {
    case SymbolKind::Plain:
      gen = [n, r, s](std::span<const double> X) {
        double x2 = 0.0, xi2 = 0.0;
        for (int j = 0; j < n; ++j) {
          x2 += X[j] * X[j];
          xi2 += X[n + j] * X[n + j];
        }
        return cd(std::pow(jap(x2), s) * std::pow(jap(xi2), r), 0.0);
      };
      break;
    case SymbolKind::Oscillatory:
      gen = [n, r, s, omega](std::span<const double> X) {
        double x2 = 0.0, xi2 = 0.0;
        for (int j = 0; j < n; ++j) {
          x2 += X[j] * X[j];
          xi2 += X[n + j] * X[n + j];
        }
        const double m = std::pow(jap(x2), s) * std::pow(jap(xi2), r);
        return m * std::exp(cd(0.0, omega * jap(xi2)));
      };
      break;
    case SymbolKind::Truncated:
      gen = [n, r, s, R](std::span<const double> X) {
        double x2 = 0.0, xi2 = 0.0;
        for (int j = 0; j < n; ++j) {
          x2 += X[j] * X[j];
          xi2 += X[n + j] * X[n + j];
        }
        const double t2 = (x2 + xi2) / (R * R);
        if (t2 >= 1.0) return cd(0.0, 0.0);
        const double bump = std::exp(-t2 / (1.0 - t2));
        return cd(std::pow(jap(x2), s) * std::pow(jap(xi2), r) * bump, 0.0);
      };
      break;
    default:
      throw std::invalid_argument("make_test_symbol: unknown kind");
  }
  return make_symbol(grid, std::move(gen));
}

namespace {
int int_part(double x) {
  // integer part with a guard against 0.9999999... representation error
  return static_cast<int>(std::floor(x + 1e-9));
}
}  // namespace

int kappa(double p, int n) {
  if (!(p >= 1.0)) throw std::invalid_argument("kappa: p >= 1 required");
  if (p >= 2.0) return 0;
  return 2 * int_part(2.0 * n * (1.0 / p - 0.5)) + 1;
}

int kappa_prime(double p, int n) {
  if (!(p >= 1.0)) throw std::invalid_argument("kappa_prime: p >= 1 required");
  if (p > 2.0)
    throw std::domain_error("kappa_prime: defined for p in [1,2] only");
  if (p == 2.0) return 0;
  return int_part(2.0 * n * (1.0 / p - 0.5)) + 1;
}

int n_p(double p, int n) {
  if (!(p >= 1.0)) throw std::invalid_argument("n_p: p >= 1 required");
  return int_part(2.0 * n * (1.0 / p - 0.5));
}

}  // namespace weylab
