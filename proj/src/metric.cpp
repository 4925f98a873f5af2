#include "weylab/metric.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace weylab {

namespace {

Eigen::MatrixXd sqrt_spd(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  return es.eigenvectors() *
         es.eigenvalues().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

// largest generalized eigenvalue of (B, A): max_Z B(Z)/A(Z)
double max_ratio(const Eigen::MatrixXd& B, const Eigen::MatrixXd& A) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(B, A);
  return es.eigenvalues().maxCoeff();
}

// least-squares slope fit of log r <= log C + N log w, then C adjusted so
// every sampled pair satisfies the bound
TemperateReport fit_bound(const std::vector<double>& r,
                          const std::vector<double>& w) {
  TemperateReport rep;
  rep.pairs = static_cast<int>(r.size());
  double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double x = std::log(w[i]);
    const double y = std::log(std::max(r[i], 1e-300));
    sxx += x * x;
    sxy += x * y;
    sx += x;
    sy += y;
  }
  const double m = static_cast<double>(r.size());
  const double den = m * sxx - sx * sx;
  double N = den > 1e-12 ? (m * sxy - sx * sy) / den : 0.0;
  N = std::max(0.0, N);
  double C = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    C = std::max(C, r[i] / std::pow(w[i], N));
  rep.C_est = std::max(C, 1.0);
  rep.N_est = N;
  return rep;
}

}  // namespace

Eigen::MatrixXd symplectic_J(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  J.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return J;
}

void validate(const QuadForm& g) {
  if (g.A.rows() != g.A.cols() || g.A.rows() % 2 != 0 || g.A.rows() == 0)
    throw std::invalid_argument("QuadForm: need a square 2n x 2n matrix");
  if ((g.A - g.A.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, g.A.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("QuadForm: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.A);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("QuadForm: matrix not positive definite");
}

QuadForm dual_metric(const QuadForm& g) {
  validate(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.A);
  const double cond =
      es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
  if (cond > 1e12)
    std::fprintf(stderr,
                 "dual_metric: warning: condition number %.3e exceeds 1e12\n",
                 cond);
  const Eigen::MatrixXd J = symplectic_J(g.n());
  QuadForm out;
  out.A = J.transpose() * g.A.inverse() * J;
  out.A = 0.5 * (out.A + out.A.transpose());
  return out;
}

SymplecticSpectrum symplectic_eigenvalues(const QuadForm& g) {
  validate(g);
  const int n = g.n();
  const Eigen::MatrixXd T = sqrt_spd(g.A);
  const Eigen::MatrixXd J = symplectic_J(n);
  const Eigen::MatrixXd K = T * J * T;  // skew-symmetric
  const Eigen::MatrixXd M = -(K * K);   // symmetric PSD, eigenvalues lambda^2 doubled
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()));
  SymplecticSpectrum out;
  for (int j = 0; j < n; ++j) {
    const double mu = es.eigenvalues()(2 * n - 1 - 2 * j);
    if (mu < -1e-10)
      throw std::runtime_error("symplectic_eigenvalues: negative eigenvalue");
    out.lambda.push_back(std::sqrt(std::max(mu, 0.0)));
  }
  return out;
}

double planck(const QuadForm& g) {
  return symplectic_eigenvalues(g).lambda.front();
}

double capacity(const QuadForm& g) {
  const SymplecticSpectrum s = symplectic_eigenvalues(g);
  double prod = 1.0;
  for (double l : s.lambda) prod *= l;
  return prod;
}

QuadForm symplectic_core(const QuadForm& g, double tol, int max_iter) {
  if (!(tol > 0.0))
    throw std::invalid_argument("symplectic_core: tol > 0 required");
  QuadForm cur = g;
  double res = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    QuadForm next;
    next.A = 0.5 * (cur.A + dual_metric(cur).A);
    res = (next.A - cur.A).cwiseAbs().maxCoeff();
    cur = next;
    if (res <= tol) return cur;
  }
  throw std::runtime_error("symplectic_core: no convergence in " +
                           std::to_string(max_iter) +
                           " iterations, residual " + std::to_string(res));
}

std::vector<Eigen::VectorXd> sample_box(int n, double L, int k,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-L, L);
  std::vector<Eigen::VectorXd> out(k, Eigen::VectorXd(2 * n));
  for (auto& X : out)
    for (int i = 0; i < 2 * n; ++i) X(i) = u(rng);
  return out;
}

SlowReport slowly_varying_report(const QuadFormField& g,
                                 const std::vector<Eigen::VectorXd>& samples,
                                 double c) {
  if (samples.empty())
    throw std::invalid_argument("slowly_varying_report: empty sample set");
  SlowReport rep;
  const std::size_t k = samples.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Eigen::VectorXd& X = samples[i];
    const QuadForm gX = g.eval(X);
    Eigen::VectorXd D = samples[(i + 1) % k] - X;
    if (D.norm() == 0.0) continue;
    const double q = gX(D);
    if (q <= 0.0) {
      ++rep.violations;
      continue;
    }
    for (double frac : {0.25, 0.5, 1.0}) {
      // step to g_X-distance^2 = c * frac
      const Eigen::VectorXd Y = X + D * std::sqrt(c * frac / q);
      const QuadForm gY = g.eval(Y);
      const double r = std::max(max_ratio(gY.A, gX.A), max_ratio(gX.A, gY.A));
      if (!std::isfinite(r)) {
        ++rep.violations;
        continue;
      }
      rep.C_est = std::max(rep.C_est, r);
      ++rep.pairs;
    }
  }
  return rep;
}

TemperateReport temperate_report(const QuadFormField& g,
                                 const std::vector<Eigen::VectorXd>& samples) {
  if (samples.empty())
    throw std::invalid_argument("temperate_report: empty sample set");
  std::vector<double> r, w;
  const std::size_t k = samples.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t off : {1, 2, 3}) {
      const Eigen::VectorXd& X = samples[i];
      const Eigen::VectorXd& Y = samples[(i + off) % k];
      const QuadForm gX = g.eval(X), gY = g.eval(Y);
      r.push_back(max_ratio(gY.A, gX.A));
      w.push_back(1.0 + dual_metric(gY)(X - Y));
    }
  return fit_bound(r, w);
}

TemperateReport weight_temperate_report(
    const std::function<double(const Eigen::VectorXd&)>& m,
    const QuadFormField& g, const std::vector<Eigen::VectorXd>& samples) {
  if (samples.empty())
    throw std::invalid_argument("weight_temperate_report: empty sample set");
  std::vector<double> r, w;
  const std::size_t k = samples.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t off : {1, 2, 3}) {
      const Eigen::VectorXd& X = samples[i];
      const Eigen::VectorXd& Y = samples[(i + off) % k];
      r.push_back(m(X) / m(Y));
      w.push_back(1.0 + dual_metric(g.eval(Y))(X - Y));
    }
  return fit_bound(r, w);
}

FeasibleVerdict feasible_check(const QuadFormField& g,
                               const std::vector<Eigen::VectorXd>& samples,
                               double c) {
  FeasibleVerdict v;
  const SlowReport slow = slowly_varying_report(g, samples, c);
  v.C_est = slow.C_est;
  v.slow_ok = slow.violations == 0 && std::isfinite(slow.C_est) &&
              slow.C_est < 1e6;
  v.max_planck = 0.0;
  for (const auto& X : samples)
    v.max_planck = std::max(v.max_planck, planck(g.eval(X)));
  v.planck_ok = v.max_planck <= 1.0 + 1e-12;
  return v;
}

}  // namespace weylab
