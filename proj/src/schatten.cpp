#include "weylab/schatten.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <stdexcept>

namespace weylab {

SingularSpectrum singular_values(const OperatorKernel& kernel) {
  if (!kernel.K.allFinite())
    throw std::invalid_argument("singular_values: kernel has non-finite entries");
  const double scale =
      kernel.scaled ? 1.0 : std::pow(kernel.grid.spacing(), kernel.grid.n);
  const Eigen::MatrixXcd S = scale * kernel.K;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(S,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("singular_values: decomposition failed at size " +
                             std::to_string(S.rows()));
  SingularSpectrum out;
  out.scale = scale;
  out.sigma.assign(svd.singularValues().data(),
                   svd.singularValues().data() + svd.singularValues().size());
  const Eigen::MatrixXcd R =
      svd.matrixU() * svd.singularValues().asDiagonal() *
      svd.matrixV().adjoint();
  out.residual = (S - R).cwiseAbs().maxCoeff();
  const double s1 = out.sigma.empty() ? 0.0 : out.sigma.front();
  if (s1 > 0.0 && out.residual > 1e-10 * s1 * S.rows())
    throw std::runtime_error("singular_values: reconstruction residual " +
                             std::to_string(out.residual) + " at size " +
                             std::to_string(S.rows()));
  return out;
}

double schatten_norm(const SingularSpectrum& spec, double p) {
  if (!(p >= 1.0))
    throw std::invalid_argument("schatten_norm: p >= 1 required");
  if (spec.sigma.empty()) return 0.0;
  if (std::isinf(p)) return spec.sigma.front();
  // scale by sigma_1 to avoid overflow/underflow of sigma^p
  const double s1 = spec.sigma.front();
  if (s1 == 0.0) return 0.0;
  double sum = 0.0;
  for (double s : spec.sigma) sum += std::pow(s / s1, p);
  return s1 * std::pow(sum, 1.0 / p);
}

double hs_identity_gap(const SymbolField& a) {
  const double l2 = lp_norm(a, 2.0);
  if (l2 == 0.0)
    throw std::invalid_argument("hs_identity_gap: zero symbol");
  const double rhs = std::pow(2.0 * M_PI, -a.grid.n / 2.0) * l2;
  const double s2 = schatten_norm(singular_values(build_kernel(a, 0.5)), 2.0);
  return std::abs(s2 - rhs) / rhs;
}

double on_sequence_value(const OperatorKernel& kernel, double p,
                         const Eigen::MatrixXcd& F, const Eigen::MatrixXcd& G) {
  if (!(p >= 1.0))
    throw std::invalid_argument("on_sequence_value: p >= 1 required");
  if (F.rows() != kernel.K.rows() || F.cols() != G.cols() ||
      G.rows() != kernel.K.rows())
    throw std::invalid_argument("on_sequence_value: shape mismatch");
  const double h = kernel.grid.spacing();
  const double scale =
      kernel.scaled ? 1.0 : std::pow(h, kernel.grid.n);
  // discrete L^2 pairing (S f_j, g_j) = h^n g_j^H (scale K) f_j; the columns
  // are taken orthonormal in the quadrature inner product, so the quadrature
  // weights of the frames cancel against h^n here when the caller supplies
  // Euclidean-orthonormal columns.
  double sum = 0.0, top = 0.0;
  for (Eigen::Index j = 0; j < F.cols(); ++j) {
    const double v =
        std::abs(cd(G.col(j).adjoint() * (scale * (kernel.K * F.col(j)))));
    top = std::max(top, v);
    sum += std::isinf(p) ? 0.0 : std::pow(v, p);
  }
  return std::isinf(p) ? top : std::pow(sum, 1.0 / p);
}

double on_sequence_lower_bound(const OperatorKernel& kernel, double p,
                               int trials, std::uint64_t seed) {
  if (trials < 1)
    throw std::invalid_argument("on_sequence_lower_bound: trials >= 1");
  const Eigen::Index m = kernel.K.rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto haar = [&]() {
    Eigen::MatrixXcd Z(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        Z(i, j) = cd(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(m, m);
    return Q;
  };
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Eigen::MatrixXcd F = haar();
    const Eigen::MatrixXcd G = haar();
    best = std::max(best, on_sequence_value(kernel, p, F, G));
  }
  return best;
}

double lone_infinity_bound_gap(const SymbolField& a) {
  const double s1 = schatten_norm(singular_values(build_kernel(a, 0.5)), 1.0);
  const double linf = lp_norm(a, kInfNorm);
  return std::pow(2.0, a.grid.n) * s1 - linf;
}

}  // namespace weylab
