#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <vector>

namespace weylab {

/// Symmetric positive-definite quadratic form on phase space, coordinates
/// ordered (z_1..z_n, zeta_1..zeta_n) with J = [[0, I], [-I, 0]].
struct QuadForm {
  Eigen::MatrixXd A;  // 2n x 2n

  int n() const { return static_cast<int>(A.rows()) / 2; }
  double operator()(const Eigen::VectorXd& Z) const {
    return Z.dot(A * Z);
  }
};

/// Pure map from a phase-space point to a QuadForm.
struct QuadFormField {
  int n = 1;
  std::function<QuadForm(const Eigen::VectorXd&)> eval;
};

struct SymplecticSpectrum {
  std::vector<double> lambda;  // descending, > 0
};

struct SlowReport {
  double C_est = 1.0;
  int violations = 0;  // pairs where the comparison degenerated
  int pairs = 0;
};

struct TemperateReport {
  double C_est = 1.0;
  double N_est = 0.0;
  int pairs = 0;
};

struct FeasibleVerdict {
  bool slow_ok = false;
  bool planck_ok = false;
  double C_est = 0.0;
  double max_planck = 0.0;
};

Eigen::MatrixXd symplectic_J(int n);

/// Validates symmetry (1e-12) and positive definiteness.
void validate(const QuadForm& g);

/// A^sigma = J^T A^{-1} J; warns on condition number beyond 1e12.
QuadForm dual_metric(const QuadForm& g);

/// lambda_j as positive square roots of the (doubled) eigenvalues of
/// -(J A)^2, computed via the symmetrized form A^{1/2} J A J^T A^{1/2}.
SymplecticSpectrum symplectic_eigenvalues(const QuadForm& g);

/// Planck's function: the largest symplectic eigenvalue.
double planck(const QuadForm& g);

/// Capacity Lambda_g = lambda_1 ... lambda_n = sqrt(det A).
double capacity(const QuadForm& g);

/// Fixed point of A <- (A + A^sigma)/2; all symplectic eigenvalues 1.
QuadForm symplectic_core(const QuadForm& g, double tol, int max_iter);

/// Deterministic sample of k points in [-L, L]^{2n}.
std::vector<Eigen::VectorXd> sample_box(int n, double L, int k,
                                        std::uint64_t seed);

/// Least C with C^{-1} g_Y <= g_X <= C g_Y over pairs (X, Y) with
/// g_X(Y - X) <= c, built from the sample points.
SlowReport slowly_varying_report(const QuadFormField& g,
                                 const std::vector<Eigen::VectorXd>& samples,
                                 double c);

/// Fit of g_Y(Z) <= C g_X(Z) (1 + g^sigma_Y(X - Y))^N over sampled pairs.
TemperateReport temperate_report(const QuadFormField& g,
                                 const std::vector<Eigen::VectorXd>& samples);

/// Weight variant: m(X) <= C m(Y) (1 + g^sigma_Y(X - Y))^N.
TemperateReport weight_temperate_report(
    const std::function<double(const Eigen::VectorXd&)>& m,
    const QuadFormField& g, const std::vector<Eigen::VectorXd>& samples);

/// Sampled feasibility: slowly varying and h_g <= 1.
FeasibleVerdict feasible_check(const QuadFormField& g,
                               const std::vector<Eigen::VectorXd>& samples,
                               double c);

}  // namespace weylab
