#pragma once

#include "weylab/grid.hpp"
#include "weylab/metric.hpp"

namespace weylab {

/// Parameters of the class S^{r,s}_{rho,delta}; rho and delta have length
/// 2n with the xi-side exponents in slots 0..n-1 ("j") and the x-side
/// exponents in slots n..2n-1 ("n+j").
struct ClassSpec {
  double r = 0.0;
  double s = 0.0;
  std::vector<double> rho;
  std::vector<double> delta;

  int n() const { return static_cast<int>(rho.size()) / 2; }
};

void validate(const ClassSpec& spec);

/// Positive weight on phase space.
struct WeightField {
  int n = 1;
  std::function<double(const Eigen::VectorXd&)> eval;
};

/// Diagonal class metric: <x>^{-2 rho_{n+j}} <xi>^{2 delta_j} on the z-axes
/// and <x>^{2 delta_{n+j}} <xi>^{-2 rho_j} on the zeta-axes.
QuadFormField class_metric(const ClassSpec& spec);

/// Closed-form Planck function max_j <x>^{delta_{n+j}-rho_{n+j}}
/// <xi>^{delta_j-rho_j}.
WeightField class_planck(const ClassSpec& spec);

/// Closed-form Lambda_G = prod_j (<x>^{delta_{n+j}-rho_{n+j}}
/// <xi>^{delta_j-rho_j} + 1).
WeightField lambda_G(const ClassSpec& spec);

/// The defining weight m(x,xi) = <x>^s <xi>^r.
WeightField class_weight(const ClassSpec& spec);

/// k-th seminorm |a|_k^g at each probe: max over sampled g-unit directions
/// of the k-th directional derivative (finite differences on the generator
/// or the trigonometric interpolant).
std::vector<double> seminorm_estimate(const SymbolField& a,
                                      const QuadFormField& g, int k,
                                      const std::vector<Eigen::VectorXd>& probes);

struct MembershipReport {
  std::vector<double> per_k;  // sup over probes of |a|_k^g / m
  double total = 0.0;         // sum over k
};

MembershipReport membership_report(const SymbolField& a, const ClassSpec& spec,
                                   int N,
                                   const std::vector<Eigen::VectorXd>& probes);

enum class SymbolKind { Plain, Oscillatory, Truncated };

struct TestSymbolParams {
  double omega = 1.0;  // oscillation strength for the oscillatory kind
  double R = 1.5;      // support radius for the truncated kind
};

/// Generator-backed witness symbols: plain <x>^s <xi>^r, oscillatory
/// multiplies by e^{i omega <xi>}, truncated by a smooth bump in B_R(0).
SymbolField make_test_symbol(const PhaseGrid& grid, const ClassSpec& spec,
                             SymbolKind kind, const TestSymbolParams& params = {});

/// kappa_p = 2[2n(1/p - 1/2)] + 1 for p in [1,2), 0 for p >= 2.
int kappa(double p, int n);
/// kappa'_p = [2n(1/p - 1/2)] + 1 for p in [1,2), 0 at p = 2; p > 2 is a
/// domain error.
int kappa_prime(double p, int n);
/// n_p = [2n(1/p - 1/2)].
int n_p(double p, int n);

}  // namespace weylab
