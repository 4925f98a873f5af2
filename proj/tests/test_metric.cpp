#include <doctest.h>

#include <cmath>

#include "weylab/metric.hpp"

using namespace weylab;

namespace {
QuadForm diag2(double a, double b) {
  QuadForm q;
  q.A = Eigen::MatrixXd::Zero(2, 2);
  q.A(0, 0) = a;
  q.A(1, 1) = b;
  return q;
}
}  // namespace

TEST_CASE("symplectic matrix and dual metric") {
  const Eigen::MatrixXd J = symplectic_J(2);
  CHECK((J * J + Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-15);
  QuadForm I;
  I.A = Eigen::MatrixXd::Identity(2, 2);
  CHECK((dual_metric(I).A - I.A).norm() < 1e-14);
  // A^sigma = J^T A^{-1} J swaps and inverts the diagonal
  const QuadForm d = dual_metric(diag2(4.0, 9.0));
  CHECK(d.A(0, 0) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(d.A(1, 1) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("symplectic eigenvalues, planck, capacity") {
  const QuadForm q = diag2(4.0, 9.0);
  CHECK(symplectic_eigenvalues(q).lambda[0] == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(planck(q) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(capacity(q) == doctest::Approx(6.0).epsilon(1e-12));
  // block direct sum in 4d: eigenvalues {sqrt(ab), sqrt(cd)} sorted ascending
  QuadForm q4;
  q4.A = Eigen::MatrixXd::Zero(4, 4);
  q4.A(0, 0) = 1.0;
  q4.A(1, 1) = 4.0;
  q4.A(2, 2) = 9.0;   // pairs with axis 0 under J
  q4.A(3, 3) = 16.0;  // pairs with axis 1
  const SymplecticSpectrum sp = symplectic_eigenvalues(q4);
  CHECK(sp.lambda[0] == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(sp.lambda[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(planck(q4) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(capacity(q4) == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("validate rejects non-SPD and odd-sized forms") {
  QuadForm bad;
  bad.A = Eigen::MatrixXd::Zero(2, 2);
  bad.A(0, 0) = 1.0;
  bad.A(1, 1) = -1.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  QuadForm odd;
  odd.A = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(validate(odd), std::invalid_argument);
}

TEST_CASE("symplectic core") {
  const QuadForm core = symplectic_core(diag2(4.0, 1.0), 1e-12, 60);
  CHECK(core.A(0, 0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(core.A(1, 1) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(std::abs(planck(core) - 1.0) < 1e-8);
  // a self-dual metric is a fixed point
  QuadForm I;
  I.A = Eigen::MatrixXd::Identity(2, 2);
  CHECK((symplectic_core(I, 1e-12, 5).A - I.A).norm() < 1e-12);
  CHECK_THROWS_AS(symplectic_core(diag2(4.0, 1.0), 1e-12, 1),
                  std::runtime_error);
}

TEST_CASE("sample_box is deterministic and in range") {
  const auto p1 = sample_box(2, 3.0, 25, 42);
  const auto p2 = sample_box(2, 3.0, 25, 42);
  REQUIRE(p1.size() == 25);
  for (std::size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i] == p2[i]);
    CHECK(p1[i].size() == 4);
    CHECK(p1[i].cwiseAbs().maxCoeff() <= 3.0);
  }
}

TEST_CASE("constant metrics are slowly varying and temperate") {
  QuadFormField g;
  g.n = 1;
  g.eval = [](const Eigen::VectorXd&) {
    QuadForm q;
    q.A = Eigen::MatrixXd::Identity(2, 2);
    return q;
  };
  const auto probes = sample_box(1, 4.0, 30, 5);
  const SlowReport sr = slowly_varying_report(g, probes, 1.0);
  CHECK(sr.violations == 0);
  CHECK(sr.C_est == doctest::Approx(1.0).epsilon(1e-10));
  const TemperateReport tr = temperate_report(g, probes);
  CHECK(tr.C_est == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tr.N_est == doctest::Approx(0.0).epsilon(1e-10));
  const FeasibleVerdict fv = feasible_check(g, probes, 1.0);
  CHECK(fv.slow_ok);
  CHECK(fv.planck_ok);
  CHECK(fv.max_planck == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constant weights are temperate with exponent zero") {
  QuadFormField g;
  g.n = 1;
  g.eval = [](const Eigen::VectorXd&) {
    QuadForm q;
    q.A = Eigen::MatrixXd::Identity(2, 2);
    return q;
  };
  const TemperateReport tr = weight_temperate_report(
      [](const Eigen::VectorXd&) { return 2.0; }, g, sample_box(1, 4.0, 30, 6));
  CHECK(tr.N_est == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(tr.C_est == doctest::Approx(1.0).epsilon(1e-10));
}
