#include <doctest.h>

#include <cmath>

#include "weylab/families.hpp"
#include "weylab/metric.hpp"
#include "weylab/symbol_class.hpp"

using namespace weylab;

namespace {
ClassSpec spec1(double r, double s, double rho, double delta) {
  ClassSpec cs;
  cs.r = r;
  cs.s = s;
  cs.rho = {rho, rho};
  cs.delta = {delta, delta};
  return cs;
}
double bra(double v) { return std::sqrt(1.0 + v * v); }  // <v>
}  // namespace

TEST_CASE("class metric, planck, Lambda_G, weight: closed forms") {
  const ClassSpec cs = spec1(0.0, 0.0, 0.8, 0.3);
  Eigen::VectorXd X(2);
  X << 3.0, -4.0;
  const double bx = bra(3.0), bxi = bra(-4.0);
  const QuadForm G = class_metric(cs).eval(X);
  CHECK(G.A(0, 0) ==
        doctest::Approx(std::pow(bx, -1.6) * std::pow(bxi, 0.6)).epsilon(1e-12));
  CHECK(G.A(1, 1) ==
        doctest::Approx(std::pow(bx, 0.6) * std::pow(bxi, -1.6)).epsilon(1e-12));
  const double hg = std::pow(bx, -0.5) * std::pow(bxi, -0.5);
  CHECK(class_planck(cs).eval(X) == doctest::Approx(hg).epsilon(1e-12));
  CHECK(planck(G) == doctest::Approx(hg).epsilon(1e-10));
  CHECK(lambda_G(cs).eval(X) == doctest::Approx(hg + 1.0).epsilon(1e-12));
  const ClassSpec cw = spec1(2.0, -1.0, 1.0, 0.0);
  CHECK(class_weight(cw).eval(X) ==
        doctest::Approx(std::pow(bxi, 2.0) / bx).epsilon(1e-12));
}

TEST_CASE("validate rejects malformed specs") {
  ClassSpec bad = spec1(0, 0, 0.5, 0.2);
  bad.delta.pop_back();
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  ClassSpec neg = spec1(0, 0, 0.5, -0.1);
  CHECK_THROWS_AS(validate(neg), std::invalid_argument);
  ClassSpec big = spec1(0, 0, 1.2, 0.0);
  CHECK_THROWS_AS(validate(big), std::invalid_argument);
}

TEST_CASE("threshold integers") {
  CHECK(kappa(1.0, 1) == 3);
  CHECK(kappa_prime(1.0, 1) == 2);
  CHECK(n_p(1.0, 1) == 1);
  CHECK(kappa(2.0, 1) == 0);
  CHECK(kappa_prime(2.0, 1) == 0);
  CHECK(kappa(4.0, 2) == 0);
  CHECK(n_p(1.0, 3) == 3);
  CHECK_THROWS_AS(kappa_prime(2.5, 1), std::domain_error);
  for (int n = 1; n <= 4; ++n)
    for (int i = 0; i < 101; ++i) {
      const double p = 1.0 + 0.0099 * i;  // stays below 2
      CHECK(2 * kappa_prime(p, n) == kappa(p, n) + 1);
    }
}

TEST_CASE("test symbols realize their class data") {
  const PhaseGrid g{1, 8.0, 64};
  const ClassSpec cs = spec1(-2.0, -2.0, 1.0, 0.0);
  const SymbolField plain = make_test_symbol(g, cs, SymbolKind::Plain);
  // |a(x, xi)| = <x>^{-2} <xi>^{-2}: check a few values and the L1 norm
  Eigen::VectorXd X(2);
  std::array<double, 2> coords{1.5, -2.5};
  CHECK(std::abs(plain.value_at(coords) -
                 cd(std::pow(bra(1.5), -2.0) * std::pow(bra(-2.5), -2.0), 0.0)) <
        1e-12);
  const double truncated_mass = 4.0 * std::atan(8.0) * std::atan(8.0);
  CHECK(lp_norm(plain, 1.0) ==
        doctest::Approx(truncated_mass).epsilon(1e-2));

  const SymbolField osc =
      make_test_symbol(g, cs, SymbolKind::Oscillatory, {2.0, 1.5});
  for (std::size_t i = 0; i < osc.values.size(); ++i)
    CHECK(std::abs(std::abs(osc.values[i]) - std::abs(plain.values[i])) <
          1e-12);

  const SymbolField trunc =
      make_test_symbol(g, cs, SymbolKind::Truncated, {1.0, 1.5});
  CHECK(linf_tail(trunc, 1.5) == 0.0);
}

TEST_CASE("membership report is finite and scales with the symbol") {
  const PhaseGrid g{1, 8.0, 64};
  const ClassSpec cs = spec1(0.0, 0.0, 1.0, 0.0);
  const SymbolField a = gaussian_symbol(g);
  const auto probes = sample_box(1, 4.0, 15, 3);
  const MembershipReport r1 = membership_report(a, cs, 2, probes);
  REQUIRE(r1.per_k.size() == 3);
  CHECK(r1.total > 0.0);
  CHECK(std::isfinite(r1.total));
  SymbolField a2 = a;
  for (cd& v : a2.values) v *= 2.0;
  a2.gen = nullptr;
  const MembershipReport r2 = membership_report(a2, cs, 2, probes);
  CHECK(r2.total == doctest::Approx(2.0 * r1.total).epsilon(1e-6));
}

TEST_CASE("symbol families are deterministic and carry their flags") {
  const PhaseGrid g{1, 8.0, 64};
  const SymbolField a = random_band_limited(g, 9);
  const SymbolField b = random_band_limited(g, 9);
  CHECK(a.values == b.values);
  CHECK(random_band_limited(g, 10).values != a.values);
  CHECK(polynomial_symbol(g, 3, 1).poly_degree == 3);
  CHECK(lp_norm(bump_symbol(g, 2.0, 0), std::numeric_limits<double>::infinity()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const FunctionField f = random_function(g, 5);
  CHECK(f.values.size() == 64);
  CHECK(lp_norm(f, 2.0) > 0.0);
}
