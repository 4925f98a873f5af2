#include <doctest.h>

#include <cmath>

#include "weylab/families.hpp"
#include "weylab/harmonic.hpp"

using namespace weylab;

TEST_CASE("B-splines: values, pieces, integrals, support") {
  const BSpline H1 = make_bspline(1);
  CHECK(H1.eval(0.5) == 1.0);
  CHECK(H1.eval(-0.1) == 0.0);
  CHECK(H1.eval(1.0) == 0.0);

  const BSpline H2 = make_bspline(2);
  CHECK(H2.eval(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(H2.eval(0.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(H2.eval(1.75) == doctest::Approx(0.25).epsilon(1e-15));

  // quadratic B-spline pieces: t^2/2, 1/2 + t - t^2, 1/2 - t + t^2/2
  const BSpline H3 = make_bspline(3);
  REQUIRE(H3.pieces.size() == 3);
  CHECK(H3.pieces[0] == std::vector<double>{0.0, 0.0, 0.5});
  CHECK(H3.pieces[1] == std::vector<double>{0.5, 1.0, -1.0});
  CHECK(H3.pieces[2] == std::vector<double>{0.5, -1.0, 0.5});

  for (int j = 1; j <= 8; ++j) {
    const BSpline H = make_bspline(j);
    CHECK(std::abs(H.integral() - 1.0) <= 1e-12);
    CHECK(H.eval(static_cast<double>(j)) == 0.0);
    CHECK(bspline_eval(j, 0.5 * j) > 0.0);
  }
  CHECK_THROWS_AS(make_bspline(0), std::invalid_argument);
}

TEST_CASE("difference operators annihilate low-degree polynomials") {
  for (int j = 1; j <= 4; ++j)
    for (int m = 0; m < j; ++m) {
      const cd v = difference_op(
          [m](double t) { return cd(std::pow(t, m), 0.0); }, 0.37, j, 0.9);
      CHECK(std::abs(v) < 1e-12);
    }
  // leading coefficient: T^j_h t^j = j! h^j
  const cd lead = difference_op(
      [](double t) { return cd(t * t * t, 0.0); }, 0.5, 3, -1.1);
  CHECK(lead.real() == doctest::Approx(6.0 * 0.125).epsilon(1e-12));
}

TEST_CASE("multidimensional difference operator") {
  Eigen::VectorXd h(2), x(2);
  h << 0.3, 0.2;
  x << 0.1, -0.4;
  // affine functions are annihilated by the second difference
  const cd v = difference_op(
      [](const Eigen::VectorXd& z) { return cd(2.0 * z[0] - z[1] + 1.0, 0.0); },
      h, 2, x);
  CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("derivative bound reports") {
  // f(t) = t, r = 1: lhs 1, rhs 4 * 2 * (1 + 0) = 8
  const RatioReport fd = derivative_bound_report(
      [](double t, int order) {
        return order == 0 ? t : (order == 1 ? 1.0 : 0.0);
      },
      1.0, DerivativeBound::Fderest);
  CHECK(fd.lhs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fd.rhs == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(fd.ratio == doctest::Approx(0.125).epsilon(1e-12));

  // f = sin on [-pi, pi]: sup|f'| = 1, sup|f| + sup|f''| = 2
  const RatioReport a1 = derivative_bound_report(
      [](double t, int order) {
        switch (order % 4) {
          case 0: return std::sin(t);
          case 1: return std::cos(t);
          case 2: return -std::sin(t);
          default: return -std::cos(t);
        }
      },
      M_PI, DerivativeBound::LemmaA1);
  CHECK(a1.ratio == doctest::Approx(0.5).epsilon(1e-4));
  CHECK_THROWS_AS(derivative_bound_report(
                      [](double, int) { return 0.0; }, -1.0,
                      DerivativeBound::Fderest),
                  std::invalid_argument);
}

TEST_CASE("sobolev seminorm: order zero is the Lp norm, order one is exact "
          "on plane waves") {
  const PhaseGrid g{1, 8.0, 64};
  const SymbolField a = random_band_limited(g, 71);
  CHECK(sobolev_seminorm(a, 0, 2.0, 8.0) ==
        doctest::Approx(lp_norm(a, 2.0)).epsilon(1e-12));

  const double k = M_PI / g.L;
  const SymbolField wave = make_symbol(g, [k](std::span<const double> X) {
    return std::exp(cd(0.0, k * X[0]));
  });
  const double inf = std::numeric_limits<double>::infinity();
  // |d_x e^{ikx}| = k everywhere, the xi-derivative vanishes
  CHECK(sobolev_seminorm(wave, 1, inf, 8.0) ==
        doctest::Approx(k).epsilon(1e-10));
}

TEST_CASE("sup envelope dominates pointwise and fixes constants") {
  const PhaseGrid g{1, 4.0, 32};
  const SymbolField b = bump_symbol(g, 2.0, 13);
  const SymbolField env = sup_envelope(b, 0);
  for (std::size_t i = 0; i < b.values.size(); ++i)
    CHECK(env.values[i].real() >= std::abs(b.values[i]) - 1e-14);
  SymbolField c = b;
  for (cd& v : c.values) v = cd(1.0, 0.0);
  c.gen = nullptr;
  const SymbolField cenv = sup_envelope(c, 0);
  for (std::size_t i = 0; i < c.values.size(); ++i)
    CHECK(cenv.values[i].real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("modulation norm: Parseval case and window validation") {
  const PhaseGrid g{1, 6.0, 32};
  const SymbolField a = random_band_limited(g, 77);
  const SymbolField w = gaussian_window(g);
  CHECK(std::abs(lp_norm(w, 2.0) - 1.0) < 1e-12);
  CHECK(modulation_norm(a, 2.0, w) ==
        doctest::Approx(lp_norm(a, 2.0)).epsilon(1e-10));
  SymbolField bad = w;
  for (cd& v : bad.values) v *= 3.0;
  bad.gen = nullptr;
  CHECK_THROWS_AS(modulation_norm(a, 2.0, bad), std::invalid_argument);
  CHECK_THROWS_AS(modulation_norm(a, 0.5, w), std::invalid_argument);
}

TEST_CASE("mp_schatten_gap hits the p = 2 constant") {
  const PhaseGrid g{1, 6.0, 32};
  const SymbolField a = random_band_limited(g, 79);
  const RatioReport r = mp_schatten_gap(a, 2.0);
  CHECK(r.ratio ==
        doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-6));
  CHECK_THROWS_AS(mp_schatten_gap(a, 3.0), std::invalid_argument);
}

TEST_CASE("bernstein_gap requires support in the unit ball") {
  const PhaseGrid g{1, 4.0, 32};
  const SymbolField inside = bump_symbol(g, 1.0, 3);
  const RatioReport r = bernstein_gap(inside, 2.0, 2.0, 1);
  CHECK(r.lhs > 0.0);
  CHECK(r.rhs > 0.0);
  CHECK(std::isfinite(r.ratio));
  const SymbolField outside = bump_symbol(g, 2.0, 3);
  CHECK_THROWS_AS(bernstein_gap(outside, 2.0, 2.0, 1), std::invalid_argument);
}
