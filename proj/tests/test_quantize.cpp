#include <doctest.h>

#include <cmath>

#include "weylab/families.hpp"
#include "weylab/quantize.hpp"

using namespace weylab;

namespace {
const PhaseGrid g64{1, 8.0, 64};

FunctionField test_wave(const PhaseGrid& g) {
  return make_function(g, [&g](std::span<const double> X) {
    return std::exp(cd(0.0, 2.0 * M_PI * X[0] / g.L)) *
           std::exp(-0.1 * X[0] * X[0]);
  });
}

double max_abs_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}
}  // namespace

TEST_CASE("Op_t(1) is the identity for every t") {
  SymbolField one = make_symbol(g64, [](std::span<const double>) {
    return cd(1.0, 0.0);
  });
  one.poly_degree = 0;
  const FunctionField f = test_wave(g64);
  for (double t : {0.0, 0.5, 1.0, 0.3333}) {
    const FunctionField out = apply(build_kernel(one, t), f);
    CHECK(max_abs_diff(out.values, f.values) < 1e-12);
  }
}

TEST_CASE("Op_t(xi) differentiates band-limited functions") {
  SymbolField xi = make_symbol(g64, [](std::span<const double> X) {
    return cd(X[1], 0.0);
  });
  xi.poly_degree = 1;
  const double k = 2.0 * M_PI / g64.L;
  const FunctionField f = make_function(g64, [k](std::span<const double> X) {
    return std::exp(cd(0.0, k * X[0]));
  });
  for (double t : {0.0, 0.5, 0.3333}) {
    const FunctionField out = apply(build_kernel(xi, t), f);
    double err = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      err = std::max(err, std::abs(out.values[i] - k * f.values[i]));
    CHECK(err < 1e-10);
  }
}

TEST_CASE("Op_t(a(x)) is multiplication by a(x)") {
  SymbolField ax = make_symbol(g64, [](std::span<const double> X) {
    return cd(X[0], 0.0);
  });
  ax.poly_degree = 1;
  const FunctionField f = test_wave(g64);
  for (double t : {0.0, 0.5, 1.0}) {
    const FunctionField out = apply(build_kernel(ax, t), f);
    double err = 0.0;
    for (int j = 0; j < g64.N; ++j)
      err = std::max(err,
                     std::abs(out.values[j] - g64.point(j) * f.values[j]));
    CHECK(err < 1e-10);
  }
}

TEST_CASE("Weyl kernels of real symbols are Hermitian") {
  const SymbolField a = make_symbol(g64, [](std::span<const double> X) {
    const double r2 = X[0] * X[0] + X[1] * X[1];
    const double v = std::cos(0.5 * X[0]) * std::sin(X[1]) +
                     0.3 * std::cos(X[0] + X[1]) + 0.7;
    return cd(v * std::exp(-0.5 * r2), 0.0);
  });
  const OperatorKernel k = build_kernel(a, 0.5);
  double err = 0.0;
  for (int i = 0; i < k.K.rows(); ++i)
    for (int j = 0; j < k.K.cols(); ++j)
      err = std::max(err, std::abs(k.K(i, j) - std::conj(k.K(j, i))));
  CHECK(err < 1e-12);
}

TEST_CASE("Gaussian projector: kernel, idempotency") {
  const PhaseGrid g{1, 8.0, 128};
  const SymbolField a = gaussian_symbol(g);  // 2 e^{-(x^2 + xi^2)}
  const OperatorKernel k = build_kernel(a, 0.5);
  const double c = std::pow(M_PI, -0.25);
  double kerr = 0.0;
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) {
      const double phi_i = c * std::exp(-0.5 * g.point(i) * g.point(i));
      const double phi_j = c * std::exp(-0.5 * g.point(j) * g.point(j));
      kerr = std::max(kerr, std::abs(k.K(i, j) - cd(phi_i * phi_j, 0.0)));
    }
  CHECK(kerr < 1e-6);
  // P^2 = P for the quadrature-scaled matrix
  const Eigen::MatrixXcd S = g.spacing() * k.K;
  CHECK((S * S - S).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("convert_quantization: exact polynomial route") {
  // Op^w(x xi) = Op_0(x xi - i/2)
  SymbolField a = make_symbol(g64, [](std::span<const double> X) {
    return cd(X[0] * X[1], 0.0);
  });
  a.poly_degree = 2;
  const SymbolField b = convert_quantization(a, 0.5, 0.0);
  double err = 0.0;
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    std::array<double, 2> X;
    b.coords(i, X);
    err = std::max(err, std::abs(b.values[i] - cd(X[0] * X[1], -0.5)));
  }
  CHECK(err < 1e-13);
  CHECK(b.poly_degree == 2);

  // round trip is exact
  const SymbolField back = convert_quantization(b, 0.0, 0.5);
  CHECK(max_abs_diff(back.values, a.values) < 1e-13);
}

TEST_CASE("convert_quantization preserves kernels of decaying symbols") {
  const SymbolField a = random_band_limited(g64, 37);
  const OperatorKernel kw = build_kernel(a, 0.5);
  for (double t : {0.0, 1.0}) {
    const SymbolField b = convert_quantization(a, 0.5, t);
    const OperatorKernel kt = build_kernel(b, t);
    double err = 0.0;
    for (int i = 0; i < kw.K.rows(); ++i)
      for (int j = 0; j < kw.K.cols(); ++j)
        err = std::max(err, std::abs(kw.K(i, j) - kt.K(i, j)));
    CHECK(err < 1e-8);
  }
}

TEST_CASE("expansion_remainder: nilpotent for polynomials") {
  const SymbolField a = polynomial_symbol(g64, 2, 7);
  const SymbolField rem = expansion_remainder(a, 0.5, 3);
  CHECK(lp_norm(rem, std::numeric_limits<double>::infinity()) < 1e-12);
}

TEST_CASE("expansion_remainder decreases with more terms") {
  const SymbolField a = gaussian_symbol(g64, 1.0, 1.0);
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 4; ++n) {
    const double cur = lp_norm(expansion_remainder(a, 0.5, n), 2.0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("build_kernel rejects irrational t without a generator") {
  SymbolField a = random_band_limited(g64, 41);
  a.gen = nullptr;
  CHECK_THROWS_AS(build_kernel(a, 0.1234567891), std::invalid_argument);
}
