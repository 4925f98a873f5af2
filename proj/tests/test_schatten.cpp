#include <doctest.h>

#include <cmath>

#include "weylab/families.hpp"
#include "weylab/schatten.hpp"

using namespace weylab;

namespace {
const PhaseGrid g64{1, 8.0, 64};
}

TEST_CASE("schatten_norm on a synthetic spectrum") {
  SingularSpectrum sv;
  sv.sigma = {4.0, 3.0};
  CHECK(schatten_norm(sv, 1.0) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(schatten_norm(sv, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(schatten_norm(sv, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(schatten_norm(sv, 0.5), std::invalid_argument);
}

TEST_CASE("singular values are certified and descending") {
  const SymbolField a = random_band_limited(g64, 51);
  const SingularSpectrum sv = singular_values(build_kernel(a, 0.5));
  CHECK(sv.residual < 1e-10 * sv.sigma[0] * 64);
  for (std::size_t i = 1; i < sv.sigma.size(); ++i)
    CHECK(sv.sigma[i] <= sv.sigma[i - 1]);
  // s_2 equals the Frobenius norm of the quadrature-scaled kernel
  const OperatorKernel k = build_kernel(a, 0.5);
  const double frob = (g64.spacing() * k.K).norm();
  CHECK(schatten_norm(sv, 2.0) == doctest::Approx(frob).epsilon(1e-12));
}

TEST_CASE("Hilbert-Schmidt identity") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const SymbolField a = random_band_limited(g64, seed);
    CHECK(hs_identity_gap(a) < 1e-10);
  }
  SymbolField zero = random_band_limited(g64, 4);
  for (cd& v : zero.values) v = 0.0;
  zero.gen = nullptr;
  CHECK_THROWS_AS(hs_identity_gap(zero), std::invalid_argument);
}

TEST_CASE("on-sequence functional bounds the Schatten norm from below") {
  const SymbolField a = random_band_limited(g64, 53);
  const OperatorKernel k = build_kernel(a, 0.5);
  const SingularSpectrum sv = singular_values(k);
  for (double p : {1.0, 2.0}) {
    const double lb = on_sequence_lower_bound(k, p, 4, 99);
    CHECK(lb <= schatten_norm(sv, p) * (1.0 + 1e-9));
    CHECK(lb > 0.0);
  }
  // the same seed reproduces the same bound
  CHECK(on_sequence_lower_bound(k, 1.0, 2, 7) ==
        on_sequence_lower_bound(k, 1.0, 2, 7));
}

TEST_CASE("L^inf is controlled by 2^n s_1 and saturated by the projector") {
  const SymbolField rb = random_band_limited(g64, 57);
  CHECK(lone_infinity_bound_gap(rb) >
        -1e-8 * (1.0 + lp_norm(rb, std::numeric_limits<double>::infinity())));
  const PhaseGrid g{1, 8.0, 128};
  const SymbolField proj = gaussian_symbol(g);
  // 2 s_1 = 2 and ||a||_inf = 2: the bound is tight here
  CHECK(std::abs(lone_infinity_bound_gap(proj)) < 1e-6);
}
