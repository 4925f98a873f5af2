// Acceptance gate: runs every verification suite and prints one line per
// criterion. Exits nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "weylab/suites.hpp"

int main() {
  using namespace weylab;
  struct Criterion {
    int id;
    const char* suite;
    const char* what;
  };
  const std::vector<Criterion> criteria = {
      {1, "hs-identity",
       "Hilbert-Schmidt identity s_2 = (2pi)^{-1/2} ||a||_{L2} on 20 random "
       "symbols (gap <= 1e-2, runtime <= 30 s)"},
      {2, "gaussian-projector",
       "rank-one Gaussian projector: spectrum, s_p, and kernel outer product"},
      {3, "fsigma-involution",
       "symplectic Fourier transform: involution and L2 isometry to 1e-10"},
      {4, "covariance",
       "Hilbert-Schmidt norm invariant under t in {0, 1/2, 1} (spread <= 1e-8)"},
      {5, "symplectic-eigs",
       "diag(a, b) -> sqrt(ab) and closed-form vs generic Planck function"},
      {6, "symplectic-core",
       "core iteration: convergence, diag(4,1) -> diag(2,1/2), planck = 1"},
      {7, "schatten-order",
       "Schatten monotonicity in p and the trace duality bound"},
      {8, "sova-band",
       "s_p / ||F_sigma a||_{L^p} factor-50 band on compactly supported "
       "symbols"},
      {9, "trace-bound",
       "||a||_{L^inf} <= 2 s_1, saturated by the Gaussian projector"},
      {10, "thresholds",
       "threshold integers kappa, kappa', n_p exact and related on a p-grid"},
      {11, "appendix",
       "B-spline integrals, difference identity, annihilation, derivative "
       "bounds"},
      {12, "thm-corthm12-trend",
       "truncated s_1 stabilizes (integrable) / grows (non-integrable), "
       "t in {0, 1/2}"},
      {13, "modulation",
       "M^2 = L^2, p = 2 ratio (2pi)^{-1/2} within 1e-4, p = 1 factor-50 band"},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    ExperimentConfig cfg;
    cfg.suite = c.suite;
    bool pass = false;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Report rep = run_suite(cfg);
      pass = rep.passed();
      if (c.id == 1) {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        pass = pass && secs <= 30.0;
      }
      for (const Verdict& v : rep.verdicts)
        if (v.hard && !v.pass) detail += " [failed: " + v.invariant + "]";
    } catch (const std::exception& e) {
      detail = std::string(" [error: ") + e.what() + "]";
    }
    if (!pass) ++failures;
    std::printf("criterion %2d %s: %s%s\n", c.id, pass ? "PASS" : "FAIL",
                c.what, detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0)
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  else
    std::printf("acceptance: all 13 criteria passed\n");
  return failures == 0 ? 0 : 1;
}
