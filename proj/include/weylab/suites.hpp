#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "weylab/symbol_class.hpp"

namespace weylab {

/// Configuration for a named verification suite.
struct ExperimentConfig {
  std::string suite;
  int n = 1;
  double L = 0.0;  // 0 = suite default
  int N = 0;       // 0 = suite default
  std::vector<double> p_list;
  std::optional<ClassSpec> spec;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::size_t kernel_cap = 0;  // 0 = the per-dimension default cap

  double tol(const std::string& key, double fallback) const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

struct Verdict {
  std::string invariant;  // the statement this verdict instantiates
  bool hard = true;       // hard verdicts gate the exit status
  bool pass = false;
};

/// Suite outcome. The JSON form is deterministic for a fixed config; the
/// wall time is kept out of it on purpose and reported separately.
struct Report {
  std::string suite;
  nlohmann::json config;
  nlohmann::json cases = nlohmann::json::array();
  std::vector<Verdict> verdicts;
  double wall_time_s = 0.0;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Run one named suite. Throws std::invalid_argument for unknown suites and
/// std::runtime_error when a requested kernel exceeds the size cap.
Report run_suite(const ExperimentConfig& config);

/// Evaluate the two S^{r,s}_{rho,delta} trace-class sufficient conditions
/// ("first": r < -n - p(n_p+1/2) max_j (delta_j - rho_j), same for s with the
/// x-side exponents; "second": r < -n - p(n_p+1) max_j (delta_j - rho_j)/2
/// - sum_j (delta_j - rho_j), same for s) and, when either holds, run the
/// s_p stabilization proxy on a generated plain symbol.
Report compare_thresholds(const ClassSpec& spec, double p);

/// Known suites with one-line descriptions of the invariant each verifies.
std::vector<std::pair<std::string, std::string>> suite_catalog();

/// Companion tabular output: per-suite CSV of case records plus a static
/// SVG plot of each ratio-like column.
void write_csv(const Report& report, const std::string& dir);

}  // namespace weylab
