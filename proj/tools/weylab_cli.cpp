#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weylab/families.hpp"
#include "weylab/fourier.hpp"
#include "weylab/harmonic.hpp"
#include "weylab/io.hpp"
#include "weylab/metric.hpp"
#include "weylab/schatten.hpp"
#include "weylab/suites.hpp"
#include "weylab/symbol_class.hpp"

namespace {

using namespace weylab;

PhaseGrid parse_grid(const std::string& s) {
  int n = 1, N = 64;
  double L = 8.0;
  if (std::sscanf(s.c_str(), "%d,%lf,%d", &n, &L, &N) != 3)
    throw CLI::ValidationError("--grid expects n,L,N");
  return PhaseGrid{n, L, N};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "inf")
      out.push_back(std::numeric_limits<double>::infinity());
    else
      out.push_back(std::stod(tok));
  }
  return out;
}

// r,s,rho_1..rho_2n,delta_1..delta_2n (length 2 + 4n)
ClassSpec parse_spec(const std::string& s) {
  const std::vector<double> v = parse_list(s);
  if (v.size() < 6 || (v.size() - 2) % 4 != 0)
    throw CLI::ValidationError(
        "--spec/--class expects r,s,rho_1..rho_2n,delta_1..delta_2n");
  const std::size_t m = (v.size() - 2) / 2;
  ClassSpec cs;
  cs.r = v[0];
  cs.s = v[1];
  cs.rho.assign(v.begin() + 2, v.begin() + 2 + m);
  cs.delta.assign(v.begin() + 2 + m, v.end());
  validate(cs);
  return cs;
}

void print_matrix(const char* label, const Eigen::MatrixXd& M) {
  std::cout << label << " =\n" << M << "\n";
}

int cmd_quantize(const std::string& symbol_path, double t,
                 const std::string& out) {
  const SymbolField a = read_field(symbol_path);
  write_kernel(build_kernel(a, t), out);
  return 0;
}

int cmd_schatten(const std::string& kernel_path, const std::string& p_csv,
                 const std::string& report_path) {
  const OperatorKernel k = read_kernel(kernel_path);
  const SingularSpectrum sv = singular_values(k);
  nlohmann::json j;
  j["kernel"] = kernel_path;
  j["t"] = k.t;
  j["grid"] = {{"n", k.grid.n}, {"L", k.grid.L}, {"N", k.grid.N}};
  nlohmann::json head = nlohmann::json::array();
  for (std::size_t i = 0; i < sv.sigma.size() && i < 16; ++i)
    head.push_back(sv.sigma[i]);
  j["spectrum_head"] = head;
  j["residual"] = sv.residual;
  nlohmann::json norms;
  for (double p : parse_list(p_csv)) {
    const std::string key =
        std::isinf(p) ? "inf" : nlohmann::json(p).dump();
    norms[key] = schatten_norm(sv, p);
  }
  j["norms"] = norms;
  if (report_path.empty())
    std::cout << dump_deterministic(j);
  else
    write_json(j, report_path);
  return 0;
}

int cmd_metric_probe(const ClassSpec& cs, const std::string& probe) {
  const std::vector<double> xv = parse_list(probe);
  const int n = cs.n();
  if (static_cast<int>(xv.size()) != 2 * n)
    throw CLI::ValidationError("--probe expects 2n coordinates x...,xi...");
  Eigen::VectorXd X(2 * n);
  for (int i = 0; i < 2 * n; ++i) X[i] = xv[i];
  const QuadForm A = class_metric(cs).eval(X);
  print_matrix("A", A.A);
  print_matrix("A_sigma", dual_metric(A).A);
  const SymplecticSpectrum sp = symplectic_eigenvalues(A);
  std::cout << "lambda =";
  for (double l : sp.lambda) std::cout << " " << l;
  std::cout << "\nh_g = " << planck(A)
            << " (closed form " << class_planck(cs).eval(X) << ")\n"
            << "Lambda_G = " << lambda_G(cs).eval(X) << "\n";
  print_matrix("g0 (symplectic core)", symplectic_core(A, 1e-12, 200).A);
  return 0;
}

int cmd_metric_check(const ClassSpec& cs, const std::string& check, double box,
                     int samples, std::uint64_t seed,
                     const std::string& report_path) {
  const QuadFormField g = class_metric(cs);
  const auto probes = sample_box(cs.n(), box, samples, seed);
  nlohmann::json j;
  j["check"] = check;
  j["box"] = box;
  j["samples"] = samples;
  j["seed"] = seed;
  if (check == "slow") {
    const SlowReport r = slowly_varying_report(g, probes, 1.0);
    j["C_est"] = r.C_est;
    j["violations"] = r.violations;
  } else if (check == "temperate") {
    const TemperateReport r = temperate_report(g, probes);
    j["C_est"] = r.C_est;
    j["N_est"] = r.N_est;
  } else if (check == "feasible") {
    const FeasibleVerdict v = feasible_check(g, probes, 1.0);
    j["slow_ok"] = v.slow_ok;
    j["planck_ok"] = v.planck_ok;
    j["max_planck"] = v.max_planck;
  } else {
    throw CLI::ValidationError("--check expects slow|temperate|feasible");
  }
  if (report_path.empty())
    std::cout << dump_deterministic(j);
  else
    write_json(j, report_path);
  return 0;
}

int cmd_class_emit(const ClassSpec& cs, const PhaseGrid& grid,
                   const std::string& kind, const std::string& out) {
  SymbolKind k = SymbolKind::Plain;
  if (kind == "oscillatory")
    k = SymbolKind::Oscillatory;
  else if (kind == "truncated")
    k = SymbolKind::Truncated;
  else if (kind != "plain")
    throw CLI::ValidationError("--kind expects plain|oscillatory|truncated");
  write_field(make_test_symbol(grid, cs, k), out);
  return 0;
}

int cmd_class_membership(const std::string& symbol_path, const ClassSpec& cs,
                         int N, double box, int probes, std::uint64_t seed) {
  const SymbolField a = read_field(symbol_path);
  const MembershipReport r =
      membership_report(a, cs, N, sample_box(cs.n(), box, probes, seed));
  nlohmann::json j;
  j["per_k"] = r.per_k;
  j["total"] = r.total;
  std::cout << dump_deterministic(j);
  return 0;
}

nlohmann::json ratio_stats(const std::vector<RatioReport>& rs) {
  nlohmann::json lhs = nlohmann::json::array(), rhs = nlohmann::json::array(),
                 ratios = nlohmann::json::array();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const RatioReport& r : rs) {
    lhs.push_back(r.lhs);
    rhs.push_back(r.rhs);
    ratios.push_back(r.ratio);
    if (r.ratio > 0) {
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
    }
  }
  return {{"lhs", lhs},
          {"rhs", rhs},
          {"ratio", ratios},
          {"ratio_min", lo},
          {"ratio_max", hi},
          {"ratio_band", lo > 0 ? hi / lo : 0.0}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weylab: Weyl/t-quantization laboratory"};
  app.require_subcommand(1);

  std::string grid_s = "1,8,64", symbol_path, kernel_path, out_path,
              report_path, p_csv = "1,2,inf", spec_s, probe_s, check_s,
              kind_s = "plain", config_path, csv_dir, suite_name, harm_what;
  double t = 0.5, box = 5.0, p_one = 1.0, q_one = 2.0, r_one = 1.0;
  int samples = 50, probes = 50, Nord = 2, jord = 3, count = 20;
  std::uint64_t seed = 0;
  bool has_seed_override = false;

  auto* quantize = app.add_subcommand("quantize", "build a t-kernel from a symbol file");
  quantize->add_option("--symbol", symbol_path)->required();
  quantize->add_option("--t", t);
  quantize->add_option("--out", out_path)->required();

  auto* schatten = app.add_subcommand("schatten", "singular spectrum and Schatten norms of a kernel");
  schatten->add_option("--kernel", kernel_path)->required();
  schatten->add_option("--p", p_csv);
  schatten->add_option("--report", report_path);

  auto* metric = app.add_subcommand("metric", "phase-space metric probes and property checks");
  metric->add_option("--class", spec_s)->required();
  metric->add_option("--probe", probe_s);
  metric->add_option("--check", check_s);
  metric->add_option("--box", box);
  metric->add_option("--samples", samples);
  metric->add_option("--seed", seed);
  metric->add_option("--report", report_path);

  auto* cls = app.add_subcommand("class", "symbol-class witnesses and membership estimates");
  cls->add_option("--spec", spec_s)->required();
  cls->add_option("--grid", grid_s);
  cls->add_option("--emit", out_path);
  cls->add_option("--kind", kind_s);
  cls->add_option("--membership", symbol_path);
  cls->add_option("--N", Nord);
  cls->add_option("--box", box);
  cls->add_option("--probes", probes);
  cls->add_option("--seed", seed);

  auto* harm = app.add_subcommand("harmonic", "B-splines, difference bounds, and norm comparisons");
  harm->add_option("what", harm_what, "bernstein|mp-gap|bspline|abound")->required();
  harm->add_option("--symbol", symbol_path);
  harm->add_option("--grid", grid_s);
  harm->add_option("--p", p_one);
  harm->add_option("--q", q_one);
  harm->add_option("--N", Nord);
  harm->add_option("--j", jord);
  harm->add_option("--r", r_one);
  harm->add_option("--count", count);
  harm->add_option("--seed", seed);
  harm->add_option("--report", report_path);

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("suite", suite_name)->required();
  verify->add_option("--config", config_path);
  verify->add_option("--emit-csv", csv_dir);
  verify->add_option("--report", report_path);
  auto* seed_opt = verify->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*quantize) return cmd_quantize(symbol_path, t, out_path);
    if (*schatten) return cmd_schatten(kernel_path, p_csv, report_path);
    if (*metric) {
      const ClassSpec cs = parse_spec(spec_s);
      if (!probe_s.empty()) return cmd_metric_probe(cs, probe_s);
      if (!check_s.empty())
        return cmd_metric_check(cs, check_s, box, samples, seed, report_path);
      throw CLI::ValidationError("metric needs --probe or --check");
    }
    if (*cls) {
      const ClassSpec cs = parse_spec(spec_s);
      if (!out_path.empty())
        return cmd_class_emit(cs, parse_grid(grid_s), kind_s, out_path);
      if (!symbol_path.empty())
        return cmd_class_membership(symbol_path, cs, Nord, box, probes, seed);
      throw CLI::ValidationError("class needs --emit or --membership");
    }
    if (*harm) {
      nlohmann::json j;
      j["what"] = harm_what;
      if (harm_what == "bspline") {
        const BSpline H = make_bspline(jord);
        j["j"] = jord;
        j["integral"] = H.integral();
        j["pieces"] = H.pieces;
      } else if (harm_what == "bernstein" || harm_what == "mp-gap") {
        std::vector<RatioReport> rs;
        if (!symbol_path.empty()) {
          const SymbolField a = read_field(symbol_path);
          rs.push_back(harm_what == "bernstein"
                           ? bernstein_gap(a, p_one, q_one, Nord)
                           : mp_schatten_gap(a, p_one));
        } else {
          const PhaseGrid g = parse_grid(grid_s);
          for (int i = 0; i < count; ++i) {
            const SymbolField a = harm_what == "bernstein"
                                      ? bump_symbol(g, 1.0, seed + 1 + i)
                                      : random_band_limited(g, seed + i);
            rs.push_back(harm_what == "bernstein"
                             ? bernstein_gap(a, p_one, q_one, Nord)
                             : mp_schatten_gap(a, p_one));
          }
        }
        j.update(ratio_stats(rs));
      } else if (harm_what == "abound") {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        std::vector<RatioReport> rs;
        for (int i = 0; i < count; ++i) {
          const double c0 = U(rng), c1 = U(rng), c2 = U(rng), c3 = U(rng);
          rs.push_back(derivative_bound_report(
              [=](double x, int order) {
                switch (order) {
                  case 0: return c0 + x * (c1 + x * (c2 + x * c3));
                  case 1: return c1 + x * (2 * c2 + x * 3 * c3);
                  default: return 2 * c2 + 6 * c3 * x;
                }
              },
              r_one, DerivativeBound::Fderest));
        }
        j.update(ratio_stats(rs));
      } else {
        throw CLI::ValidationError("harmonic expects bernstein|mp-gap|bspline|abound");
      }
      if (report_path.empty())
        std::cout << dump_deterministic(j);
      else
        write_json(j, report_path);
      return 0;
    }
    if (*verify) {
      has_seed_override = seed_opt->count() > 0;
      if (suite_name == "list") {
        for (const auto& [name, desc] : suite_catalog())
          std::cout << name << "\t" << desc << "\n";
        return 0;
      }
      ExperimentConfig cfg;
      if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) throw std::runtime_error("cannot open config: " + config_path);
        nlohmann::json cj;
        is >> cj;
        cfg = config_from_json(cj);
      }
      cfg.suite = suite_name;
      if (has_seed_override) cfg.seed = seed;
      const Report rep = run_suite(cfg);
      if (!csv_dir.empty()) write_csv(rep, csv_dir);
      if (report_path.empty())
        std::cout << dump_deterministic(rep.to_json());
      else
        write_json(rep.to_json(), report_path);
      std::cerr << "suite " << suite_name << (rep.passed() ? " passed" : " FAILED")
                << " in " << rep.wall_time_s << " s\n";
      return rep.passed() ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
