#include "weylab/families.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace weylab {

namespace {

struct TrigMix {
  std::vector<std::vector<double>> freq;  // one frequency vector per term
  std::vector<cd> coef;

  cd operator()(std::span<const double> X) const {
    cd s(0, 0);
    for (std::size_t t = 0; t < coef.size(); ++t) {
      double phase = 0.0;
      for (std::size_t i = 0; i < freq[t].size(); ++i)
        phase += freq[t][i] * X[i];
      s += coef[t] * std::exp(cd(0, phase));
    }
    return s;
  }
};

TrigMix random_trig(int dims, int bw, int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> fi(-bw, bw);
  std::uniform_real_distribution<double> co(-1.0, 1.0);
  TrigMix mix;
  for (int t = 0; t < terms; ++t) {
    std::vector<double> f(dims);
    for (double& v : f) v = 0.5 * fi(rng);
    mix.freq.push_back(std::move(f));
    mix.coef.emplace_back(co(rng), co(rng));
  }
  return mix;
}

}  // namespace

SymbolField random_band_limited(const PhaseGrid& grid, std::uint64_t seed,
                                int bw, double envelope) {
  std::mt19937_64 rng(seed);
  TrigMix mix = random_trig(2 * grid.n, bw, 12, rng);
  return make_symbol(grid, [mix, envelope](std::span<const double> X) {
    double r2 = 0.0;
    for (double v : X) r2 += v * v;
    return mix(X) * std::exp(-envelope * r2);
  });
}

SymbolField gaussian_symbol(const PhaseGrid& grid, double amp, double width) {
  const double c = 1.0 / (2.0 * width * width);
  return make_symbol(grid, [amp, c](std::span<const double> X) {
    double r2 = 0.0;
    for (double v : X) r2 += v * v;
    return cd(amp * std::exp(-c * r2), 0.0);
  });
}

SymbolField bump_symbol(const PhaseGrid& grid, double R, std::uint64_t seed,
                        int bw) {
  std::mt19937_64 rng(seed);
  TrigMix mix = random_trig(2 * grid.n, bw, 6, rng);
  const bool modulated = seed != 0;
  return make_symbol(grid, [R, mix, modulated](std::span<const double> X) {
    double r2 = 0.0;
    for (double v : X) r2 += v * v;
    const double t2 = r2 / (R * R);
    if (t2 >= 1.0) return cd(0.0, 0.0);
    const cd amp = modulated ? mix(X) : cd(1.0, 0.0);
    return amp * std::exp(-t2 / (1.0 - t2));
  });
}

SymbolField polynomial_symbol(const PhaseGrid& grid, int deg,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> co(-1.0, 1.0);
  // random coefficients over all monomials X^alpha with |alpha| <= deg
  const int d = 2 * grid.n;
  std::vector<std::vector<int>> alphas;
  std::vector<int> cur(d, 0);
  std::function<void(int, int)> walk = [&](int slot, int left) {
    if (slot == d) {
      alphas.push_back(cur);
      return;
    }
    for (int m = 0; m <= left; ++m) {
      cur[slot] = m;
      walk(slot + 1, left - m);
    }
    cur[slot] = 0;
  };
  walk(0, deg);
  std::vector<double> coef(alphas.size());
  for (double& c : coef) c = co(rng);
  SymbolField a =
      make_symbol(grid, [alphas, coef](std::span<const double> X) {
        double s = 0.0;
        for (std::size_t t = 0; t < alphas.size(); ++t) {
          double m = coef[t];
          for (std::size_t i = 0; i < alphas[t].size(); ++i)
            for (int k = 0; k < alphas[t][i]; ++k) m *= X[i];
          s += m;
        }
        return cd(s, 0.0);
      });
  a.poly_degree = deg;
  return a;
}

FunctionField random_function(const PhaseGrid& grid, std::uint64_t seed,
                              int bw) {
  std::mt19937_64 rng(seed);
  TrigMix mix = random_trig(grid.n, bw, 8, rng);
  return make_function(grid, [mix](std::span<const double> X) {
    double r2 = 0.0;
    for (double v : X) r2 += v * v;
    return mix(X) * std::exp(-0.5 * r2);
  });
}

}  // namespace weylab
