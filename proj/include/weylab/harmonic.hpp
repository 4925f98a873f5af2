#pragma once

#include <Eigen/Dense>

#include "weylab/grid.hpp"

namespace weylab {

/// B-spline of order j as an exact piecewise polynomial on [0, j]:
/// H_1 = chi_(0,1), H_{j+1} = H_1 * H_j.
struct BSpline {
  int j = 1;
  // pieces[i] holds the coefficients (ascending powers of the local variable
  // t - i) of the restriction to [i, i+1)
  std::vector<std::vector<double>> pieces;

  double eval(double t) const;
  double integral() const;  // exact integral over the support
};

BSpline make_bspline(int j);

inline double bspline_eval(int j, double t) { return make_bspline(j).eval(t); }

/// T^j_h f(x) by the binomial expansion of the exact recursion
/// T^1_h f(x) = f(x+h) - f(x), T^{j+1}_h = T^j_h o T^1_h.
cd difference_op(const std::function<cd(double)>& f, double h, int j, double x);
cd difference_op(const std::function<cd(const Eigen::VectorXd&)>& f,
                 const Eigen::VectorXd& h, int j, const Eigen::VectorXd& x);

struct RatioReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs (0 when rhs = 0)
};

enum class DerivativeBound { Fderest, LemmaA1 };

/// Evaluates both sides of the selected inequality for a scalar function f
/// sampled on [0, r] (Fderest: |f'(0)| <= 4(1/r + 1)(max|f| + max|f''|)) or
/// on [-r, r] (LemmaA1 with p = inf, |alpha| = 1, N = 2:
/// ||f'||_inf <= C(||f||_inf + ||f''||_inf)); derivatives are requested
/// from the supplied callbacks.
RatioReport derivative_bound_report(const std::function<double(double, int)>& f,
                                    double r, DerivativeBound kind);

/// |a|_{W^p_N(Omega)} = sum_{|alpha|=N} ||d^alpha a||_{L^p(Omega)};
/// Omega is the centered box [-box, box]^{2n} intersected with the grid;
/// derivatives by spectral differentiation.
double sobolev_seminorm(const SymbolField& a, int N, double p, double box);

/// |a|_{B,N}(X) = sup over |alpha| = N and grid offsets Y in the unit ball
/// of |d^alpha a(X+Y)| (periodic indexing).
SymbolField sup_envelope(const SymbolField& a, int N);

/// Discrete short-time Fourier L^p norm: window hop one grid step, full DFT
/// per shift, quadrature weights h^d (shifts) and (pi/L)^d (bins), all with
/// the (2 pi)^{-d/2} Fourier normalization. Unit-quadrature-norm windows
/// make p = 2 coincide with the L^2 norm.
double modulation_norm(const SymbolField& f, double p, const SymbolField& window);

/// Default unit-norm Gaussian window for modulation_norm.
SymbolField gaussian_window(const PhaseGrid& grid, double width = 1.0);

/// lhs = s_p(Op^w(a)), rhs = sum_j ||D_j^N a||_{L^q} over all 2n axes;
/// requires supp a inside the unit ball.
RatioReport bernstein_gap(const SymbolField& a, double p, double q, int N);

/// lhs = s_p(Op^w(a)), rhs = M^p norm with the default window; p in [1,2].
RatioReport mp_schatten_gap(const SymbolField& a, double p);

}  // namespace weylab
