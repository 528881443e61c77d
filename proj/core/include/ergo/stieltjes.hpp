#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "ergo/bernstein.hpp"
#include "ergo/measure.hpp"

namespace ergo {

/// f(z) = a/z + b + integral of mu_s(ds)/(z + s), z off (-inf, 0].
class StieltjesFunction {
 public:
  StieltjesFunction(double a_over_z, double b, RadonMeasure mu_s);

  double a_over_z() const noexcept { return a_; }
  double constant() const noexcept { return b_; }
  const RadonMeasure& measure() const noexcept { return mu_; }

 private:
  double a_;
  double b_;
  RadonMeasure mu_;
};

cplx evaluate_stieltjes(const StieltjesFunction& f, cplx z, EvalMode mode = EvalMode::automatic);

/// Stieltjes representation of log z/(z-1): density 1/(1+s).
StieltjesFunction log_example();

/// Principal log z/(z-1), equal to 1 at z = 1.
cplx log_ratio(cplx z);

using ComplexFunction = std::function<cplx(cplx)>;

/// f(z) = (g(z) - g(1/z))/(z - 1) for complete g with zero drift, on re z >= 0, z != 0.
ComplexFunction cbf_to_stieltjes(const BernsteinFunction& g);

struct HerglotzVerdict {
  bool pass = true;
  cplx worst_point{};
  double worst_value = -std::numeric_limits<double>::infinity();  // max of im z * im f(z)
};

/// pass iff im z * im f(z) <= 1e-10 at every grid point.
HerglotzVerdict herglotz_check(const ComplexFunction& f, std::span<const cplx> grid);

struct HirschVerdict {
  bool pass = true;
  int order = -1;  // first n with alpha_n^2 > alpha_{n-1} alpha_{n+1} (1 + 1e-8)
  std::vector<double> alpha;
};

/// Log-convexity of alpha_n = [c delta_{n0} + integral of s^n e^{-st} mu(ds)]/n!, n = 0..n_max.
HirschVerdict hirsch_logconvexity_probe(const RadonMeasure& mu, double c, double t, int n_max);

/// 1/g(z).
cplx potential_of(const BernsteinFunction& g, cplx z);

/// Polar grid of n_r x n_theta points: radii log-spaced in [r_lo, r_hi],
/// angles evenly spaced in [theta_lo, theta_hi].
std::vector<cplx> polar_grid(double r_lo, double r_hi, std::size_t n_r, double theta_lo,
                             double theta_hi, std::size_t n_theta);

}  // namespace ergo
