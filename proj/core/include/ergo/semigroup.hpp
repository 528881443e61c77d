#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ergo/bernstein.hpp"
#include "ergo/measure.hpp"

namespace ergo {

using Vector = Eigen::VectorXcd;

/// A = V diag(lambda) V^{-1} with re lambda_i >= 0, so that T(s) = e^{-sA}
/// is bounded by M = cond(V) (M = 1 without a similarity).
class DiagonalGenerator {
 public:
  explicit DiagonalGenerator(std::vector<cplx> eigenvalues);
  DiagonalGenerator(std::vector<cplx> eigenvalues, Eigen::MatrixXcd similarity);

  /// n eigenvalues with moduli log-spaced in [lo, hi] and the given phases
  /// (all zero when `phases` is empty).
  static DiagonalGenerator log_spaced(double lo, double hi, std::size_t n,
                                      std::span<const double> phases = {});
  /// z_n = rho 4^{-n} e^{i theta_n}, n = 1..n_max.
  static DiagonalGenerator accumulating(double rho, int n_max, std::span<const double> phases = {});

  const std::vector<cplx>& eigenvalues() const noexcept { return lambda_; }
  std::size_t dimension() const noexcept { return lambda_.size(); }
  double bound() const noexcept { return m_; }
  bool is_diagonal() const noexcept { return !v_.has_value(); }

  /// h(A)x = V diag(h(lambda_i)) V^{-1} x.
  Vector apply_symbol(const std::function<cplx(cplx)>& h, const Vector& x) const;
  /// Same, from symbol values already evaluated at the eigenvalues.
  Vector apply_values(const std::vector<cplx>& values, const Vector& x) const;
  /// Dense matrix of h(A).
  Eigen::MatrixXcd matrix(const std::function<cplx(cplx)>& h) const;
  /// Spectral norm of h(A): max |h(lambda_i)| when diagonal.
  double operator_norm(const std::function<cplx(cplx)>& h) const;

 private:
  std::vector<cplx> lambda_;
  std::optional<Eigen::MatrixXcd> v_;
  Eigen::MatrixXcd v_inv_;
  double m_ = 1.0;
};

Vector semigroup_apply(const DiagonalGenerator& gen, double s, const Vector& x);
Vector cesaro_mean(const DiagonalGenerator& gen, double t, const Vector& x);

/// g(A)x = a x + b A x + integral of (I - T(s)) x mu(ds), by quadrature per eigenvalue.
Vector phillips_apply(const DiagonalGenerator& gen, const BernsteinFunction& g, const Vector& x);

/// g(A)x from the values g(lambda_i).
Vector spectral_apply(const DiagonalGenerator& gen, const BernsteinFunction& g, const Vector& x);

struct RateBoundReport {
  std::vector<double> ratios;  // ||Ce_t y|| / (2 M r(t) ||x||) per t
  double max_ratio = 0.0;
  bool pass = true;
};

RateBoundReport rate_bound_check(const DiagonalGenerator& gen, const BernsteinFunction& g,
                                 const Vector& x, std::span<const double> t_grid);

struct DecayRow {
  double t;
  double norm;   // ||Ce_t(A) g(A) x||
  double rate;   // r(t)
  double ratio;  // norm / (r(t) ||x||)
};

std::vector<DecayRow> decay_profile(const DiagonalGenerator& gen, const BernsteinFunction& g,
                                    const Vector& x, std::span<const double> t_grid);

struct SpectralInclusionVerdict {
  bool pass = true;
  double max_distance = 0.0;  // worst distance from h(lambda_i) to the computed spectrum
};

SpectralInclusionVerdict spectral_inclusion_check(const DiagonalGenerator& gen,
                                                  const std::function<cplx(cplx)>& h);

/// min over theta in [-pi/2, pi/2] of |1 - e^{-e^{i theta}}| on a uniform grid.
double optimality_delta(std::size_t grid_points = 10001);

struct OptimalityRow {
  int n;
  double t;
  double lower_bound;  // delta/(3e^2) r(t_n)
  double norm;         // ||g(A) Ce_{t_n}(A)||
  double ratio;        // norm / (eps(t_n) r(t_n))
};

struct OptimalityReport {
  double delta = 0.0;
  std::vector<OptimalityRow> rows;
  bool lower_bound_holds = true;
  double growth = 0.0;  // ratio at the last row over ratio at the first
  bool diverges = false;  // growth >= 100
};

/// Rows follow the eigenvalues in order of decreasing modulus, t_n = 1/|z_n|.
OptimalityReport optimality_probe(const DiagonalGenerator& gen, const BernsteinFunction& g,
                                  const std::function<double(double)>& epsilon);

struct AbelResult {
  Vector y;
  double residual;
};

/// y = lim_{alpha -> 0} integral of e^{-alpha s} T(s) x mu(ds), with f = L mu,
/// then residual = ||g(A) y - x|| / ||x|| for g = 1/f.
AbelResult abel_transform(const DiagonalGenerator& gen, const RadonMeasure& mu, const Vector& x,
                          std::span<const double> alphas, const BernsteinFunction& g);

struct GeneralRateReport {
  std::vector<double> values;  // ||Ce_t x|| |f(1/t)| / (M (||x|| + ||f(A)x||)) per t
  double constant = 0.0;
};

/// Supported pair: f = "log", lambda0 = 1.
GeneralRateReport general_rate_check(const DiagonalGenerator& gen, std::string_view f,
                                     cplx lambda0, const Vector& x,
                                     std::span<const double> t_grid);

/// (lambda - log A)^{-1} x for |im lambda| > pi and nonzero eigenvalues.
Vector log_resolvent_apply(const DiagonalGenerator& gen, cplx lambda, const Vector& x);

/// Integral over (0, inf) of -1/((lambda - log t)^2 + pi^2) dt/(t + z), by quadrature.
cplx log_resolvent_kernel(cplx lambda, cplx z);

/// Integral over (0, inf) of dt/(t |(lambda - log t)^2 + pi^2|).
double log_resolvent_kernel_mass(cplx lambda);

}  // namespace ergo
