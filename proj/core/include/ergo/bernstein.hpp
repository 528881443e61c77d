#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ergo/measure.hpp"
#include "ergo/numeric.hpp"

namespace ergo {

/// Class membership asserted by the catalog (never inferred from data).
struct BernsteinTags {
  bool special = false;
  bool complete = false;
};

/// g(z) = a + b z + integral of (1 - e^{-sz}) mu(ds), re z >= 0.
///
/// A function may instead carry only a direct evaluator (its Levy measure
/// having no usable closed form); operations that need (a, b, mu) then
/// throw MeasureUnavailableError.
class BernsteinFunction {
 public:
  using Evaluator = std::function<cplx(cplx)>;

  BernsteinFunction(double killing, double drift, RadonMeasure mu, std::string name = {},
                    BernsteinTags tags = {});

  static BernsteinFunction direct(std::string name, Evaluator evaluator, double killing,
                                  double drift, BernsteinTags tags);

  double killing() const noexcept { return a_; }
  double drift() const noexcept { return b_; }
  bool has_measure() const noexcept { return mu_.has_value(); }
  const RadonMeasure& measure() const;
  const std::string& name() const noexcept { return name_; }
  const BernsteinTags& tags() const noexcept { return tags_; }
  bool is_special() const noexcept { return tags_.special || tags_.complete; }
  bool is_complete() const noexcept { return tags_.complete; }
  bool is_zero() const noexcept;
  const Evaluator* direct_evaluator() const noexcept {
    return evaluator_ ? &evaluator_ : nullptr;
  }

 private:
  BernsteinFunction() = default;

  double a_ = 0.0;
  double b_ = 0.0;
  std::optional<RadonMeasure> mu_;
  Evaluator evaluator_;
  std::string name_;
  BernsteinTags tags_;
};

/// g(z) for re z >= 0.
cplx evaluate(const BernsteinFunction& g, cplx z, EvalMode mode = EvalMode::automatic);

/// r[g](t) = a/2 + b/t + integral of min(s/t, 1) mu(ds).
double rate(const BernsteinFunction& g, double t, EvalMode mode = EvalMode::automatic);

/// Rate viewed as a function, with t*r(t) alongside.
class RateFunction {
 public:
  explicit RateFunction(BernsteinFunction g);
  double operator()(double t) const { return rate(g_, t); }
  double scaled(double t) const { return t * rate(g_, t); }
  /// Right derivative of t*r(t): a/2 + mu(t, inf).
  double scaled_right_derivative(double t) const;
  const BernsteinFunction& source() const noexcept { return g_; }

 private:
  BernsteinFunction g_;
};

/// Enclosure of r(t) read off g(1/t); usable when no measure is available.
struct RateBracket {
  double lower;
  double upper;
};
RateBracket rate_bracket(const BernsteinFunction& g, double t);

/// Ce_t(z) = (1 - e^{-tz})/(tz), with value 1 at z = 0.
cplx cesaro_symbol(double t, cplx z);

/// Total variation of the measure whose Laplace transform is t Ce_t(z) g(z),
/// assembled from tail masses (not from the rate formula). Equals 2 t r(t).
double wiener_norm_cesaro(const BernsteinFunction& g, double t);

struct RateToBernsteinOptions {
  double shape_tolerance = 1e-7;
};

/// Rebuilds g = (a, b, mu) from samples of f(t) = t r(t) on `grid`.
/// The Levy measure is a sum of point masses at the grid points so that
/// r[g] reproduces f(t)/t at every grid point.
BernsteinFunction rate_to_bernstein(const std::function<double(double)>& f,
                                    std::span<const double> grid,
                                    const RateToBernsteinOptions& options = {});

/// g(z) = a + b z + c - (L nu)(z) + z (L gamma)(z), nu = s/(1+s) mu,
/// gamma(dr) = [integral over (r, inf) of nu(ds)/s] dr.
struct WDecomposition {
  double killing;
  double drift;
  double c;
  RadonMeasure nu;
  RadonMeasure gamma;
};

WDecomposition w_decompose(const BernsteinFunction& g);

/// Right-hand side of the decomposition evaluated at z.
cplx w_reconstruct(const WDecomposition& w, cplx z);

struct SandwichBounds {
  double lower;
  double upper;
  double value_re;
  double value_abs;
  double rate;
};

/// [(t re z) e^{-t re z}] r(t) <= re g(z) <= |g(z)| <= max(2, t|z|) r(t).
SandwichBounds sandwich_bounds(const BernsteinFunction& g, double t, cplx z);

struct ComparabilityConstants {
  double c0;
  double c1;
};

/// c0 r(t) <= |g(z)| <= c1 r(t) whenever t re z, t|z| lie in [alpha, beta]
/// (or t|z| in [alpha, beta] for special g).
ComparabilityConstants comparability_constants(double alpha, double beta, bool special);

struct SpecialEstimate {
  double ratio;
  bool pass;
};

/// ratio = g(|z|)/|g(z)|; pass iff ratio lies in [1/(3e), 3e].
SpecialEstimate special_estimate_check(const BernsteinFunction& g, cplx z);

struct CmVerdict {
  bool pass = true;
  int order = -1;             // failing derivative order
  std::size_t window = 0;     // first grid index of the failing window
  double window_lo = 0.0;
  double window_hi = 0.0;
  double value = 0.0;         // (-1)^n times the divided difference
};

struct CmProbeOptions {
  double tolerance = 1e-7;
  /// Relative accuracy of the sampled values, widens the rounding allowance.
  double value_rel_error = 1e-15;
};

/// Necessary condition for complete monotonicity on a grid:
/// (-1)^n h[t_i, ..., t_{i+n}] >= 0 for n = 0..n_max.
CmVerdict cm_probe(const std::function<double(double)>& h, std::span<const double> grid,
                   int n_max, const CmProbeOptions& options = {});

/// Same probe on precomputed samples.
CmVerdict cm_probe_samples(std::span<const double> grid, std::span<const double> values,
                           int n_max, const CmProbeOptions& options = {});

}  // namespace ergo
