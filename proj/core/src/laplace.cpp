#include "ergo/laplace.hpp"

#include <algorithm>
#include <cmath>

#include "ergo/error.hpp"
#include "ergo/quadrature.hpp"

namespace ergo {

cplx laplace_measure(const RadonMeasure& mu, cplx z, EvalMode mode) {
  if (!(z.real() >= 0.0)) throw DomainError("Laplace transform needs re z >= 0");
  return exp_integral(mu, z, Kernel::exp, mode);
}

cplx laplace_function(const std::function<double(double)>& h, cplx z, double growth,
                      std::span<const double> breakpoints) {
  if (!(z.real() > 0.0)) throw DomainError("Laplace transform of a function needs re z > 0");
  if (!(growth >= 0.0)) throw DomainError("growth constant must be >= 0");
  // e^{-40} leaves a tail far below every tolerance in use.
  const double horizon = 40.0 / z.real();
  std::vector<double> cuts;
  for (double b : breakpoints)
    if (b > 0.0 && b < horizon) cuts.push_back(b);
  if (1.0 / z.real() < horizon) cuts.push_back(1.0 / z.real());
  std::sort(cuts.begin(), cuts.end());

  auto integrand = [&](double t) -> cplx {
    const double v = h(t);
    if (std::abs(v) > growth * (1.0 + t) * (1.0 + 1e-9))
      throw DomainError("growth bound |h(t)| <= C(1+t) exceeded at t = " + std::to_string(t));
    return v * std::exp(-z * t);
  };
  return quad::integrate(quad::ComplexIntegrand(integrand), 0.0, horizon, cuts,
                         {1e-10, 0.0, 1'000'000})
      .value;
}

double rate_laplace_residual(const BernsteinFunction& g, cplx z) {
  if (!(z.real() > 0.0)) throw DomainError("rate_laplace_residual needs re z > 0");
  const RateFunction r(g);
  // t r(t) is concave and nondecreasing, so t r(t) <= f(1) max(1, t).
  const double growth = r.scaled(1.0);
  const std::vector<double> cuts = g.measure().scales();
  const cplx lhs = laplace_function([&](double t) { return r.scaled(t); }, z, growth, cuts);
  const cplx rhs = (evaluate(g, z) - 0.5 * g.killing()) / (z * z);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

CmVerdict cbf_rate_probe(const BernsteinFunction& g, std::span<const double> grid, int n_max) {
  const RateFunction r(g);
  return cm_probe([&](double t) { return r.scaled_right_derivative(t); }, grid, n_max);
}

CmVerdict cbf_rate_probe(const BernsteinFunction& g) {
  const auto grid = log_grid(0.05, 20.0, 41);
  return cbf_rate_probe(g, grid, 6);
}

}  // namespace ergo
