#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <type_traits>

namespace ergo::quad {

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_evaluations = 1'000'000;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
};

using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<std::complex<double>(double)>;

// Globally adaptive Gauss-Kronrod (10/21 point) quadrature. The upper limit
// may be +infinity; that piece is mapped onto (0, 1] by x = a + L (e^{1/w-1} - 1).
// Interior breakpoints (kinks, scale changes) are honoured as initial
// subdivision points. Throws QuadratureError when the budget runs out.

Result<double> integrate(const RealIntegrand& f, double lo, double hi,
                         std::span<const double> breakpoints = {},
                         const Options& options = {});

Result<std::complex<double>> integrate(const ComplexIntegrand& f, double lo, double hi,
                                       std::span<const double> breakpoints = {},
                                       const Options& options = {});

// Integral of f over [start, inf) when f oscillates with angular frequency
// omega and decays too slowly for the mapped tail: half-period pieces are
// summed and the partial sums are accelerated with Wynn's epsilon algorithm.
Result<std::complex<double>> integrate_oscillatory_tail(const ComplexIntegrand& f, double start,
                                                        double omega,
                                                        const Options& options = {});

/// Dispatches a callable to the real or complex overload by its return type.
template <class F, class R = std::invoke_result_t<const F&, double>>
auto integrate(const F& f, double lo, double hi, std::span<const double> breakpoints = {},
               const Options& options = {}) {
  if constexpr (std::is_same_v<std::decay_t<R>, std::complex<double>>)
    return integrate(ComplexIntegrand(f), lo, hi, breakpoints, options);
  else
    return integrate(RealIntegrand(f), lo, hi, breakpoints, options);
}

}  // namespace ergo::quad
