#pragma once

#include <functional>
#include <span>

#include "ergo/bernstein.hpp"
#include "ergo/measure.hpp"

namespace ergo {

/// (L mu)(z) = integral of e^{-sz} mu(ds); re z > 0, or re z >= 0 for finite mass.
cplx laplace_measure(const RadonMeasure& mu, cplx z, EvalMode mode = EvalMode::automatic);

/// Integral over (0, inf) of h(t) e^{-zt} dt for |h(t)| <= growth (1 + t), re z > 0.
/// Throws DomainError if a sample breaks the growth bound.
cplx laplace_function(const std::function<double(double)>& h, cplx z, double growth,
                      std::span<const double> breakpoints = {});

/// |L[t r(t)](z) - (g(z) - a/2)/z^2| / |(g(z) - a/2)/z^2|.
double rate_laplace_residual(const BernsteinFunction& g, cplx z);

/// cm_probe on the right derivative of t r(t), which is a/2 + mu(t, inf).
CmVerdict cbf_rate_probe(const BernsteinFunction& g, std::span<const double> grid, int n_max = 6);
CmVerdict cbf_rate_probe(const BernsteinFunction& g);

}  // namespace ergo
