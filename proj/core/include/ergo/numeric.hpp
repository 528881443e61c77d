#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace ergo {

using cplx = std::complex<double>;

namespace constants {
inline constexpr double e = 2.718281828459045235360287471352662;
inline constexpr double pi = 3.141592653589793238462643383279503;
}  // namespace constants

/// e^w - 1 without cancellation for small |w|.
cplx expm1(cplx w);

/// (e^w - 1)/w, equal to 1 at w = 0.
cplx phi1(cplx w);

/// 1 - e^{-w}, accurate for small |w|.
cplx one_minus_exp(cplx w);

/// log(1 + z), accurate for small |z|; principal branch.
cplx log1p(cplx z);

/// Principal log(z)/(z - 1), equal to 1 at z = 1. No branch-cut check.
cplx log_over_zm1(cplx z);

/// E1(x) for x > 0.
double expint_e1(double x);

/// e^x E1(x) for x > 0, without overflow for large x.
double scaled_expint_e1(double x);

/// True when z lies on (-inf, 0].
bool on_negative_axis(cplx z);

/// Richardson extrapolation of samples F(h_k) with h_{k+1} = h_k / ratio,
/// assuming an error expansion in integer powers of h starting at `order`.
double richardson(std::span<const double> samples, double ratio, int order = 1);

/// Logarithmically spaced grid of `count` points in [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// Uniform grid of `count` points in [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// Evaluates f near a removable singularity at `center` from its Taylor
/// expansion; coefficients come from samples on a circle of radius `radius`.
class RemovableSingularityPatch {
 public:
  RemovableSingularityPatch(const std::function<cplx(cplx)>& f, cplx center,
                            double radius, int order = 4);
  cplx operator()(cplx z) const;
  cplx center() const noexcept { return center_; }

 private:
  cplx center_;
  std::vector<cplx> coefficients_;
};

}  // namespace ergo
