#include "ergo/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ergo/error.hpp"

namespace ergo {

cplx expm1(cplx w) {
  if (std::abs(w) < 0.5) {
    cplx term = w;
    cplx sum = w;
    for (int k = 2; k < 30; ++k) {
      term *= w / static_cast<double>(k);
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::exp(w) - 1.0;
}

cplx phi1(cplx w) {
  if (w == cplx(0.0)) return 1.0;
  if (std::abs(w) < 0.5) {
    cplx term = 1.0;
    cplx sum = 1.0;
    for (int k = 2; k < 30; ++k) {
      term *= w / static_cast<double>(k);
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (std::exp(w) - 1.0) / w;
}

cplx one_minus_exp(cplx w) { return -expm1(-w); }

cplx log1p(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  if (std::abs(z) < 0.5) {
    // |1+z|^2 - 1 = 2x + x^2 + y^2, kept away from cancellation.
    return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
  }
  return std::log(1.0 + z);
}

cplx log_over_zm1(cplx z) {
  const cplx w = z - 1.0;
  if (std::abs(w) < 1e-4) {
    // log(1+w)/w = 1 - w/2 + w^2/3 - w^3/4 + w^4/5
    return 1.0 + w * (-0.5 + w * (1.0 / 3.0 + w * (-0.25 + w * 0.2)));
  }
  return log1p(w) / w;
}

double expint_e1(double x) {
  if (!(x > 0.0)) throw DomainError("E1 requires x > 0");
  return -std::expint(-x);
}

double scaled_expint_e1(double x) {
  if (!(x > 0.0)) throw DomainError("e^x E1(x) requires x > 0");
  if (x < 1.0) return std::exp(x) * expint_e1(x);
  // Modified Lentz evaluation of the continued fraction
  // E1(x) e^x = 1/(x+1- 1/(x+3- 4/(x+5- ...))).
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h;
}

bool on_negative_axis(cplx z) { return z.imag() == 0.0 && z.real() <= 0.0; }

double richardson(std::span<const double> samples, double ratio, int order) {
  if (samples.empty()) throw std::invalid_argument("richardson: no samples");
  std::vector<double> table(samples.begin(), samples.end());
  double factor = std::pow(ratio, order);
  for (std::size_t level = 1; level < table.size(); ++level) {
    for (std::size_t i = table.size() - 1; i >= level; --i) {
      table[i] = (factor * table[i] - table[i - 1]) / (factor - 1.0);
    }
    factor *= ratio;
  }
  return table.back();
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
    throw DomainError("log_grid requires 0 < lo <= hi and count > 0");
  }
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double ratio = hi / lo;
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo * std::pow(ratio, static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.back() = hi;
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (!(hi >= lo) || count == 0) throw DomainError("linear_grid requires lo <= hi");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

RemovableSingularityPatch::RemovableSingularityPatch(
    const std::function<cplx(cplx)>& f, cplx center, double radius, int order)
    : center_(center), coefficients_(static_cast<std::size_t>(order) + 1) {
  constexpr int samples = 32;
  std::vector<cplx> values(samples);
  std::vector<cplx> offsets(samples);
  for (int k = 0; k < samples; ++k) {
    offsets[k] = std::polar(radius, 2.0 * constants::pi * (k + 0.5) / samples);
    values[k] = f(center + offsets[k]);
  }
  // Trapezoidal Cauchy integral: c_n = mean of f(c + w_k) w_k^{-n}.
  for (int n = 0; n <= order; ++n) {
    cplx sum = 0.0;
    for (int k = 0; k < samples; ++k) sum += values[k] * std::pow(offsets[k], -n);
    coefficients_[n] = sum / static_cast<double>(samples);
  }
}

cplx RemovableSingularityPatch::operator()(cplx z) const {
  const cplx w = z - center_;
  cplx acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * w + *it;
  return acc;
}

}  // namespace ergo
