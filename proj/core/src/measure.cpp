#include "ergo/measure.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "ergo/error.hpp"
#include "ergo/quadrature.hpp"

namespace ergo {
namespace {

using namespace density;
constexpr double kInf = std::numeric_limits<double>::infinity();

quad::Options measure_quadrature() { return {1e-9, 0.0, 1'000'000}; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Traits {
  bool finite_tail;
  bool finite_near_zero;
  bool stieltjes_finite;
};

struct Support {
  double lo;
  double hi;
};

// ---------------------------------------------------------------------------
// Per-family structure: pdf, support, scales, integrability.

Traits traits(const PowerLaw&) { return {true, false, false}; }
Traits traits(const ExpDecay&) { return {true, true, true}; }
Traits traits(const Uniform&) { return {true, true, true}; }
Traits traits(const LogKernel&) { return {true, false, false}; }
Traits traits(const Tabulated&) { return {true, true, true}; }
Traits traits(const GammaKernel& f) { return {f.beta > 0.0, true, f.beta > 0.0 || f.p < 1.0}; }
Traits traits(const ShiftedReciprocal&) { return {false, true, true}; }
Traits traits(const LogPotential&) { return {false, true, true}; }
Traits traits(const Custom& f) { return {f.finite_tail, f.finite_near_zero, f.finite_near_zero}; }

Support support(const Uniform& f) { return {f.s0, f.s1}; }
Support support(const Tabulated& f) { return {f.grid.front(), f.grid.back()}; }
Support support(const Custom& f) { return {f.lo, f.hi}; }
template <class F>
Support support(const F&) {
  return {0.0, kInf};
}

double tabulated_pdf(const Tabulated& f, double s) {
  const auto& g = f.grid;
  if (s < g.front() || s > g.back()) return 0.0;
  auto it = std::upper_bound(g.begin(), g.end(), s);
  std::size_t i = static_cast<std::size_t>(std::distance(g.begin(), it));
  i = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, g.size() - 2);
  const double w = (s - g[i]) / (g[i + 1] - g[i]);
  return f.values[i] + w * (f.values[i + 1] - f.values[i]);
}

double pdf(const PowerLaw& f, double s) { return f.c * std::pow(s, -1.0 - f.alpha); }
double pdf(const ExpDecay& f, double s) { return f.c * std::exp(-f.beta * s); }
double pdf(const Uniform& f, double s) { return (s > f.s0 && s < f.s1) ? f.c : 0.0; }
double pdf(const LogKernel& f, double s) { return f.c * std::exp(-s) / s; }
double pdf(const Tabulated& f, double s) { return tabulated_pdf(f, s); }
double pdf(const GammaKernel& f, double s) {
  return f.c * std::pow(s, f.p - 1.0) * std::exp(-f.beta * s);
}
double pdf(const ShiftedReciprocal& f, double s) { return f.c / (s + f.kappa); }
double pdf(const LogPotential& f, double s) { return f.c * scaled_expint_e1(s); }
double pdf(const Custom& f, double s) { return f.pdf(s); }

std::vector<double> scales(const PowerLaw&) { return {1.0}; }
std::vector<double> scales(const ExpDecay& f) { return {1.0 / f.beta}; }
std::vector<double> scales(const Uniform& f) { return {f.s0, f.s1}; }
std::vector<double> scales(const LogKernel&) { return {1.0}; }
std::vector<double> scales(const Tabulated& f) { return f.grid; }
std::vector<double> scales(const GammaKernel& f) {
  return {f.beta > 0.0 ? 1.0 / f.beta : 1.0};
}
std::vector<double> scales(const ShiftedReciprocal& f) { return {f.kappa}; }
std::vector<double> scales(const LogPotential&) { return {1.0}; }
std::vector<double> scales(const Custom& f) { return f.scales; }

// ---------------------------------------------------------------------------
// Validation.

void require(bool ok, const std::string& family, const std::string& what) {
  if (!ok) throw DomainError(family + ": " + what);
}

void validate(const PowerLaw& f) {
  require(f.c > 0.0 && std::isfinite(f.c), "power_law", "c must be positive");
  require(f.alpha > 0.0 && f.alpha < 1.0, "power_law", "alpha must lie in (0, 1)");
}
void validate(const ExpDecay& f) {
  require(f.c > 0.0 && std::isfinite(f.c), "exp_decay", "c must be positive");
  require(f.beta > 0.0 && std::isfinite(f.beta), "exp_decay", "beta must be positive");
}
void validate(const Uniform& f) {
  require(f.c > 0.0 && std::isfinite(f.c), "uniform", "c must be positive");
  require(f.s0 >= 0.0 && f.s0 < f.s1 && std::isfinite(f.s1), "uniform",
          "need 0 <= s0 < s1 < inf");
}
void validate(const LogKernel& f) {
  require(f.c > 0.0 && std::isfinite(f.c), "log_kernel", "c must be positive");
}
void validate(const Tabulated& f) {
  require(f.grid.size() >= 2, "tabulated", "grid needs at least two points");
  require(f.grid.size() == f.values.size(), "tabulated", "grid and values differ in length");
  require(f.grid.front() >= 0.0, "tabulated", "grid must lie in [0, inf)");
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    require(std::isfinite(f.grid[i]) && std::isfinite(f.values[i]), "tabulated",
            "non-finite entry at index " + std::to_string(i));
    require(f.values[i] >= 0.0, "tabulated", "negative density at index " + std::to_string(i));
    if (i > 0) {
      require(f.grid[i] > f.grid[i - 1], "tabulated",
              "grid not strictly increasing at index " + std::to_string(i));
    }
  }
}
void validate(const GammaKernel& f) {
  require(f.c > 0.0 && std::isfinite(f.c), "gamma_kernel", "c must be positive");
  require(f.p > 0.0 && std::isfinite(f.p), "gamma_kernel", "p must be positive");
  require(f.beta >= 0.0 && std::isfinite(f.beta), "gamma_kernel", "beta must be >= 0");
}
void validate(const ShiftedReciprocal& f) {
  require(f.c > 0.0 && std::isfinite(f.c), "shifted_reciprocal", "c must be positive");
  require(f.kappa > 0.0 && std::isfinite(f.kappa), "shifted_reciprocal",
          "kappa must be positive");
}
void validate(const LogPotential& f) {
  require(f.c > 0.0 && std::isfinite(f.c), "log_potential", "c must be positive");
}
void validate(const Custom& f) {
  require(static_cast<bool>(f.pdf), "custom", "missing density callable");
  require(f.lo >= 0.0 && f.lo < f.hi, "custom", "need 0 <= lo < hi");
}

// ---------------------------------------------------------------------------
// Exact piecewise-linear integrals for tabulated densities.

// Integral of s^k L(s) over [a, b] where L is the tabulated interpolant.
double tabulated_moment(const Tabulated& f, double a, double b, int k) {
  const auto& g = f.grid;
  const auto& v = f.values;
  a = std::max(a, g.front());
  b = std::min(b, g.back());
  if (!(b > a)) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double lo = std::max(a, g[i]);
    const double hi = std::min(b, g[i + 1]);
    if (!(hi > lo)) continue;
    const double q = (v[i + 1] - v[i]) / (g[i + 1] - g[i]);
    const double p = v[i] - q * g[i];
    const double k1 = k + 1.0;
    const double k2 = k + 2.0;
    sum += p * (std::pow(hi, k1) - std::pow(lo, k1)) / k1 +
           q * (std::pow(hi, k2) - std::pow(lo, k2)) / k2;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Closed forms. The generic templates say "no closed form"; overloads win.

template <class F>
std::optional<double> closed_tail(const F&, double) {
  return std::nullopt;
}
std::optional<double> closed_tail(const PowerLaw& f, double r) {
  if (r == 0.0) return kInf;
  return f.c * std::pow(r, -f.alpha) / f.alpha;
}
std::optional<double> closed_tail(const ExpDecay& f, double r) {
  return f.c * std::exp(-f.beta * r) / f.beta;
}
std::optional<double> closed_tail(const Uniform& f, double r) {
  return f.c * std::max(0.0, f.s1 - std::max(r, f.s0));
}
std::optional<double> closed_tail(const LogKernel& f, double r) {
  if (r == 0.0) return kInf;
  return f.c * expint_e1(r);
}
std::optional<double> closed_tail(const Tabulated& f, double r) {
  return tabulated_moment(f, r, f.grid.back(), 0);
}
std::optional<double> closed_tail(const GammaKernel& f, double r) {
  if (f.beta == 0.0) return kInf;
  return f.c * std::tgamma(f.p) * boost::math::gamma_q(f.p, f.beta * r) *
         std::pow(f.beta, -f.p);
}

// mu(lo, hi] without subtracting two nearly equal tails.
template <class F>
std::optional<double> closed_interval(const F& f, double lo, double hi) {
  auto a = closed_tail(f, lo);
  auto b = closed_tail(f, hi);
  if (a && b) return std::max(0.0, *a - *b);
  return std::nullopt;
}
std::optional<double> closed_interval(const PowerLaw& f, double lo, double hi) {
  return f.c * std::pow(lo, -f.alpha) / f.alpha *
         -std::expm1(-f.alpha * std::log1p((hi - lo) / lo));
}
std::optional<double> closed_interval(const ExpDecay& f, double lo, double hi) {
  return f.c * std::exp(-f.beta * lo) / f.beta * -std::expm1(-f.beta * (hi - lo));
}

template <class F>
std::optional<double> closed_first_moment(const F&, double) {
  return std::nullopt;
}
std::optional<double> closed_first_moment(const PowerLaw& f, double t) {
  return f.c * std::pow(t, 1.0 - f.alpha) / (1.0 - f.alpha);
}
std::optional<double> closed_first_moment(const ExpDecay& f, double t) {
  const double x = f.beta * t;
  double core;  // 1 - e^{-x}(1 + x)
  if (x < 1e-2) {
    // sum_{k>=2} (-1)^k (k-1) x^k / k!
    double term = x * x / 2.0;
    core = 0.0;
    for (int k = 2; k < 12; ++k) {
      core += ((k % 2 == 0) ? 1.0 : -1.0) * (k - 1) * term;
      term *= x / (k + 1.0);
    }
  } else {
    core = -std::expm1(-x) - x * std::exp(-x);
  }
  return f.c * core / (f.beta * f.beta);
}
std::optional<double> closed_first_moment(const Uniform& f, double t) {
  if (t <= f.s0) return 0.0;
  const double top = std::min(t, f.s1);
  return f.c * (top * top - f.s0 * f.s0) / 2.0;
}
std::optional<double> closed_first_moment(const LogKernel& f, double t) {
  return -f.c * std::expm1(-t);
}
std::optional<double> closed_first_moment(const Tabulated& f, double t) {
  return tabulated_moment(f, 0.0, t, 1);
}
std::optional<double> closed_first_moment(const GammaKernel& f, double t) {
  if (f.beta == 0.0) return f.c * std::pow(t, f.p + 1.0) / (f.p + 1.0);
  return f.c * std::tgamma(f.p + 1.0) * boost::math::gamma_p(f.p + 1.0, f.beta * t) *
         std::pow(f.beta, -(f.p + 1.0));
}
std::optional<double> closed_first_moment(const ShiftedReciprocal& f, double t) {
  const double x = t / f.kappa;
  double core;  // x - log(1 + x)
  if (x < 1e-2) {
    core = 0.0;
    double term = x * x;
    for (int k = 2; k < 12; ++k) {
      core += ((k % 2 == 0) ? 1.0 : -1.0) * term / k;
      term *= x;
    }
  } else {
    core = x - std::log1p(x);
  }
  return f.c * f.kappa * core;
}

template <class F>
std::optional<double> closed_levy(const F&) {
  return std::nullopt;
}
std::optional<double> closed_levy(const PowerLaw& f) {
  return f.c * constants::pi / std::sin(constants::pi * f.alpha);
}
std::optional<double> closed_levy(const ExpDecay& f) {
  return f.c * (1.0 / f.beta - scaled_expint_e1(f.beta));
}
std::optional<double> closed_levy(const Uniform& f) {
  const double width = f.s1 - f.s0;
  return f.c * (width - std::log1p(width / (1.0 + f.s0)));
}
std::optional<double> closed_levy(const LogKernel& f) { return f.c * scaled_expint_e1(1.0); }

template <class F>
std::optional<cplx> closed_one_minus_exp(const F&, cplx) {
  return std::nullopt;
}
std::optional<cplx> closed_one_minus_exp(const PowerLaw& f, cplx z) {
  return f.c * std::tgamma(1.0 - f.alpha) / f.alpha * std::exp(f.alpha * std::log(z));
}
std::optional<cplx> closed_one_minus_exp(const ExpDecay& f, cplx z) {
  return f.c * z / (f.beta * (f.beta + z));
}
std::optional<cplx> closed_one_minus_exp(const Uniform& f, cplx z) {
  const double width = f.s1 - f.s0;
  if (std::abs(z) * f.s1 < 0.5) {
    // sum_{k>=1} (-1)^{k+1} z^k (s1^{k+1} - s0^{k+1}) / (k+1)!
    cplx sum = 0.0;
    cplx zk = 1.0;
    double fact = 1.0;
    for (int k = 1; k < 40; ++k) {
      zk *= z;
      fact *= (k + 1.0);
      const cplx term = ((k % 2 == 1) ? 1.0 : -1.0) * zk *
                        (std::pow(f.s1, k + 1.0) - std::pow(f.s0, k + 1.0)) / fact;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return f.c * sum;
  }
  return f.c * (width - std::exp(-f.s0 * z) * width * phi1(-width * z));
}
std::optional<cplx> closed_one_minus_exp(const LogKernel& f, cplx z) { return f.c * log1p(z); }
std::optional<cplx> closed_one_minus_exp(const GammaKernel& f, cplx z) {
  if (f.beta == 0.0) return std::nullopt;
  return f.c * std::tgamma(f.p) * std::pow(f.beta, -f.p) *
         (-expm1(-f.p * log1p(z / f.beta)));
}

template <class F>
std::optional<cplx> closed_exp(const F&, cplx) {
  return std::nullopt;
}
std::optional<cplx> closed_exp(const ExpDecay& f, cplx z) { return f.c / (f.beta + z); }
std::optional<cplx> closed_exp(const Uniform& f, cplx z) {
  const double width = f.s1 - f.s0;
  return f.c * std::exp(-f.s0 * z) * width * phi1(-width * z);
}
std::optional<cplx> closed_exp(const GammaKernel& f, cplx z) {
  return f.c * std::tgamma(f.p) * std::exp(-f.p * std::log(f.beta + z));
}
std::optional<cplx> closed_exp(const ShiftedReciprocal& f, cplx z) {
  if (z.imag() != 0.0) return std::nullopt;
  return f.c * scaled_expint_e1(f.kappa * z.real());
}
std::optional<cplx> closed_exp(const LogPotential& f, cplx z) { return f.c * log_over_zm1(z); }

template <class F>
std::optional<cplx> closed_stieltjes(const F&, cplx) {
  return std::nullopt;
}
std::optional<cplx> closed_stieltjes(const ExpDecay& f, cplx z) {
  if (z.imag() != 0.0 || z.real() <= 0.0) return std::nullopt;
  return f.c * scaled_expint_e1(f.beta * z.real());
}
std::optional<cplx> closed_stieltjes(const Uniform& f, cplx z) {
  return f.c * (std::log(z + f.s1) - std::log(z + f.s0));
}
std::optional<cplx> closed_stieltjes(const GammaKernel& f, cplx z) {
  if (f.beta != 0.0) return std::nullopt;
  return f.c * constants::pi * std::exp((f.p - 1.0) * std::log(z)) /
         std::sin(constants::pi * f.p);
}
std::optional<cplx> closed_stieltjes(const ShiftedReciprocal& f, cplx z) {
  return f.c / f.kappa * log_over_zm1(z / f.kappa);
}

template <class F>
std::optional<double> closed_moment(const F&, int, double) {
  return std::nullopt;
}
std::optional<double> closed_moment(const PowerLaw& f, int n, double t) {
  return f.c * std::tgamma(n - f.alpha) * std::pow(t, f.alpha - n);
}
std::optional<double> closed_moment(const ExpDecay& f, int n, double t) {
  return f.c * std::tgamma(n + 1.0) * std::pow(f.beta + t, -(n + 1.0));
}
std::optional<double> closed_moment(const LogKernel& f, int n, double t) {
  return f.c * std::tgamma(static_cast<double>(n)) * std::pow(1.0 + t, -static_cast<double>(n));
}
std::optional<double> closed_moment(const GammaKernel& f, int n, double t) {
  return f.c * std::tgamma(n + f.p) * std::pow(f.beta + t, -(n + f.p));
}

// ---------------------------------------------------------------------------
// Quadrature route.

template <class T, class F, class K>
T integrate_family(const F& f, const K& kernel, double lo, double hi,
                   std::vector<double> extra_breaks = {}) {
  const Support sup = support(f);
  lo = std::max(lo, sup.lo);
  hi = std::min(hi, sup.hi);
  if (!(hi > lo)) return T{};
  auto breaks = scales(f);
  breaks.insert(breaks.end(), extra_breaks.begin(), extra_breaks.end());
  auto integrand = [&](double s) -> T {
    const double d = pdf(f, s);
    if (d == 0.0) return T{};
    return kernel(s) * d;
  };
  if constexpr (std::is_same_v<T, double>) {
    return quad::integrate(quad::RealIntegrand(integrand), lo, hi, breaks,
                           measure_quadrature())
        .value;
  } else {
    return quad::integrate(quad::ComplexIntegrand(integrand), lo, hi, breaks,
                           measure_quadrature())
        .value;
  }
}

// For |im z| > re z the kernel e^{-sz} oscillates faster than it decays, and a
// slowly decaying density leaves infinitely many periods in the tail. The head
// [0, X] is integrated adaptively, the tail period by period.
template <class F>
bool oscillatory(const F& f, cplx z) {
  return std::isinf(support(f).hi) && std::abs(z.imag()) > z.real();
}

template <class F>
cplx oscillatory_exp_integral(const F& f, cplx z, Kernel kernel) {
  auto breaks = scales(f);
  double cut = 1.0 / std::abs(z);
  for (double b : breaks) cut = std::max(cut, b);
  cut = std::max(4.0 * cut, support(f).lo + 1.0 / std::abs(z));
  const auto kernel_fn = [z, kernel](double s) {
    return kernel == Kernel::one_minus_exp ? one_minus_exp(s * z) : std::exp(-s * z);
  };
  const cplx head = integrate_family<cplx>(f, kernel_fn, 0.0, cut, {1.0 / std::abs(z)});
  const cplx tail_exp =
      quad::integrate_oscillatory_tail(
          [&](double s) -> cplx {
            const double d = pdf(f, s);
            return d == 0.0 ? cplx{} : std::exp(-s * z) * d;
          },
          cut, z.imag(), measure_quadrature())
          .value;
  if (kernel == Kernel::exp) return head + tail_exp;
  const double tail_mass = integrate_family<double>(f, [](double) { return 1.0; }, cut, kInf);
  return head + tail_mass - tail_exp;
}

template <class F>
double family_tail(const F& f, double r, EvalMode mode) {
  const Traits tr = traits(f);
  if (!tr.finite_tail) return kInf;
  if (r == 0.0 && !tr.finite_near_zero) return kInf;
  if (mode == EvalMode::automatic) {
    if (auto v = closed_tail(f, r)) return *v;
  }
  return integrate_family<double>(f, [](double) { return 1.0; }, r, kInf);
}

template <class F>
double family_interval(const F& f, double lo, double hi, EvalMode mode) {
  const Traits tr = traits(f);
  if (lo == 0.0 && !tr.finite_near_zero) return kInf;
  if (tr.finite_tail && mode == EvalMode::automatic) {
    if (auto v = closed_interval(f, lo, hi)) return *v;
  }
  return integrate_family<double>(f, [](double) { return 1.0; }, lo, hi);
}

template <class F>
double family_first_moment(const F& f, double t, EvalMode mode) {
  if (mode == EvalMode::automatic) {
    if (auto v = closed_first_moment(f, t)) return *v;
  }
  return integrate_family<double>(f, [](double s) { return s; }, 0.0, t);
}

template <class F>
double family_levy(const F& f, EvalMode mode) {
  if (!traits(f).finite_tail) return kInf;
  if (mode == EvalMode::automatic) {
    if (auto v = closed_levy(f)) return *v;
  }
  return integrate_family<double>(f, [](double s) { return s / (1.0 + s); }, 0.0, kInf);
}

template <class F>
cplx family_exp_integral(const F& f, cplx z, Kernel kernel, EvalMode mode) {
  const Traits tr = traits(f);
  const double scale = 1.0 / std::abs(z);
  if (kernel == Kernel::one_minus_exp) {
    if (!tr.finite_tail) {
      throw DivergenceError(family_name(DensityComponent(f)) +
                            ": 1 - e^{-sz} integral diverges (infinite tail mass)");
    }
    if (mode == EvalMode::automatic) {
      if (auto v = closed_one_minus_exp(f, z)) return *v;
    }
    if (oscillatory(f, z)) return oscillatory_exp_integral(f, z, kernel);
    return integrate_family<cplx>(f, [z](double s) { return one_minus_exp(s * z); }, 0.0,
                                  kInf, {scale});
  }
  if (!tr.finite_near_zero) {
    throw DivergenceError(family_name(DensityComponent(f)) +
                          ": Laplace integral diverges (infinite mass near 0)");
  }
  if (!tr.finite_tail && z.real() <= 0.0) {
    throw DivergenceError(family_name(DensityComponent(f)) +
                          ": Laplace integral diverges at re z = 0 (infinite mass)");
  }
  if (mode == EvalMode::automatic) {
    if (auto v = closed_exp(f, z)) return *v;
  }
  if (oscillatory(f, z)) return oscillatory_exp_integral(f, z, kernel);
  return integrate_family<cplx>(f, [z](double s) { return std::exp(-s * z); }, 0.0, kInf,
                                {scale, 10.0 * scale});
}

template <class F>
cplx family_stieltjes(const F& f, cplx z, EvalMode mode) {
  if (!traits(f).stieltjes_finite) {
    throw DivergenceError(family_name(DensityComponent(f)) +
                          ": Stieltjes integral diverges for this density");
  }
  if (mode == EvalMode::automatic) {
    if (auto v = closed_stieltjes(f, z)) return *v;
  }
  std::vector<double> breaks{std::abs(z)};
  if (z.real() < 0.0) breaks.push_back(-z.real());
  return integrate_family<cplx>(f, [z](double s) { return 1.0 / (z + s); }, 0.0, kInf,
                                breaks);
}

template <class F>
double family_moment(const F& f, int n, double t, EvalMode mode) {
  if (n == 0 && !traits(f).finite_near_zero) {
    throw DivergenceError(family_name(DensityComponent(f)) + ": zeroth moment diverges");
  }
  if (mode == EvalMode::automatic) {
    if (auto v = closed_moment(f, n, t)) return *v;
  }
  const double peak = n > 0 ? n / t : 1.0 / t;
  return integrate_family<double>(
      f,
      [n, t](double s) { return std::exp(n * std::log(s) - s * t); },
      0.0, kInf, {peak, 1.0 / t});
}

void check_r(double r, const char* what) {
  if (!(r >= 0.0) || std::isinf(r)) throw DomainError(std::string(what) + ": need finite r >= 0");
}

}  // namespace

std::string family_name(const DensityComponent& component) {
  return std::visit(
      overloaded{[](const PowerLaw&) { return std::string("power_law"); },
                 [](const ExpDecay&) { return std::string("exp_decay"); },
                 [](const Uniform&) { return std::string("uniform"); },
                 [](const LogKernel&) { return std::string("log_kernel"); },
                 [](const Tabulated&) { return std::string("tabulated"); },
                 [](const GammaKernel&) { return std::string("gamma_kernel"); },
                 [](const ShiftedReciprocal&) { return std::string("shifted_reciprocal"); },
                 [](const LogPotential&) { return std::string("log_potential"); },
                 [](const Custom& c) { return "custom(" + c.label + ")"; }},
      component);
}

RadonMeasure::RadonMeasure(std::vector<Atom> atoms, std::vector<DensityComponent> densities)
    : atoms_(std::move(atoms)), densities_(std::move(densities)) {
  for (const auto& a : atoms_) {
    if (!(a.location > 0.0) || !std::isfinite(a.location)) {
      throw DomainError("atom location must be a finite positive number");
    }
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw DomainError("atom weight must be a finite positive number");
    }
  }
  for (const auto& d : densities_) std::visit([](const auto& f) { validate(f); }, d);
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& x, const Atom& y) { return x.location < y.location; });
}

RadonMeasure RadonMeasure::point(double location, double weight) {
  return RadonMeasure({Atom{location, weight}}, {});
}

RadonMeasure RadonMeasure::with_density(DensityComponent component) {
  return RadonMeasure({}, {std::move(component)});
}

double RadonMeasure::density(double s) const {
  double sum = 0.0;
  for (const auto& d : densities_) sum += std::visit([s](const auto& f) { return pdf(f, s); }, d);
  return sum;
}

std::vector<double> RadonMeasure::scales() const {
  std::vector<double> out;
  for (const auto& a : atoms_) out.push_back(a.location);
  for (const auto& d : densities_) {
    auto s = std::visit([](const auto& f) { return ergo::scales(f); }, d);
    out.insert(out.end(), s.begin(), s.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool RadonMeasure::has_finite_tails() const {
  return std::all_of(densities_.begin(), densities_.end(), [](const auto& d) {
    return std::visit([](const auto& f) { return traits(f).finite_tail; }, d);
  });
}

bool RadonMeasure::has_finite_mass_near_zero() const {
  return std::all_of(densities_.begin(), densities_.end(), [](const auto& d) {
    return std::visit([](const auto& f) { return traits(f).finite_near_zero; }, d);
  });
}

RadonMeasure RadonMeasure::operator+(const RadonMeasure& other) const {
  auto atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  auto dens = densities_;
  dens.insert(dens.end(), other.densities_.begin(), other.densities_.end());
  return RadonMeasure(std::move(atoms), std::move(dens));
}

RadonMeasure RadonMeasure::scaled(double factor) const {
  if (!(factor > 0.0)) throw DomainError("measure scale factor must be positive");
  auto atoms = atoms_;
  for (auto& a : atoms) a.weight *= factor;
  std::vector<DensityComponent> dens;
  for (const auto& d : densities_) {
    dens.push_back(std::visit(
        overloaded{[factor](Tabulated f) -> DensityComponent {
                     for (auto& v : f.values) v *= factor;
                     return f;
                   },
                   [factor](Custom f) -> DensityComponent {
                     auto inner = f.pdf;
                     f.pdf = [inner, factor](double s) { return factor * inner(s); };
                     return f;
                   },
                   [factor](auto f) -> DensityComponent {
                     f.c *= factor;
                     return f;
                   }},
        d));
  }
  return RadonMeasure(std::move(atoms), std::move(dens));
}

static double mass_above(const RadonMeasure& mu, double r, EvalMode mode) {
  double sum = 0.0;
  for (const auto& a : mu.atoms()) {
    if (a.location > r) sum += a.weight;
  }
  for (const auto& d : mu.densities()) {
    sum += std::visit([&](const auto& f) { return family_tail(f, r, mode); }, d);
  }
  return sum;
}

double tail_mass(const RadonMeasure& mu, double r, EvalMode mode) {
  if (!(r > 0.0) || std::isinf(r)) throw DomainError("tail_mass: need finite r > 0");
  return mass_above(mu, r, mode);
}

double interval_mass(const RadonMeasure& mu, double lo, double hi, EvalMode mode) {
  check_r(lo, "interval_mass");
  if (!(hi >= lo)) throw DomainError("interval_mass: need lo <= hi");
  if (hi == lo) return 0.0;
  double sum = 0.0;
  for (const auto& a : mu.atoms()) {
    if (a.location > lo && a.location <= hi) sum += a.weight;
  }
  for (const auto& d : mu.densities()) {
    sum += std::visit([&](const auto& f) { return family_interval(f, lo, hi, mode); }, d);
  }
  return sum;
}

double total_mass(const RadonMeasure& mu, EvalMode mode) { return mass_above(mu, 0.0, mode); }

double truncated_first_moment(const RadonMeasure& mu, double t, EvalMode mode) {
  if (!(t > 0.0)) throw DomainError("truncated_first_moment: need t > 0");
  double sum = 0.0;
  for (const auto& a : mu.atoms()) {
    if (a.location <= t) sum += a.location * a.weight;
  }
  for (const auto& d : mu.densities()) {
    sum += std::visit([&](const auto& f) { return family_first_moment(f, t, mode); }, d);
  }
  return sum;
}

double levy_integral(const RadonMeasure& mu, EvalMode mode) {
  double sum = 0.0;
  for (const auto& a : mu.atoms()) sum += a.weight * a.location / (1.0 + a.location);
  for (const auto& d : mu.densities()) {
    sum += std::visit([&](const auto& f) { return family_levy(f, mode); }, d);
  }
  return sum;
}

cplx exp_integral(const RadonMeasure& mu, cplx z, Kernel kernel, EvalMode mode) {
  if (!(z.real() >= 0.0)) throw DomainError("exp_integral: need re z >= 0");
  if (kernel == Kernel::one_minus_exp && z == cplx(0.0)) return 0.0;
  cplx sum = 0.0;
  for (const auto& a : mu.atoms()) {
    sum += a.weight * (kernel == Kernel::one_minus_exp ? one_minus_exp(a.location * z)
                                                       : std::exp(-a.location * z));
  }
  if (kernel == Kernel::exp && z == cplx(0.0)) {
    const double mass = total_mass(mu, mode);
    if (std::isinf(mass)) throw DivergenceError("exp_integral: infinite total mass at z = 0");
    return mass;
  }
  for (const auto& d : mu.densities()) {
    sum += std::visit([&](const auto& f) { return family_exp_integral(f, z, kernel, mode); }, d);
  }
  return sum;
}

cplx stieltjes_transform(const RadonMeasure& mu, cplx z, EvalMode mode) {
  if (on_negative_axis(z)) throw BranchCutError("stieltjes_transform: z on (-inf, 0]");
  cplx sum = 0.0;
  for (const auto& a : mu.atoms()) sum += a.weight / (z + a.location);
  for (const auto& d : mu.densities()) {
    sum += std::visit([&](const auto& f) { return family_stieltjes(f, z, mode); }, d);
  }
  return sum;
}

double laplace_moment(const RadonMeasure& mu, int n, double t, EvalMode mode) {
  if (n < 0) throw DomainError("laplace_moment: need n >= 0");
  if (!(t > 0.0)) throw DomainError("laplace_moment: need t > 0");
  double sum = 0.0;
  for (const auto& a : mu.atoms()) {
    sum += a.weight * std::pow(a.location, n) * std::exp(-a.location * t);
  }
  for (const auto& d : mu.densities()) {
    sum += std::visit([&](const auto& f) { return family_moment(f, n, t, mode); }, d);
  }
  return sum;
}

}  // namespace ergo
