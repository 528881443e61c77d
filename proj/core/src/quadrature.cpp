#include "ergo/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "ergo/error.hpp"

namespace ergo::quad {
namespace {

// QUADPACK qk21 abscissae and weights. Odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double constants_pi() { return 3.141592653589793238462643383279502884; }

template <class T>
struct Segment {
  double lo;
  double hi;
  T value;
  double error;
  double abs_value;
  bool operator<(const Segment& other) const { return error < other.error; }
};

double magnitude(double v) { return std::abs(v); }
double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T, class F>
Segment<T> kronrod21(const F& g, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const T fc = g(center);
  T kronrod = fc * kWgk[10];
  T gauss{};
  double abs_sum = magnitude(fc) * kWgk[10];
  std::array<T, 10> f1{};
  std::array<T, 10> f2{};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = g(center - dx);
    f2[j] = g(center + dx);
    kronrod += (f1[j] + f2[j]) * kWgk[j];
    abs_sum += (magnitude(f1[j]) + magnitude(f2[j])) * kWgk[j];
    if (j % 2 == 1) gauss += (f1[j] + f2[j]) * kWg[j / 2];
  }
  const T mean = kronrod * 0.5;
  double asc = magnitude(fc - mean) * kWgk[10];
  for (std::size_t j = 0; j < 10; ++j) {
    asc += (magnitude(f1[j] - mean) + magnitude(f2[j] - mean)) * kWgk[j];
  }
  const double abs_half = std::abs(half);
  asc *= abs_half;
  abs_sum *= abs_half;
  double err = magnitude((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * abs_sum, err);
  }
  return {lo, hi, kronrod * half, err, abs_sum};
}

template <class T, class F>
Result<T> adaptive(const F& raw, double lo, double hi, std::span<const double> breakpoints,
                   const Options& options) {
  if (!(lo <= hi) || std::isnan(lo) || std::isinf(lo)) {
    throw DomainError("integrate: need finite lo <= hi");
  }
  Result<T> result;
  if (lo == hi) return result;

  std::vector<double> cuts{lo};
  for (double b : breakpoints) {
    if (b > lo && b < hi && std::isfinite(b)) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const bool infinite = std::isinf(hi);
  if (!infinite) cuts.push_back(hi);

  // Finite pieces are integrated in x; the tail [cuts.back(), inf) in u.
  const double tail_start = cuts.back();
  const double tail_scale = tail_start > 0.0 ? tail_start : 1.0;
  std::size_t evaluations = 0;

  auto direct = [&](double x) -> T {
    ++evaluations;
    return raw(x);
  };
  // x = a + L (e^{1/w - 1} - 1): an algebraic tail x^{-1-p} becomes
  // e^{-p/w} / w^2, which vanishes smoothly at w = 0 for every p > 0.
  auto mapped = [&](double w) -> T {
    ++evaluations;
    if (!(w > 0.0)) return T{};
    const double u = 1.0 / w - 1.0;
    if (u > 700.0) return T{};
    const double x = tail_start + tail_scale * std::expm1(u);
    const double jacobian = tail_scale * std::exp(u) / (w * w);
    if (!std::isfinite(x) || !std::isfinite(jacobian)) return T{};
    const T v = raw(x);
    return v * jacobian;
  };

  std::priority_queue<Segment<T>> finite_heap;
  std::priority_queue<Segment<T>> tail_heap;
  T total{};
  double total_error = 0.0;
  double total_abs = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto s = kronrod21<T>(direct, cuts[i], cuts[i + 1]);
    total += s.value;
    total_error += s.error;
    total_abs += s.abs_value;
    finite_heap.push(s);
  }
  if (infinite) {
    auto s = kronrod21<T>(mapped, 0.0, 1.0);
    total += s.value;
    total_error += s.error;
    total_abs += s.abs_value;
    tail_heap.push(s);
  }

  // Segments that can no longer be bisected are retired with their error.
  T retired_value{};
  double retired_error = 0.0;
  auto done = [&] {
    // Cancelling integrands cannot beat the rounding floor set by the integral of |f|.
    const double tol = std::max({options.abs_tol, options.rel_tol * magnitude(total),
                                 100.0 * kEps * total_abs});
    return total_error - retired_error <= tol;
  };
  while (!done()) {
    if (evaluations >= options.max_evaluations) {
      throw QuadratureError("integrate: evaluation budget exhausted (error estimate " +
                                std::to_string(total_error) + ")",
                            total_error);
    }
    const bool take_tail = !tail_heap.empty() &&
                           (finite_heap.empty() || tail_heap.top().error > finite_heap.top().error);
    auto& heap = take_tail ? tail_heap : finite_heap;
    if (heap.empty()) break;
    const Segment<T> worst = heap.top();
    if (worst.error <= 0.0) break;
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const bool too_small = !(mid > worst.lo && mid < worst.hi) ||
                           (worst.hi - worst.lo) <= 4.0 * kEps * std::max(std::abs(mid), 1e-300);
    if (too_small) {
      retired_value += worst.value;
      retired_error += worst.error;
      if (finite_heap.empty() && tail_heap.empty()) break;
      continue;
    }
    Segment<T> left = take_tail ? kronrod21<T>(mapped, worst.lo, mid)
                                : kronrod21<T>(direct, worst.lo, mid);
    Segment<T> right = take_tail ? kronrod21<T>(mapped, mid, worst.hi)
                                 : kronrod21<T>(direct, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Recompute the sum from the surviving segments to shed accumulated rounding.
  T sum = retired_value;
  double err = retired_error;
  for (auto* heap : {&finite_heap, &tail_heap}) {
    while (!heap->empty()) {
      sum += heap->top().value;
      err += heap->top().error;
      heap->pop();
    }
  }
  result.value = sum;
  result.error = err;
  result.evaluations = evaluations;
  return result;
}

// Highest even column of the epsilon table built from the partial sums.
std::complex<double> wynn_epsilon(std::span<const std::complex<double>> sums) {
  using C = std::complex<double>;
  std::vector<C> previous(sums.size() + 1, C{});
  std::vector<C> current(sums.begin(), sums.end());
  C best = sums.back();
  for (int column = 1; current.size() > 1; ++column) {
    std::vector<C> next(current.size() - 1);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const C diff = current[i + 1] - current[i];
      if (std::abs(diff) == 0.0) return best;
      next[i] = previous[i + 1] + 1.0 / diff;
    }
    previous = std::move(current);
    current = std::move(next);
    if (column % 2 == 0) best = current.back();
  }
  return best;
}

}  // namespace

Result<std::complex<double>> integrate_oscillatory_tail(const ComplexIntegrand& f, double start,
                                                        double omega, const Options& options) {
  if (!std::isfinite(start) || !(std::abs(omega) > 0.0) || !std::isfinite(omega)) {
    throw DomainError("integrate_oscillatory_tail: need finite start and omega != 0");
  }
  constexpr std::size_t kMaxPieces = 400;
  constexpr std::size_t kWindow = 40;
  const double half_period = constants_pi() / std::abs(omega);
  const Options piece{0.01 * options.rel_tol, 0.0, options.max_evaluations};

  Result<std::complex<double>> result;
  std::vector<std::complex<double>> sums;
  std::complex<double> running{};
  std::complex<double> previous{};
  for (std::size_t k = 0; k < kMaxPieces; ++k) {
    const double lo = start + static_cast<double>(k) * half_period;
    const auto r = adaptive<std::complex<double>>(f, lo, lo + half_period, {}, piece);
    result.evaluations += r.evaluations;
    running += r.value;
    sums.push_back(running);
    if (result.evaluations >= options.max_evaluations) break;
    if (sums.size() < 4) continue;
    const std::size_t first = sums.size() > kWindow ? sums.size() - kWindow : 0;
    const auto estimate = wynn_epsilon(std::span(sums).subspan(first));
    const double change = std::abs(estimate - previous);
    previous = estimate;
    if (sums.size() >= 6 &&
        change <= std::max(options.abs_tol, options.rel_tol * std::abs(estimate))) {
      result.value = estimate;
      result.error = change;
      return result;
    }
  }
  throw QuadratureError("integrate_oscillatory_tail: no convergence", std::abs(running));
}

Result<double> integrate(const RealIntegrand& f, double lo, double hi,
                         std::span<const double> breakpoints, const Options& options) {
  return adaptive<double>(f, lo, hi, breakpoints, options);
}

Result<std::complex<double>> integrate(const ComplexIntegrand& f, double lo, double hi,
                                       std::span<const double> breakpoints,
                                       const Options& options) {
  return adaptive<std::complex<double>>(f, lo, hi, breakpoints, options);
}

}  // namespace ergo::quad
