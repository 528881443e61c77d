#include "ergo/stieltjes.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include "ergo/error.hpp"

namespace ergo {

StieltjesFunction::StieltjesFunction(double a_over_z, double b, RadonMeasure mu_s)
    : a_(a_over_z), b_(b), mu_(std::move(mu_s)) {
  if (!(a_ >= 0.0) || !(b_ >= 0.0) || !std::isfinite(a_) || !std::isfinite(b_))
    throw DomainError("Stieltjes coefficients must be finite and >= 0");
  double check = 0.0;
  try {
    check = stieltjes_transform(mu_, cplx(1.0, 0.0)).real();
  } catch (const DivergenceError&) {
    check = std::numeric_limits<double>::infinity();
  }
  if (!std::isfinite(check)) throw DomainError("Stieltjes measure fails integral of mu(ds)/(1+s) < inf");
}

cplx evaluate_stieltjes(const StieltjesFunction& f, cplx z, EvalMode mode) {
  if (on_negative_axis(z)) throw BranchCutError("branch cut: z lies on (-inf, 0]");
  return f.a_over_z() / z + f.constant() + stieltjes_transform(f.measure(), z, mode);
}

StieltjesFunction log_example() {
  return {0.0, 0.0, RadonMeasure::with_density(density::ShiftedReciprocal{1.0, 1.0})};
}

cplx log_ratio(cplx z) {
  if (on_negative_axis(z)) throw BranchCutError("branch cut: z lies on (-inf, 0]");
  return log_over_zm1(z);
}

ComplexFunction cbf_to_stieltjes(const BernsteinFunction& g) {
  if (!g.is_complete()) throw DomainError("cbf_to_stieltjes needs a complete Bernstein function");
  if (g.drift() > 0.0) throw DomainError("lim g(t)/t = 0 violated: drift b > 0");

  auto raw = [g](cplx z) { return (evaluate(g, z) - evaluate(g, 1.0 / z)) / (z - 1.0); };
  auto patch = std::make_shared<RemovableSingularityPatch>(raw, cplx(1.0, 0.0), 1e-2, 4);
  return [raw, patch](cplx z) -> cplx {
    if (!(z.real() >= 0.0) || z == cplx(0.0, 0.0))
      throw DomainError("cbf_to_stieltjes evaluates on re z >= 0, z != 0");
    if (std::abs(z - 1.0) < 1e-4) return (*patch)(z);
    return raw(z);
  };
}

HerglotzVerdict herglotz_check(const ComplexFunction& f, std::span<const cplx> grid) {
  HerglotzVerdict verdict;
  for (cplx z : grid) {
    const double v = z.imag() * f(z).imag();
    if (v > verdict.worst_value) {
      verdict.worst_value = v;
      verdict.worst_point = z;
    }
  }
  verdict.pass = verdict.worst_value <= 1e-10;
  return verdict;
}

HirschVerdict hirsch_logconvexity_probe(const RadonMeasure& mu, double c, double t, int n_max) {
  if (!(t > 0.0)) throw DomainError("hirsch probe needs t > 0");
  if (n_max < 2) throw DomainError("hirsch probe needs n_max >= 2");
  HirschVerdict verdict;
  double factorial = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) factorial *= n;
    double moment = laplace_moment(mu, n, t);
    if (n == 0) moment += c;
    if (!std::isfinite(moment)) throw DivergenceError("divergent moment in hirsch probe");
    verdict.alpha.push_back(moment / factorial);
  }
  const auto& a = verdict.alpha;
  for (int n = 1; n < n_max; ++n) {
    if (a[n] * a[n] > a[n - 1] * a[n + 1] * (1.0 + 1e-8)) {
      verdict.pass = false;
      verdict.order = n;
      break;
    }
  }
  return verdict;
}

cplx potential_of(const BernsteinFunction& g, cplx z) {
  const cplx v = evaluate(g, z);
  if (v == cplx(0.0, 0.0)) throw DomainError("potential undefined where g vanishes");
  return 1.0 / v;
}

std::vector<cplx> polar_grid(double r_lo, double r_hi, std::size_t n_r, double theta_lo,
                             double theta_hi, std::size_t n_theta) {
  std::vector<cplx> out;
  for (double r : log_grid(r_lo, r_hi, n_r))
    for (double th : linear_grid(theta_lo, theta_hi, n_theta)) out.push_back(std::polar(r, th));
  return out;
}

}  // namespace ergo
