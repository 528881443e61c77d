#include "ergo/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ergo/error.hpp"
#include "ergo/quadrature.hpp"

namespace ergo {

namespace {

void require_finite_nonnegative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) throw DomainError(std::string(what) + " must be finite and >= 0");
}

void require_right_half_plane(cplx z) {
  if (!(z.real() >= 0.0) || !std::isfinite(z.imag()))
    throw DomainError("Bernstein functions are evaluated on re z >= 0");
}

void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("t must be positive and finite");
}

}  // namespace

BernsteinFunction::BernsteinFunction(double killing, double drift, RadonMeasure mu,
                                     std::string name, BernsteinTags tags)
    : a_(killing), b_(drift), mu_(std::move(mu)), name_(std::move(name)), tags_(tags) {
  require_finite_nonnegative(a_, "killing term a");
  require_finite_nonnegative(b_, "drift b");
  const double levy = levy_integral(*mu_);
  if (!std::isfinite(levy)) throw DomainError("Levy integrability violated: integral of s/(1+s) diverges");
}

BernsteinFunction BernsteinFunction::direct(std::string name, Evaluator evaluator,
                                            double killing, double drift, BernsteinTags tags) {
  if (!evaluator) throw DomainError("direct Bernstein function needs an evaluator");
  require_finite_nonnegative(killing, "killing term a");
  require_finite_nonnegative(drift, "drift b");
  BernsteinFunction g;
  g.a_ = killing;
  g.b_ = drift;
  g.evaluator_ = std::move(evaluator);
  g.name_ = std::move(name);
  g.tags_ = tags;
  return g;
}

const RadonMeasure& BernsteinFunction::measure() const {
  if (!mu_) throw MeasureUnavailableError("measure unavailable for '" + name_ + "'");
  return *mu_;
}

bool BernsteinFunction::is_zero() const noexcept {
  return a_ == 0.0 && b_ == 0.0 && mu_ && mu_->empty();
}

cplx evaluate(const BernsteinFunction& g, cplx z, EvalMode mode) {
  require_right_half_plane(z);
  if (const auto* direct = g.direct_evaluator()) return (*direct)(z);
  return g.killing() + g.drift() * z + exp_integral(g.measure(), z, Kernel::one_minus_exp, mode);
}

double rate(const BernsteinFunction& g, double t, EvalMode mode) {
  require_positive_time(t);
  if (g.is_zero()) throw DomainError("zero Bernstein function has no rate");
  const RadonMeasure& mu = g.measure();
  return 0.5 * g.killing() + g.drift() / t + truncated_first_moment(mu, t, mode) / t +
         tail_mass(mu, t, mode);
}

RateFunction::RateFunction(BernsteinFunction g) : g_(std::move(g)) {
  if (g_.is_zero()) throw DomainError("zero Bernstein function has no rate");
  (void)g_.measure();
}

double RateFunction::scaled_right_derivative(double t) const {
  require_positive_time(t);
  return 0.5 * g_.killing() + tail_mass(g_.measure(), t);
}

RateBracket rate_bracket(const BernsteinFunction& g, double t) {
  require_positive_time(t);
  // At z = 1/t both t re z and t|z| equal 1, so c0 = 1/e and c1 = 2.
  const double v = std::abs(evaluate(g, cplx(1.0 / t, 0.0)));
  return {v / 2.0, constants::e * v};
}

cplx cesaro_symbol(double t, cplx z) {
  require_positive_time(t);
  return phi1(-t * z);
}

double wiener_norm_cesaro(const BernsteinFunction& g, double t) {
  require_positive_time(t);
  if (g.is_zero()) throw DomainError("zero Bernstein function has no rate");
  const RadonMeasure& mu = g.measure();

  std::vector<double> inner;
  std::vector<double> outer;
  for (double s : mu.scales()) {
    if (s > 0.0 && s < t) inner.push_back(s);
    if (s > 0.0) outer.push_back(s);
    if (s > t) outer.push_back(s - t);
  }

  const quad::Options options{1e-11, 1e-300, 1'000'000};
  // psi on (0, t) is the tail mu(r, inf); on (t, inf) it is mu(r - t, r].
  // The second piece is integrated in u = r - t so the endpoint stays exact.
  const double near = quad::integrate([&](double r) { return tail_mass(mu, r); }, 0.0, t,
                                      inner, options)
                          .value;
  // Far out u + t rounds towards u; past the last atom the midpoint rule
  // t * density(u + t/2) is exact to O((t/u)^2) and loses nothing.
  double last_atom = 0.0;
  for (const Atom& atom : mu.atoms()) last_atom = std::max(last_atom, atom.location);
  auto window = [&](double u) {
    if (u > last_atom && t < 1e-6 * u) return t * mu.density(u + 0.5 * t);
    return interval_mass(mu, u, u + t);
  };
  const double far =
      quad::integrate(window, 0.0,
                      std::numeric_limits<double>::infinity(), outer, options)
          .value;
  return g.killing() * t + 2.0 * g.drift() + near + far;
}

SandwichBounds sandwich_bounds(const BernsteinFunction& g, double t, cplx z) {
  require_positive_time(t);
  if (!(z.real() > 0.0)) throw DomainError("sandwich bounds need re z > 0");
  const double r = rate(g, t);
  const double x = t * z.real();
  const cplx v = evaluate(g, z);
  return {x * std::exp(-x) * r, std::max(2.0, t * std::abs(z)) * r, v.real(), std::abs(v), r};
}

ComparabilityConstants comparability_constants(double alpha, double beta, bool special) {
  if (!(alpha > 0.0) || !(alpha <= beta) || !std::isfinite(beta))
    throw DomainError("comparability constants need 0 < alpha <= beta");
  // x e^{-x} is unimodal, so the infimum over [alpha, beta] sits at an endpoint.
  // The special constant divides by 3e; fold that into the exponent.
  const double shift = special ? 1.0 : 0.0;
  const double denom = special ? 3.0 : 1.0;
  const double c0 = std::min(alpha * std::exp(-alpha - shift), beta * std::exp(-beta - shift)) / denom;
  return {c0, std::max(2.0, beta)};
}

SpecialEstimate special_estimate_check(const BernsteinFunction& g, cplx z) {
  if (!g.is_special()) throw DomainError("special estimate needs a special Bernstein function");
  require_right_half_plane(z);
  if (z == cplx(0.0, 0.0)) {
    if (g.killing() == 0.0) throw DomainError("special estimate undefined at z = 0 when a = 0");
    return {1.0, true};
  }
  const double num = evaluate(g, cplx(std::abs(z), 0.0)).real();
  const double den = std::abs(evaluate(g, z));
  const double ratio = num / den;
  constexpr double slack = 1e-9;
  const double hi = 3.0 * constants::e;
  const bool pass = ratio >= (1.0 / hi) * (1.0 - slack) && ratio <= hi * (1.0 + slack);
  return {ratio, pass};
}

}  // namespace ergo
