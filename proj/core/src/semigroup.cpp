#include "ergo/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ergo/error.hpp"
#include "ergo/laplace.hpp"
#include "ergo/quadrature.hpp"

namespace ergo {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void validate_eigenvalues(const std::vector<cplx>& lambda) {
  if (lambda.empty()) throw DomainError("generator needs at least one eigenvalue");
  for (cplx l : lambda) {
    if (!std::isfinite(l.real()) || !std::isfinite(l.imag()))
      throw DomainError("eigenvalues must be finite");
    if (l.real() < 0.0) throw DomainError("eigenvalues must satisfy re lambda >= 0");
  }
}

void require_dimension(const DiagonalGenerator& gen, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != gen.dimension())
    throw DomainError("vector dimension does not match the generator");
  if (!x.allFinite()) throw DomainError("vector has non-finite coordinates");
}

double largest_singular_value(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

DiagonalGenerator::DiagonalGenerator(std::vector<cplx> eigenvalues)
    : lambda_(std::move(eigenvalues)) {
  validate_eigenvalues(lambda_);
}

DiagonalGenerator::DiagonalGenerator(std::vector<cplx> eigenvalues, Eigen::MatrixXcd similarity)
    : lambda_(std::move(eigenvalues)) {
  validate_eigenvalues(lambda_);
  const auto n = static_cast<Eigen::Index>(lambda_.size());
  if (similarity.rows() != n || similarity.cols() != n)
    throw DomainError("similarity must be square and match the eigenvalue count");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(similarity);
  const auto& sv = svd.singularValues();
  if (!(sv(n - 1) > sv(0) * 1e-12)) throw DomainError("similarity is numerically singular");
  m_ = sv(0) / sv(n - 1);
  v_inv_ = similarity.inverse();
  v_ = std::move(similarity);
}

DiagonalGenerator DiagonalGenerator::log_spaced(double lo, double hi, std::size_t n,
                                                std::span<const double> phases) {
  if (!phases.empty() && phases.size() != n) throw DomainError("one phase per eigenvalue");
  const auto moduli = log_grid(lo, hi, n);
  std::vector<cplx> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = std::polar(moduli[i], phases.empty() ? 0.0 : phases[i]);
  return DiagonalGenerator(std::move(lambda));
}

DiagonalGenerator DiagonalGenerator::accumulating(double rho, int n_max,
                                                  std::span<const double> phases) {
  if (!(rho > 0.0) || n_max < 1) throw DomainError("accumulating generator needs rho > 0, n_max >= 1");
  if (!phases.empty() && phases.size() != static_cast<std::size_t>(n_max))
    throw DomainError("one phase per eigenvalue");
  std::vector<cplx> lambda;
  for (int n = 1; n <= n_max; ++n) {
    const double theta = phases.empty() ? 0.0 : phases[n - 1];
    if (std::abs(theta) > constants::pi / 2) throw DomainError("phases must lie in [-pi/2, pi/2]");
    lambda.push_back(std::polar(rho * std::pow(4.0, -n), theta));
  }
  return DiagonalGenerator(std::move(lambda));
}

Vector DiagonalGenerator::apply_values(const std::vector<cplx>& values, const Vector& x) const {
  require_dimension(*this, x);
  const Eigen::Map<const Eigen::VectorXcd> d(values.data(), static_cast<Eigen::Index>(values.size()));
  if (!v_) return d.cwiseProduct(x);
  return *v_ * d.cwiseProduct(v_inv_ * x);
}

Vector DiagonalGenerator::apply_symbol(const std::function<cplx(cplx)>& h, const Vector& x) const {
  std::vector<cplx> values(lambda_.size());
  std::transform(lambda_.begin(), lambda_.end(), values.begin(), h);
  return apply_values(values, x);
}

Eigen::MatrixXcd DiagonalGenerator::matrix(const std::function<cplx(cplx)>& h) const {
  const auto n = static_cast<Eigen::Index>(lambda_.size());
  Eigen::VectorXcd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = h(lambda_[i]);
  if (!v_) return d.asDiagonal();
  return *v_ * d.asDiagonal() * v_inv_;
}

double DiagonalGenerator::operator_norm(const std::function<cplx(cplx)>& h) const {
  if (!v_) {
    double best = 0.0;
    for (cplx l : lambda_) best = std::max(best, std::abs(h(l)));
    return best;
  }
  return largest_singular_value(matrix(h));
}

Vector semigroup_apply(const DiagonalGenerator& gen, double s, const Vector& x) {
  if (!(s >= 0.0)) throw DomainError("semigroup time must be >= 0");
  return gen.apply_symbol([s](cplx l) { return std::exp(-s * l); }, x);
}

Vector cesaro_mean(const DiagonalGenerator& gen, double t, const Vector& x) {
  return gen.apply_symbol([t](cplx l) { return cesaro_symbol(t, l); }, x);
}

Vector phillips_apply(const DiagonalGenerator& gen, const BernsteinFunction& g, const Vector& x) {
  const RadonMeasure& mu = g.measure();
  return gen.apply_symbol(
      [&](cplx l) {
        return g.killing() + g.drift() * l +
               exp_integral(mu, l, Kernel::one_minus_exp, EvalMode::quadrature);
      },
      x);
}

Vector spectral_apply(const DiagonalGenerator& gen, const BernsteinFunction& g, const Vector& x) {
  return gen.apply_symbol([&](cplx l) { return evaluate(g, l); }, x);
}

RateBoundReport rate_bound_check(const DiagonalGenerator& gen, const BernsteinFunction& g,
                                 const Vector& x, std::span<const double> t_grid) {
  const double xn = x.norm();
  if (!(xn > 0.0)) throw DomainError("rate bound check needs x != 0");
  const Vector y = phillips_apply(gen, g, x);
  RateBoundReport report;
  for (double t : t_grid) {
    const double ratio = cesaro_mean(gen, t, y).norm() / (2.0 * gen.bound() * rate(g, t) * xn);
    report.ratios.push_back(ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  report.pass = report.max_ratio <= 1.0 + 1e-9;
  return report;
}

std::vector<DecayRow> decay_profile(const DiagonalGenerator& gen, const BernsteinFunction& g,
                                    const Vector& x, std::span<const double> t_grid) {
  const double xn = x.norm();
  if (!(xn > 0.0)) throw DomainError("decay profile needs x != 0");
  const Vector y = spectral_apply(gen, g, x);
  std::vector<DecayRow> rows;
  for (double t : t_grid) {
    const double norm = cesaro_mean(gen, t, y).norm();
    const double r = rate(g, t);
    rows.push_back({t, norm, r, norm / (r * xn)});
  }
  return rows;
}

SpectralInclusionVerdict spectral_inclusion_check(const DiagonalGenerator& gen,
                                                  const std::function<cplx(cplx)>& h) {
  const Eigen::MatrixXcd hm = gen.matrix(h);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(hm, false);
  if (solver.info() != Eigen::Success) throw DomainError("eigenvalue solver failed");
  const auto& spectrum = solver.eigenvalues();

  SpectralInclusionVerdict verdict;
  double scale = 1.0;
  for (cplx l : gen.eigenvalues()) {
    const cplx target = h(l);
    scale = std::max(scale, std::abs(target));
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < spectrum.size(); ++j) best = std::min(best, std::abs(spectrum(j) - target));
    verdict.max_distance = std::max(verdict.max_distance, best);
  }
  const double tol = 64.0 * kEps * gen.bound() * gen.bound() * static_cast<double>(gen.dimension()) * scale;
  verdict.pass = verdict.max_distance <= tol;
  return verdict;
}

double optimality_delta(std::size_t grid_points) {
  if (grid_points < 2) throw DomainError("delta grid needs at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (double theta : linear_grid(-constants::pi / 2, constants::pi / 2, grid_points))
    best = std::min(best, std::abs(one_minus_exp(std::polar(1.0, theta))));
  return best;
}

OptimalityReport optimality_probe(const DiagonalGenerator& gen, const BernsteinFunction& g,
                                  const std::function<double(double)>& epsilon) {
  if (!g.is_special()) throw DomainError("optimality probe needs a special Bernstein function");
  std::vector<cplx> z = gen.eigenvalues();
  for (cplx l : z)
    if (l == cplx(0.0, 0.0)) throw DomainError("optimality probe needs nonzero eigenvalues");
  std::stable_sort(z.begin(), z.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });

  OptimalityReport report;
  report.delta = optimality_delta();
  const double factor = report.delta / (3.0 * constants::e * constants::e);
  for (std::size_t n = 0; n < z.size(); ++n) {
    const double t = 1.0 / std::abs(z[n]);
    const double r = rate(g, t);
    const double norm = gen.operator_norm([&](cplx l) { return evaluate(g, l) * cesaro_symbol(t, l); });
    const OptimalityRow row{static_cast<int>(n + 1), t, factor * r, norm, norm / (epsilon(t) * r)};
    if (row.norm < row.lower_bound * (1.0 - 1e-9)) report.lower_bound_holds = false;
    report.rows.push_back(row);
  }
  report.growth = report.rows.back().ratio / report.rows.front().ratio;
  report.diverges = report.growth >= 100.0;
  return report;
}

AbelResult abel_transform(const DiagonalGenerator& gen, const RadonMeasure& mu, const Vector& x,
                          std::span<const double> alphas, const BernsteinFunction& g) {
  if (alphas.empty()) throw DomainError("abel transform needs an alpha sequence");
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas[k] > 0.0) || (k > 0 && !(alphas[k] < alphas[k - 1])))
      throw DomainError("alpha sequence must be positive and decreasing");
  }
  double ratio = 0.0;
  if (alphas.size() > 1) {
    ratio = alphas[0] / alphas[1];
    for (std::size_t k = 1; k + 1 < alphas.size(); ++k)
      if (std::abs(alphas[k] / alphas[k + 1] - ratio) > 1e-9 * ratio)
        throw DomainError("alpha sequence must be geometric");
  }
  for (cplx l : gen.eigenvalues())
    if (!(l.real() > 0.0)) throw DomainError("abel transform needs re lambda > 0 for every eigenvalue");
  const double xn = x.norm();
  if (!(xn > 0.0)) throw DomainError("abel transform needs x != 0");

  auto limit = [&](cplx l) -> cplx {
    std::vector<double> re(alphas.size());
    std::vector<double> im(alphas.size());
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      const cplx v = laplace_measure(mu, l + alphas[k], EvalMode::quadrature);
      re[k] = v.real();
      im[k] = v.imag();
    }
    if (alphas.size() == 1) return {re[0], im[0]};
    return {richardson(re, ratio, 1), richardson(im, ratio, 1)};
  };
  AbelResult result{gen.apply_symbol(limit, x), 0.0};
  const Vector gy = g.has_measure() ? phillips_apply(gen, g, result.y) : spectral_apply(gen, g, result.y);
  result.residual = (gy - x).norm() / xn;
  return result;
}

GeneralRateReport general_rate_check(const DiagonalGenerator& gen, std::string_view f,
                                     cplx lambda0, const Vector& x,
                                     std::span<const double> t_grid) {
  if (f != "log" || lambda0 != cplx(1.0, 0.0))
    throw DomainError("general rate check supports only f = log with lambda0 = 1");
  for (cplx l : gen.eigenvalues())
    if (l == cplx(0.0, 0.0)) throw DomainError("log undefined at eigenvalue 0");
  const double xn = x.norm();
  if (!(xn > 0.0)) throw DomainError("general rate check needs x != 0");
  const double denom = gen.bound() * (xn + gen.apply_symbol([](cplx l) { return std::log(l); }, x).norm());

  GeneralRateReport report;
  for (double t : t_grid) {
    const double v = cesaro_mean(gen, t, x).norm() * std::abs(std::log(1.0 / t)) / denom;
    report.values.push_back(v);
    report.constant = std::max(report.constant, v);
  }
  return report;
}

Vector log_resolvent_apply(const DiagonalGenerator& gen, cplx lambda, const Vector& x) {
  if (!(std::abs(lambda.imag()) > constants::pi)) throw DomainError("log resolvent needs |im lambda| > pi");
  for (cplx l : gen.eigenvalues())
    if (l == cplx(0.0, 0.0)) throw DomainError("log undefined at 0");
  return gen.apply_symbol([lambda](cplx l) { return 1.0 / (lambda - std::log(l)); }, x);
}

namespace {

// In u = log t the kernel is -1/((lambda - u)^2 + pi^2) * 1/(1 + z e^{-u}); integrate
// over u >= 0 and, reflected, u < 0.
template <class F>
auto integrate_real_line(const F& f, std::vector<double> cuts) {
  std::vector<double> pos;
  std::vector<double> neg;
  for (double c : cuts) {
    if (c > 0.0) pos.push_back(c);
    if (c < 0.0) neg.push_back(-c);
  }
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  const quad::Options options{1e-11, 1e-300, 1'000'000};
  using R = decltype(f(0.0));
  const std::function<R(double)> right = f;
  const std::function<R(double)> left = [&](double u) { return f(-u); };
  const double inf = std::numeric_limits<double>::infinity();
  return quad::integrate(right, 0.0, inf, pos, options).value +
         quad::integrate(left, 0.0, inf, neg, options).value;
}

}  // namespace

cplx log_resolvent_kernel(cplx lambda, cplx z) {
  if (!(std::abs(lambda.imag()) > constants::pi)) throw DomainError("log resolvent needs |im lambda| > pi");
  if (on_negative_axis(z)) throw BranchCutError("log resolvent kernel needs z off (-inf, 0]");
  const double pi2 = constants::pi * constants::pi;
  auto f = [&](double u) -> cplx {
    const cplx d = lambda - u;
    return -1.0 / ((d * d + pi2) * (1.0 + z * std::exp(-u)));
  };
  return integrate_real_line(f, {lambda.real(), std::log(std::abs(z))});
}

double log_resolvent_kernel_mass(cplx lambda) {
  if (!(std::abs(lambda.imag()) > constants::pi)) throw DomainError("log resolvent needs |im lambda| > pi");
  const double pi2 = constants::pi * constants::pi;
  auto f = [&](double u) -> double {
    const cplx d = lambda - u;
    return 1.0 / std::abs(d * d + pi2);
  };
  return integrate_real_line(f, {lambda.real()});
}

}  // namespace ergo
