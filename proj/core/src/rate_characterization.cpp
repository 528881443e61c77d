#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "ergo/bernstein.hpp"
#include "ergo/error.hpp"
#include "ergo/quadrature.hpp"

namespace ergo {

namespace {

[[noreturn]] void reject(const std::string& what, std::span<const double> grid, std::size_t i) {
  const std::size_t n = grid.size();
  const std::size_t i0 = std::min(i, n >= 3 ? n - 3 : 0);
  const double t0 = grid[i0];
  const double t1 = grid[std::min(i0 + 1, n - 1)];
  const double t2 = grid[std::min(i0 + 2, n - 1)];
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " at grid triple (" << t0 << ", " << t1 << ", " << t2 << ")";
  throw RateShapeError(msg.str(), i0, t0, t1, t2);
}

// Right derivative of a concave f at t by one-sided secants with
// h = t * 10^{-2}, ..., t * 10^{-6}, extrapolated to h -> 0.
double right_derivative(const std::function<double(double)>& f, double t) {
  std::array<double, 5> secants{};
  const double ft = f(t);
  double h = 1e-2 * t;
  for (double& s : secants) {
    s = (f(t + h) - ft) / h;
    h /= 10.0;
  }
  return richardson(secants, 10.0, 1);
}

}  // namespace

BernsteinFunction rate_to_bernstein(const std::function<double(double)>& f,
                                    std::span<const double> grid,
                                    const RateToBernsteinOptions& options) {
  const std::size_t n = grid.size();
  if (n < 2) throw DomainError("rate_to_bernstein needs at least two grid points");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1])))
      throw DomainError("rate_to_bernstein needs a strictly increasing positive grid");
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = f(grid[i]);
    if (!std::isfinite(values[i]) || !(values[i] > 0.0)) reject("t r(t) is not strictly positive", grid, i);
  }

  const double tol = options.shape_tolerance;
  // sigma[i] is the secant slope on [t_i, t_{i+1}].
  std::vector<double> sigma(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (values[i + 1] - values[i] < -tol * std::max(1.0, std::abs(values[i])))
      reject("t r(t) is decreasing", grid, i > 0 ? i - 1 : 0);
    sigma[i] = (values[i + 1] - values[i]) / (grid[i + 1] - grid[i]);
  }
  for (std::size_t i = 1; i < sigma.size(); ++i) {
    if (sigma[i] - sigma[i - 1] > tol * std::max(1.0, std::abs(sigma[i - 1])))
      reject("t r(t) is not concave", grid, i - 1);
  }

  // a = 2 lim D+f, read off at the right end of the grid.
  const double last_slope = sigma.back();
  double a = 2.0 * right_derivative(f, grid[n - 1]);
  a = std::clamp(a, 0.0, 2.0 * std::max(0.0, last_slope));

  // b = f(0+), from the chord through (h, 2h) extended to 0.
  const double h = 1e-8 * grid[0];
  double b = 2.0 * f(h) - f(2.0 * h);
  b = std::clamp(b, 0.0, std::max(0.0, values[0] - grid[0] * std::max(0.0, sigma[0])));

  // The tail mu(r, inf) = D+f(r) - a/2 is constant between grid points; each
  // drop in slope becomes a point mass at the grid point where it occurs.
  std::vector<Atom> atoms;
  double previous = (values[0] - b) / grid[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double next = (i + 1 < n) ? sigma[i] : 0.5 * a;
    const double w = previous - next;
    if (w > 1e-15 * std::max(1.0, std::abs(previous))) atoms.push_back({grid[i], w});
    previous = next;
  }
  return BernsteinFunction(a, b, RadonMeasure(std::move(atoms), {}), "from_rate");
}

WDecomposition w_decompose(const BernsteinFunction& g) {
  const RadonMeasure& mu = g.measure();
  WDecomposition w{g.killing(), g.drift(), levy_integral(mu), {}, {}};

  std::vector<Atom> nu_atoms;
  std::vector<DensityComponent> gamma_parts;
  for (const Atom& atom : mu.atoms()) {
    nu_atoms.push_back({atom.location, atom.weight * atom.location / (1.0 + atom.location)});
    gamma_parts.push_back(density::Uniform{atom.weight / (1.0 + atom.location), 0.0, atom.location});
  }

  std::vector<DensityComponent> nu_parts;
  if (!mu.densities().empty()) {
    const RadonMeasure part(std::vector<Atom>{}, mu.densities());
    const std::vector<double> scales = part.scales();
    nu_parts.push_back(density::Custom{
        "nu", [part](double s) { return s / (1.0 + s) * part.density(s); }, 0.0,
        std::numeric_limits<double>::infinity(), scales, true, true});
    // gamma density at r: integral over (r, inf) of mu(ds)/(1+s).
    auto gamma_pdf = [part, scales](double r) {
      std::vector<double> cuts;
      for (double s : scales)
        if (s > r) cuts.push_back(s);
      return quad::integrate([&](double s) { return part.density(s) / (1.0 + s); }, r,
                             std::numeric_limits<double>::infinity(), cuts,
                             {1e-11, 1e-300, 1'000'000})
          .value;
    };
    gamma_parts.push_back(density::Custom{"gamma", gamma_pdf, 0.0,
                                          std::numeric_limits<double>::infinity(), scales,
                                          true, true});
  }
  w.nu = RadonMeasure(std::move(nu_atoms), std::move(nu_parts));
  w.gamma = RadonMeasure({}, std::move(gamma_parts));
  return w;
}

cplx w_reconstruct(const WDecomposition& w, cplx z) {
  if (!(z.real() >= 0.0)) throw DomainError("reconstruction needs re z >= 0");
  return w.killing + w.drift * z + w.c - exp_integral(w.nu, z, Kernel::exp) +
         z * exp_integral(w.gamma, z, Kernel::exp);
}

}  // namespace ergo
