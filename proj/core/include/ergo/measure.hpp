#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "ergo/numeric.hpp"

namespace ergo {

/// Selects closed forms where available or forces the quadrature route.
enum class EvalMode { automatic, quadrature };

/// Integration kernel for exp_integral: 1 - e^{-sz} or e^{-sz}.
enum class Kernel { one_minus_exp, exp };

inline constexpr double infinite_mass = std::numeric_limits<double>::infinity();

namespace density {

/// c s^{-(1+alpha)} on (0, inf), 0 < alpha < 1.
struct PowerLaw {
  double c;
  double alpha;
};

/// c e^{-beta s} on (0, inf).
struct ExpDecay {
  double c;
  double beta;
};

/// c on (s0, s1).
struct Uniform {
  double c;
  double s0;
  double s1;
};

/// c e^{-s}/s on (0, inf); the Levy density of log(1+z) when c = 1.
struct LogKernel {
  double c = 1.0;
};

/// Piecewise-linear density through (grid[i], values[i]); zero off the grid.
struct Tabulated {
  std::vector<double> grid;
  std::vector<double> values;
};

/// c s^{p-1} e^{-beta s} on (0, inf), p > 0, beta >= 0.
struct GammaKernel {
  double c;
  double p;
  double beta;
};

/// c/(s + kappa) on (0, inf).
struct ShiftedReciprocal {
  double c;
  double kappa;
};

/// c e^{s} E1(s) on (0, inf); its Laplace transform is c log z/(z-1).
struct LogPotential {
  double c = 1.0;
};

/// Arbitrary density evaluated by callable; every functional uses quadrature.
struct Custom {
  std::string label;
  std::function<double(double)> pdf;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  std::vector<double> scales;
  bool finite_tail = true;
  bool finite_near_zero = true;
};

}  // namespace density

using DensityComponent =
    std::variant<density::PowerLaw, density::ExpDecay, density::Uniform, density::LogKernel,
                 density::Tabulated, density::GammaKernel, density::ShiftedReciprocal,
                 density::LogPotential, density::Custom>;

/// Short family name used in serialization ("power_law", "exp_decay", ...).
std::string family_name(const DensityComponent& component);

struct Atom {
  double location;
  double weight;
};

/// Positive Radon measure on (0, inf): point masses plus density components.
/// Immutable after construction; all functionals are pure.
class RadonMeasure {
 public:
  RadonMeasure() = default;
  RadonMeasure(std::vector<Atom> atoms, std::vector<DensityComponent> densities);

  static RadonMeasure point(double location, double weight = 1.0);
  static RadonMeasure with_density(DensityComponent component);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<DensityComponent>& densities() const noexcept { return densities_; }
  bool empty() const noexcept { return atoms_.empty() && densities_.empty(); }

  /// Sum of the density components at s (atoms excluded).
  double density(double s) const;

  /// Natural breakpoints: atom locations, support ends, decay scales.
  std::vector<double> scales() const;

  /// True if mu(r, inf) < inf for every r > 0.
  bool has_finite_tails() const;
  /// True if mu has finite mass near 0 (total mass finite when tails are).
  bool has_finite_mass_near_zero() const;

  RadonMeasure operator+(const RadonMeasure& other) const;
  RadonMeasure scaled(double factor) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityComponent> densities_;
};

/// mu(r, inf). May be infinite_mass.
double tail_mass(const RadonMeasure& mu, double r, EvalMode mode = EvalMode::automatic);

/// mu(lo, hi] for 0 <= lo <= hi.
double interval_mass(const RadonMeasure& mu, double lo, double hi,
                     EvalMode mode = EvalMode::automatic);

/// mu(0, inf).
double total_mass(const RadonMeasure& mu, EvalMode mode = EvalMode::automatic);

/// Integral of s over (0, t].
double truncated_first_moment(const RadonMeasure& mu, double t,
                              EvalMode mode = EvalMode::automatic);

/// Integral of s/(1+s); finite exactly for Levy measures.
double levy_integral(const RadonMeasure& mu, EvalMode mode = EvalMode::automatic);

/// Integral of (1 - e^{-sz}) or e^{-sz} against mu, re z >= 0.
cplx exp_integral(const RadonMeasure& mu, cplx z, Kernel kernel,
                  EvalMode mode = EvalMode::automatic);

/// Integral of 1/(z + s) against mu, z off (-inf, 0].
cplx stieltjes_transform(const RadonMeasure& mu, cplx z, EvalMode mode = EvalMode::automatic);

/// Integral of s^n e^{-st} against mu, t > 0.
double laplace_moment(const RadonMeasure& mu, int n, double t,
                      EvalMode mode = EvalMode::automatic);

}  // namespace ergo
