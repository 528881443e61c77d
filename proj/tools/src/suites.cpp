#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "ergo/catalog.hpp"
#include "ergo/cli.hpp"
#include "ergo/error.hpp"
#include "ergo/laplace.hpp"
#include "ergo/semigroup.hpp"
#include "ergo/stieltjes.hpp"

namespace ergo::cli {

namespace {

using Checks = std::vector<Check>;

Check at_most(std::string name, double measured, double bound) {
  return {std::move(name), measured, bound, measured <= bound};
}

Check at_least(std::string name, double measured, double bound) {
  return {std::move(name), measured, bound, measured >= bound};
}

std::string tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

struct Member {
  std::string label;
  BernsteinFunction g;
};

// The catalog members with an explicit triple, labelled by their specs.
std::vector<Member> members(bool include_direct = false) {
  std::vector<std::string> specs{"drift",  "constant", "frac_power:0.5", "frac_power:0.25",
                                 "atom:1", "atom:3:2", "log1p",          "z_over_z_plus_1"};
  if (include_direct) specs.push_back("log_rate");
  std::vector<Member> out;
  for (const auto& s : specs) out.push_back({s, make_bernstein(parse_function_spec(s))});
  return out;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

Vector random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector x(static_cast<Eigen::Index>(n));
  for (auto& v : x) v = cplx(g(rng), g(rng));
  return x / x.norm();
}

Checks wiener(std::uint64_t, double tol) {
  Checks out;
  for (const auto& [label, g] : members()) {
    for (double t : {0.1, 1.0, 10.0, 100.0}) {
      const double err = rel_diff(wiener_norm_cesaro(g, t), 2.0 * t * rate(g, t));
      out.push_back(at_most("wiener/" + label + "/t=" + tag(t), err, tol));
    }
  }
  return out;
}

Checks sandwich(std::uint64_t seed, double) {
  std::mt19937_64 rng(seed);
  const auto cat = members();
  std::uniform_int_distribution<std::size_t> pick(0, cat.size() - 1);
  std::uniform_real_distribution<double> log10(-2.0, 2.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi / 2, std::numbers::pi / 2);
  // Worst lower/re g and |g|/upper per function; both must stay <= 1.
  std::map<std::string, std::pair<double, double>> worst;
  for (int k = 0; k < 1000; ++k) {
    const auto& [label, g] = cat[pick(rng)];
    const double t = std::pow(10.0, log10(rng));
    cplx z = std::polar(std::pow(10.0, log10(rng)), angle(rng));
    if (!(z.real() > 0.0)) z = cplx(1e-300, z.imag());
    const auto b = sandwich_bounds(g, t, z);
    auto& w = worst[label];
    if (b.value_re > 0.0) w.first = std::max(w.first, b.lower / b.value_re);
    w.second = std::max(w.second, b.value_abs / b.upper);
  }
  Checks out;
  for (const auto& [name, w] : worst) {
    out.push_back(at_most("sandwich/" + name + "/lower", w.first, 1.0 + 1e-12));
    out.push_back(at_most("sandwich/" + name + "/upper", w.second, 1.0 + 1e-12));
  }
  return out;
}

Checks special(std::uint64_t, double) {
  const auto grid = polar_grid(1e-2, 1e2, 10, -std::numbers::pi / 2, std::numbers::pi / 2, 10);
  const double hi = 3.0 * std::numbers::e;
  Checks out;
  for (const auto& [label, g] : members(true)) {
    if (!g.is_special()) continue;
    double lo_ratio = 1e300;
    double hi_ratio = 0.0;
    for (cplx z : grid) {
      const double r = special_estimate_check(g, z).ratio;
      lo_ratio = std::min(lo_ratio, r);
      hi_ratio = std::max(hi_ratio, r);
    }
    out.push_back(at_least("special/" + label + "/min_ratio", lo_ratio, (1.0 / hi) * (1.0 - 1e-9)));
    out.push_back(at_most("special/" + label + "/max_ratio", hi_ratio, hi * (1.0 + 1e-9)));
  }
  return out;
}

Checks roundtrip(std::uint64_t, double tol) {
  const auto grid = log_grid(0.05, 50.0, 60);
  Checks out;
  for (const auto& [label, g] : members()) {
    const auto back = rate_to_bernstein([&](double t) { return t * rate(g, t); }, grid);
    double worst = 0.0;
    for (double t : grid) worst = std::max(worst, rel_diff(rate(back, t), rate(g, t)));
    out.push_back(at_most("roundtrip/" + label, worst, tol));
  }
  double rejected = 0.0;
  try {
    rate_to_bernstein([](double t) { return t * t + 1.0; }, grid);
  } catch (const RateShapeError&) {
    rejected = 1.0;
  }
  out.push_back(at_least("roundtrip/rejects_convex_input", rejected, 1.0));
  return out;
}

Checks laplace(std::uint64_t, double) {
  Checks out;
  for (const auto& [label, g] : members()) {
    double worst = 0.0;
    for (cplx z : {cplx(0.5, 0), cplx(1, 0), cplx(2, 0), cplx(1, 1)})
      worst = std::max(worst, rate_laplace_residual(g, z));
    out.push_back(at_most("laplace/" + label + "/residual", worst, 1e-5));
  }
  // The atom's t r(t) = min(t, 1) is not a Bernstein function: the probe must fail.
  const auto atom = cbf_rate_probe(catalog::atom(1.0));
  out.push_back(at_least("laplace/atom/probe_rejects", atom.pass ? 0.0 : 1.0, 1.0));
  return out;
}

Checks semigroup(std::uint64_t seed, double) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(-std::numbers::pi / 2, std::numbers::pi / 2);
  const auto t_grid = log_grid(1e-2, 1e4, 20);
  std::map<std::string, std::pair<double, double>> worst;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> phases(50);
    for (double& p : phases) p = phase(rng);
    const auto gen = DiagonalGenerator::log_spaced(1e-3, 1.0, 50, phases);
    const Vector x = random_unit(50, rng);
    for (const auto& [label, g] : members()) {
      auto& w = worst[label];
      w.first = std::max(w.first, rate_bound_check(gen, g, x, t_grid).max_ratio);
      const Vector spectral = spectral_apply(gen, g, x);
      w.second = std::max(w.second, (phillips_apply(gen, g, x) - spectral).norm() / spectral.norm());
    }
  }
  Checks out;
  for (const auto& [name, w] : worst) {
    out.push_back(at_most("semigroup/" + name + "/rate_ratio", w.first, 1.0 + 1e-9));
    out.push_back(at_most("semigroup/" + name + "/phillips", w.second, 1e-7));
  }
  return out;
}

Checks optimality(std::uint64_t, double) {
  const auto report = optimality_probe(DiagonalGenerator::accumulating(1.0, 10),
                                       catalog::frac_power(0.5),
                                       [](double t) { return 1.0 / std::log(2.0 + t); });
  double worst_lower = 0.0;
  for (const auto& row : report.rows) worst_lower = std::max(worst_lower, row.lower_bound / row.norm);
  return {at_most("optimality/lower_bound", worst_lower, 1.0),
          at_least("optimality/growth", report.growth, 100.0)};
}

Checks abel(std::uint64_t, double tol) {
  const std::vector<double> alphas{1e-2, 1e-3, 1e-4, 1e-5};
  const std::vector<double> phases{-1.2, -0.6, 0.0, 0.4, 0.9, 1.3, -1.0, 0.2, 0.7, -0.3, 1.1, -1.4};
  const auto gen = DiagonalGenerator::log_spaced(0.1, 10.0, phases.size(), phases);
  std::mt19937_64 rng(11);
  const Vector x = random_unit(gen.dimension(), rng);
  Checks out;
  for (const auto& [label, g] : members(true)) {
    if (label != "drift" && label != "frac_power:0.5" && label != "log_rate") continue;
    const auto r = abel_transform(gen, catalog::potential_measure(g), x, alphas, g);
    out.push_back(at_most("abel/" + label, r.residual, tol));
  }
  return out;
}

using Suite = std::function<Checks(std::uint64_t, double)>;

const std::map<std::string, Suite, std::less<>>& registry() {
  static const std::map<std::string, Suite, std::less<>> suites{
      {"wiener", wiener},         {"sandwich", sandwich},     {"special", special},
      {"roundtrip", roundtrip},   {"laplace", laplace},       {"semigroup", semigroup},
      {"optimality", optimality}, {"abel", abel},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, suite] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::optional<std::vector<Check>> run_suite(std::string_view name, std::uint64_t seed,
                                            double rate_tol) {
  const auto& suites = registry();
  const auto it = suites.find(name);
  if (it == suites.end()) return std::nullopt;
  return it->second(seed, rate_tol);
}

}  // namespace ergo::cli
