#include "ergo/catalog.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "ergo/error.hpp"

namespace ergo {

FunctionSpec parse_function_spec(std::string_view text) {
  FunctionSpec spec;
  std::size_t pos = text.find(':');
  spec.family = std::string(text.substr(0, pos));
  if (spec.family.empty()) throw ConfigError("empty function name");
  while (pos != std::string_view::npos) {
    const std::size_t next = text.find(':', pos + 1);
    const std::string field(text.substr(pos + 1, next == std::string_view::npos ? next : next - pos - 1));
    try {
      std::size_t used = 0;
      spec.params.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw ConfigError("bad numeric parameter '" + field + "' in function spec '" +
                        std::string(text) + "'");
    }
    pos = next;
  }
  return spec;
}

std::string format_function_spec(const FunctionSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  out << spec.family;
  for (double p : spec.params) out << ':' << p;
  return out.str();
}

namespace catalog {

namespace {
constexpr BernsteinTags kComplete{true, true};
}

BernsteinFunction drift(double b) { return {0.0, b, {}, "drift", kComplete}; }

BernsteinFunction constant(double a) { return {a, 0.0, {}, "constant", kComplete}; }

BernsteinFunction frac_power(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("frac_power needs 0 < alpha < 1");
  return {0.0, 0.0,
          RadonMeasure::with_density(density::PowerLaw{alpha / std::tgamma(1.0 - alpha), alpha}),
          "frac_power", kComplete};
}

BernsteinFunction atom(double s, double w) {
  return {0.0, 0.0, RadonMeasure::point(s, w), "atom", {}};
}

BernsteinFunction log1p() {
  return {0.0, 0.0, RadonMeasure::with_density(density::LogKernel{1.0}), "log1p", kComplete};
}

BernsteinFunction z_over_z_plus_1() {
  return {0.0, 0.0, RadonMeasure::with_density(density::ExpDecay{1.0, 1.0}), "z_over_z_plus_1",
          kComplete};
}

cplx log_rate_value(cplx z) {
  if (z == cplx(0.0, 0.0)) return 0.0;
  const cplx w = z - 1.0;
  if (std::abs(w) < 1e-4) {
    // Reciprocal of log(1+w)/w = 1 - w/2 + w^2/3 - w^3/4 + ...
    return 1.0 + w * (0.5 + w * (-1.0 / 12.0 + w * (1.0 / 24.0 + w * (-19.0 / 720.0))));
  }
  return w / std::log(z);
}

BernsteinFunction log_rate() {
  return BernsteinFunction::direct("log_rate", log_rate_value, 0.0, 0.0, kComplete);
}

std::vector<BernsteinFunction> with_measure() {
  return {drift(), constant(), frac_power(0.5), frac_power(0.25), atom(1.0), atom(3.0, 2.0),
          log1p(), z_over_z_plus_1()};
}

std::vector<BernsteinFunction> all() {
  auto out = with_measure();
  out.push_back(log_rate());
  return out;
}

std::vector<BernsteinFunction> special() {
  std::vector<BernsteinFunction> out;
  for (auto& g : all())
    if (g.is_special()) out.push_back(g);
  return out;
}

RadonMeasure potential_measure(const BernsteinFunction& g) {
  if (g.name() == "drift")
    return RadonMeasure::with_density(density::GammaKernel{1.0 / g.drift(), 1.0, 0.0});
  if (g.name() == "frac_power") {
    const auto& power = std::get<density::PowerLaw>(g.measure().densities().front());
    const double alpha = power.alpha;
    return RadonMeasure::with_density(density::GammaKernel{1.0 / std::tgamma(alpha), alpha, 0.0});
  }
  if (g.name() == "log_rate") return RadonMeasure::with_density(density::LogPotential{1.0});
  throw MeasureUnavailableError("no closed-form potential measure for '" + g.name() + "'");
}

}  // namespace catalog

BernsteinFunction make_bernstein(const FunctionSpec& spec) {
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (spec.params.size() < lo || spec.params.size() > hi)
      throw ConfigError("wrong number of parameters for '" + spec.family + "'");
  };
  auto param = [&](std::size_t i, double fallback) {
    return i < spec.params.size() ? spec.params[i] : fallback;
  };
  try {
    if (spec.family == "drift") {
      arity(0, 1);
      return catalog::drift(param(0, 1.0));
    }
    if (spec.family == "constant") {
      arity(0, 1);
      return catalog::constant(param(0, 1.0));
    }
    if (spec.family == "frac_power") {
      arity(1, 1);
      return catalog::frac_power(spec.params[0]);
    }
    if (spec.family == "atom") {
      arity(0, 2);
      return catalog::atom(param(0, 1.0), param(1, 1.0));
    }
    if (spec.family == "log1p") {
      arity(0, 0);
      return catalog::log1p();
    }
    if (spec.family == "z_over_z_plus_1") {
      arity(0, 0);
      return catalog::z_over_z_plus_1();
    }
    if (spec.family == "log_rate") {
      arity(0, 0);
      return catalog::log_rate();
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown function '" + spec.family + "'");
}

}  // namespace ergo
