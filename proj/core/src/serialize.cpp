#include "ergo/serialize.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <map>
#include <utility>

#include "ergo/error.hpp"

namespace ergo {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& what) {
  const auto mark = node.Mark();
  if (mark.line >= 0) throw ConfigError("line " + std::to_string(mark.line + 1) + ": " + what);
  throw ConfigError(what);
}

YAML::Node load(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed document: ") + e.what());
  }
}

double number(const YAML::Node& node, const std::string& key) {
  const YAML::Node v = node[key];
  if (!v) fail(node, "missing field '" + key + "'");
  try {
    return v.as<double>();
  } catch (const YAML::Exception&) {
    fail(v, "field '" + key + "' is not a number");
  }
}

double number_or(const YAML::Node& node, const std::string& key, double fallback) {
  return node[key] ? number(node, key) : fallback;
}

std::vector<double> numbers(const YAML::Node& node, const std::string& key) {
  const YAML::Node v = node[key];
  if (!v || !v.IsSequence()) fail(node, "field '" + key + "' must be a list of numbers");
  try {
    return v.as<std::vector<double>>();
  } catch (const YAML::Exception&) {
    fail(v, "field '" + key + "' must be a list of numbers");
  }
}

struct Emit {
  YAML::Emitter out;
  Emit() {
    out.SetDoublePrecision(17);
    out.SetMapFormat(YAML::Flow);
    out.SetSeqFormat(YAML::Flow);
  }
};

void emit_params(YAML::Emitter& out, const DensityComponent& component) {
  out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
  auto kv = [&](const char* k, double v) { out << YAML::Key << k << YAML::Value << v; };
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, density::PowerLaw>) {
          kv("c", f.c);
          kv("alpha", f.alpha);
        } else if constexpr (std::is_same_v<F, density::ExpDecay>) {
          kv("c", f.c);
          kv("beta", f.beta);
        } else if constexpr (std::is_same_v<F, density::Uniform>) {
          kv("c", f.c);
          kv("s0", f.s0);
          kv("s1", f.s1);
        } else if constexpr (std::is_same_v<F, density::LogKernel> ||
                             std::is_same_v<F, density::LogPotential>) {
          kv("c", f.c);
        } else if constexpr (std::is_same_v<F, density::Tabulated>) {
          out << YAML::Key << "grid" << YAML::Value << f.grid;
          out << YAML::Key << "values" << YAML::Value << f.values;
        } else if constexpr (std::is_same_v<F, density::GammaKernel>) {
          kv("c", f.c);
          kv("p", f.p);
          kv("beta", f.beta);
        } else if constexpr (std::is_same_v<F, density::ShiftedReciprocal>) {
          kv("c", f.c);
          kv("kappa", f.kappa);
        } else {
          throw ConfigError("custom density '" + f.label + "' is not serializable");
        }
      },
      component);
  out << YAML::EndMap;
}

void emit_measure(YAML::Emitter& out, const RadonMeasure& mu) {
  out << YAML::BeginMap;
  out << YAML::Key << "atoms" << YAML::Value << YAML::BeginSeq;
  for (const Atom& a : mu.atoms()) out << YAML::BeginSeq << a.location << a.weight << YAML::EndSeq;
  out << YAML::EndSeq;
  out << YAML::Key << "densities" << YAML::Value << YAML::BeginSeq;
  for (const auto& d : mu.densities()) {
    out << YAML::BeginMap << YAML::Key << "family" << YAML::Value << family_name(d);
    emit_params(out, d);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
}

DensityComponent parse_density(const YAML::Node& node) {
  if (!node.IsMap() || !node["family"]) fail(node, "density needs a 'family'");
  const std::string family = node["family"].as<std::string>();
  const YAML::Node p = node["params"] ? node["params"] : YAML::Node(YAML::NodeType::Map);
  if (family == "power_law") return density::PowerLaw{number(p, "c"), number(p, "alpha")};
  if (family == "exp_decay") return density::ExpDecay{number(p, "c"), number(p, "beta")};
  if (family == "uniform") return density::Uniform{number(p, "c"), number(p, "s0"), number(p, "s1")};
  if (family == "log_kernel") return density::LogKernel{number_or(p, "c", 1.0)};
  if (family == "tabulated") return density::Tabulated{numbers(p, "grid"), numbers(p, "values")};
  if (family == "gamma_kernel")
    return density::GammaKernel{number(p, "c"), number(p, "p"), number(p, "beta")};
  if (family == "shifted_reciprocal")
    return density::ShiftedReciprocal{number(p, "c"), number(p, "kappa")};
  if (family == "log_potential") return density::LogPotential{number_or(p, "c", 1.0)};
  fail(node["family"], "unknown density family '" + family + "'");
}

RadonMeasure parse_measure(const YAML::Node& node) {
  if (!node || node.IsNull()) return {};
  if (!node.IsMap()) fail(node, "measure must be a mapping with 'atoms' and 'densities'");
  std::vector<Atom> atoms;
  if (const YAML::Node list = node["atoms"]) {
    if (!list.IsSequence()) fail(list, "'atoms' must be a list of [s, w] pairs");
    for (const YAML::Node& pair : list) {
      if (!pair.IsSequence() || pair.size() != 2) fail(pair, "atom must be a pair [s, w]");
      try {
        atoms.push_back({pair[0].as<double>(), pair[1].as<double>()});
      } catch (const YAML::Exception&) {
        fail(pair, "atom entries must be numbers");
      }
    }
  }
  std::vector<DensityComponent> densities;
  if (const YAML::Node list = node["densities"]) {
    if (!list.IsSequence()) fail(list, "'densities' must be a list");
    for (const YAML::Node& d : list) densities.push_back(parse_density(d));
  }
  try {
    return RadonMeasure(std::move(atoms), std::move(densities));
  } catch (const DomainError& e) {
    fail(node, e.what());
  }
}

FunctionSpec parse_spec(const YAML::Node& node) {
  if (!node.IsMap() || !node["family"]) fail(node, "function reference needs a 'family'");
  FunctionSpec spec{node["family"].as<std::string>(), {}};
  // Parameter names per family, in spec-string order.
  static const std::map<std::string, std::vector<std::string>> names{
      {"drift", {"b"}},       {"constant", {"a"}},      {"frac_power", {"alpha"}},
      {"atom", {"s", "w"}},   {"log1p", {}},            {"z_over_z_plus_1", {}},
      {"log_rate", {}},       {"log_ratio", {}}};
  const auto it = names.find(spec.family);
  if (it == names.end()) fail(node["family"], "unknown function '" + spec.family + "'");
  for (const std::string& key : it->second) {
    if (!node[key]) break;
    spec.params.push_back(number(node, key));
  }
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (key == "family") continue;
    if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
      fail(kv.first, "unknown parameter '" + key + "' for '" + spec.family + "'");
  }
  return spec;
}

}  // namespace

std::string measure_to_yaml(const RadonMeasure& mu) {
  Emit e;
  emit_measure(e.out, mu);
  return e.out.c_str();
}

RadonMeasure measure_from_yaml(std::string_view text) { return parse_measure(load(text)); }

std::string stieltjes_to_yaml(const StieltjesFunction& f) {
  Emit e;
  auto& out = e.out;
  out << YAML::BeginMap << YAML::Key << "role" << YAML::Value << "stieltjes";
  out << YAML::Key << "a_over_z" << YAML::Value << f.a_over_z();
  out << YAML::Key << "b" << YAML::Value << f.constant();
  out << YAML::Key << "measure" << YAML::Value;
  emit_measure(out, f.measure());
  out << YAML::EndMap;
  return out.c_str();
}

StieltjesFunction stieltjes_from_yaml(std::string_view text) {
  const YAML::Node node = load(text);
  if (!node.IsMap() || !node["role"] || node["role"].as<std::string>() != "stieltjes")
    fail(node, "expected role 'stieltjes'");
  try {
    return {number_or(node, "a_over_z", 0.0), number_or(node, "b", 0.0), parse_measure(node["measure"])};
  } catch (const DomainError& e) {
    fail(node, e.what());
  }
}

std::string bernstein_to_yaml(const BernsteinFunction& g) {
  Emit e;
  auto& out = e.out;
  out << YAML::BeginMap << YAML::Key << "role" << YAML::Value << "bernstein";
  out << YAML::Key << "name" << YAML::Value << g.name();
  out << YAML::Key << "a" << YAML::Value << g.killing();
  out << YAML::Key << "b" << YAML::Value << g.drift();
  out << YAML::Key << "measure" << YAML::Value;
  emit_measure(out, g.measure());
  out << YAML::EndMap;
  return out.c_str();
}

BernsteinFunction bernstein_from_yaml(std::string_view text) {
  const YAML::Node node = load(text);
  if (node.IsMap() && node["bernstein"]) return make_bernstein(parse_spec(node["bernstein"]));
  if (!node.IsMap() || !node["role"] || node["role"].as<std::string>() != "bernstein")
    fail(node, "expected role 'bernstein' or a 'bernstein' catalog reference");
  try {
    return {number_or(node, "a", 0.0), number_or(node, "b", 0.0), parse_measure(node["measure"]),
            node["name"] ? node["name"].as<std::string>() : std::string{}};
  } catch (const DomainError& e) {
    fail(node, e.what());
  }
}

FunctionSpec function_spec_from_yaml(std::string_view text) { return parse_spec(load(text)); }

}  // namespace ergo
