#include <yaml-cpp/yaml.h>

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <set>

#include "ergo/catalog.hpp"
#include "ergo/cli.hpp"
#include "ergo/error.hpp"
#include "ergo/semigroup.hpp"
#include "ergo/serialize.hpp"

namespace ergo::cli {

namespace {

// Experiment file, one experiment per document:
//   experiment: rate_bound | decay_profile | optimality
//   function: {family: frac_power, alpha: 0.5}
//   generator: {eigenvalues: [[re, im], ...]}
//            | {log_spaced: {lo: .., hi: .., n: .., random_phases: bool}}
//            | {accumulating: {rho: .., n: ..}}
//   t_grid: [t, ...] | {lo: .., hi: .., n: ..}      (not used by optimality)
//   vector: ones | random

[[noreturn]] void fail(const YAML::Node& node, const std::string& what) {
  const auto mark = node.Mark();
  if (mark.line >= 0) throw ConfigError("line " + std::to_string(mark.line + 1) + ": " + what);
  throw ConfigError(what);
}

void only_keys(const YAML::Node& node, const std::set<std::string>& allowed, const std::string& where) {
  if (!node.IsMap()) fail(node, where + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) fail(kv.first, "unknown field '" + key + "' in " + where);
  }
}

YAML::Node field(const YAML::Node& node, const std::string& key) {
  const YAML::Node v = node[key];
  if (!v) fail(node, "missing field '" + key + "'");
  return v;
}

template <class T>
T as(const YAML::Node& node, const std::string& what) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, "field '" + what + "' has the wrong type");
  }
}

DiagonalGenerator generator(const YAML::Node& node, std::mt19937_64& rng) {
  only_keys(node, {"eigenvalues", "log_spaced", "accumulating"}, "generator");
  if (node.size() != 1) fail(node, "generator needs exactly one of eigenvalues, log_spaced, accumulating");
  try {
    if (const auto e = node["eigenvalues"]) {
      if (!e.IsSequence() || e.size() == 0) fail(e, "eigenvalue list is empty");
      std::vector<cplx> lambda;
      for (const auto& item : e) {
        if (item.IsSequence() && item.size() == 2)
          lambda.emplace_back(as<double>(item[0], "eigenvalues"), as<double>(item[1], "eigenvalues"));
        else
          lambda.emplace_back(as<double>(item, "eigenvalues"), 0.0);
      }
      return DiagonalGenerator(std::move(lambda));
    }
    if (const auto l = node["log_spaced"]) {
      only_keys(l, {"lo", "hi", "n", "random_phases"}, "log_spaced");
      const auto n = as<std::size_t>(field(l, "n"), "n");
      if (n == 0) fail(l, "eigenvalue list is empty");
      std::vector<double> phases;
      if (l["random_phases"] && as<bool>(l["random_phases"], "random_phases")) {
        std::uniform_real_distribution<double> phase(-std::numbers::pi / 2, std::numbers::pi / 2);
        phases.resize(n);
        for (double& p : phases) p = phase(rng);
      }
      return DiagonalGenerator::log_spaced(as<double>(field(l, "lo"), "lo"),
                                           as<double>(field(l, "hi"), "hi"), n, phases);
    }
    const auto a = node["accumulating"];
    only_keys(a, {"rho", "n"}, "accumulating");
    return DiagonalGenerator::accumulating(as<double>(field(a, "rho"), "rho"),
                                           as<int>(field(a, "n"), "n"));
  } catch (const DomainError& e) {
    fail(node, e.what());
  }
}

std::vector<double> t_grid(const YAML::Node& node) {
  if (node.IsSequence()) {
    auto v = as<std::vector<double>>(node, "t_grid");
    if (v.empty()) fail(node, "t_grid is empty");
    return v;
  }
  only_keys(node, {"lo", "hi", "n"}, "t_grid");
  try {
    return log_grid(as<double>(field(node, "lo"), "lo"), as<double>(field(node, "hi"), "hi"),
                    as<std::size_t>(field(node, "n"), "n"));
  } catch (const DomainError& e) {
    fail(node, e.what());
  }
}

BernsteinFunction function(const YAML::Node& node) {
  try {
    return make_bernstein(function_spec_from_yaml(YAML::Dump(node)));
  } catch (const ConfigError& e) {
    fail(node, std::string("function: ") + e.what());
  }
}

}  // namespace

void simulate(std::string_view config_text, std::uint64_t seed, std::ostream& out) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(config_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  only_keys(root, {"experiment", "function", "generator", "t_grid", "vector"}, "config");
  const auto kind = as<std::string>(field(root, "experiment"), "experiment");
  std::mt19937_64 rng(seed);
  const auto g = function(field(root, "function"));
  const auto gen = generator(field(root, "generator"), rng);

  Vector x = Vector::Ones(static_cast<Eigen::Index>(gen.dimension()));
  if (const auto v = root["vector"]) {
    const auto name = as<std::string>(v, "vector");
    if (name == "random") {
      std::normal_distribution<double> normal;
      for (auto& e : x) e = cplx(normal(rng), normal(rng));
      x /= x.norm();
    } else if (name != "ones") {
      fail(v, "vector must be 'ones' or 'random'");
    }
  }

  if (kind == "optimality") {
    const auto report = optimality_probe(gen, g, [](double t) { return 1.0 / std::log(2.0 + t); });
    out << "n,t,lower_bound,norm,ratio\n";
    for (const auto& row : report.rows) {
      out << row.n << ',' << csv_number(row.t) << ',' << csv_number(row.lower_bound) << ','
          << csv_number(row.norm) << ',' << csv_number(row.ratio) << '\n';
    }
    out << "# delta " << csv_number(report.delta) << '\n';
    out << "# growth " << csv_number(report.growth) << '\n';
    out << "# lower_bound_holds " << (report.lower_bound_holds ? "yes" : "no") << '\n';
    return;
  }
  const auto grid = t_grid(field(root, "t_grid"));
  if (kind == "rate_bound") {
    const auto report = rate_bound_check(gen, g, x, grid);
    out << "t,ratio\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
      out << csv_number(grid[i]) << ',' << csv_number(report.ratios[i]) << '\n';
    out << "# M " << csv_number(gen.bound()) << '\n';
    out << "# bound_holds " << (report.pass ? "yes" : "no") << '\n';
  } else if (kind == "decay_profile") {
    out << "t,norm,rate,ratio\n";
    for (const auto& row : decay_profile(gen, g, x, grid)) {
      out << csv_number(row.t) << ',' << csv_number(row.norm) << ',' << csv_number(row.rate) << ','
          << csv_number(row.ratio) << '\n';
    }
  } else {
    fail(root["experiment"], "unknown experiment '" + kind + "'");
  }
}

}  // namespace ergo::cli
