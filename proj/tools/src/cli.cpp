#include "ergo/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "ergo/catalog.hpp"
#include "ergo/error.hpp"
#include "ergo/stieltjes.hpp"

namespace ergo::cli {

namespace {

double to_double(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

cplx parse_point(std::string_view text) {
  if (text.empty()) throw ConfigError("empty point");
  if (text.back() != 'i') return to_double(text);
  const std::string_view body = text.substr(0, text.size() - 1);
  // The sign separating the parts is the last one not opening an exponent.
  std::size_t cut = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  if (cut == std::string_view::npos) {
    const double im = (body.empty() || body == "+") ? 1.0 : body == "-" ? -1.0 : to_double(body);
    return {0.0, im};
  }
  const std::string_view im = body.substr(cut);
  const double im_value = im == "+" ? 1.0 : im == "-" ? -1.0 : to_double(im);
  return {to_double(body.substr(0, cut)), im_value};
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open '" + path + "' for writing");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_eval(const std::string& fn, const std::string& points, const std::string& path,
             std::ostream& out) {
  const auto zs = parse_points(points);
  Output sink(path, out);
  *sink << "re_z,im_z,re_value,im_value\n";
  std::optional<BernsteinFunction> g;
  if (fn != "log_ratio") g = make_bernstein(parse_function_spec(fn));
  for (cplx z : zs) {
    const cplx v = g ? evaluate(*g, z) : log_ratio(z);
    *sink << csv_number(z.real()) << ',' << csv_number(z.imag()) << ',' << csv_number(v.real())
          << ',' << csv_number(v.imag()) << '\n';
  }
  return kPass;
}

int cmd_rate(const std::string& fn, const std::string& grid_text, const std::string& path,
             std::ostream& out) {
  const auto grid = parse_t_grid(grid_text);
  const auto g = make_bernstein(parse_function_spec(fn));
  const double tol = rate_tolerance();
  Output sink(path, out);
  if (!g.has_measure()) {
    // No triple: report the comparability bracket r(t) in [|g(1/t)|/2, e |g(1/t)|].
    *sink << "t,r_lower,r_upper\n";
    for (double t : grid) {
      const auto b = rate_bracket(g, t);
      *sink << csv_number(t) << ',' << csv_number(b.lower) << ',' << csv_number(b.upper) << '\n';
    }
    *sink << "# measure unavailable: rows bracket r(t) by |g(1/t)|/2 and e|g(1/t)|\n";
    return kPass;
  }
  const RateFunction r(g);
  std::vector<double> scaled;
  *sink << "t,r,t_r\n";
  for (double t : grid) {
    scaled.push_back(r.scaled(t));
    *sink << csv_number(t) << ',' << csv_number(r(t)) << ',' << csv_number(scaled.back()) << '\n';
  }
  bool concave = true;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (scaled[i] < scaled[i - 1] * (1.0 - tol)) concave = false;
    if (i + 1 < grid.size()) {
      const double s0 = (scaled[i] - scaled[i - 1]) / (grid[i] - grid[i - 1]);
      const double s1 = (scaled[i + 1] - scaled[i]) / (grid[i + 1] - grid[i]);
      if (s1 > s0 + tol * std::max(1.0, std::abs(s0))) concave = false;
    }
  }
  *sink << "# t r(t) increasing and concave: " << (concave ? "yes" : "no") << '\n';
  return concave ? kPass : kFail;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& path,
               std::ostream& out, std::ostream& err) {
  const auto checks = run_suite(suite, seed, rate_tolerance());
  if (!checks) {
    err << "unknown suite '" << suite << "'; expected one of:";
    for (const auto& name : suite_names()) err << ' ' << name;
    err << '\n';
    return kUsage;
  }
  Output sink(path, out);
  *sink << "check,measured,bound,result\n";
  int failures = 0;
  for (const auto& c : *checks) {
    if (!c.pass) ++failures;
    *sink << c.name << ',' << csv_number(c.measured) << ',' << csv_number(c.bound) << ','
          << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  *sink << "# " << suite << ": " << checks->size() - failures << " of " << checks->size()
        << " checks pass\n";
  return failures == 0 ? kPass : kFail;
}

int cmd_simulate(const std::string& config, std::uint64_t seed, const std::string& path,
                 std::ostream& out) {
  std::ifstream in(config);
  if (!in) throw ConfigError("cannot read config '" + config + "'");
  std::stringstream text;
  text << in.rdbuf();
  // Render fully before touching the output so a bad config leaves no partial file.
  std::ostringstream table;
  simulate(text.str(), seed, table);
  Output sink(path, out);
  *sink << table.str();
  return kPass;
}

}  // namespace

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<cplx> parse_points(std::string_view text) {
  std::vector<cplx> out;
  for (auto item : split(text, ',')) out.push_back(parse_point(item));
  return out;
}

std::vector<double> parse_t_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 3) {
    const double n = to_double(parts[2]);
    if (!(n >= 1.0) || n != std::floor(n)) throw ConfigError("t-grid count must be a positive integer");
    try {
      return log_grid(to_double(parts[0]), to_double(parts[1]), static_cast<std::size_t>(n));
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  if (parts.size() != 1) throw ConfigError("t-grid is a list 't1,t2,...' or 'lo:hi:n'");
  std::vector<double> out;
  for (auto item : split(text, ',')) {
    const double t = to_double(item);
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("t-grid values must be positive");
    out.push_back(t);
  }
  return out;
}

double rate_tolerance() {
  const char* env = std::getenv("ERGO_RATE_TOL");
  if (env == nullptr || *env == '\0') return 1e-6;
  const double tol = to_double(env);
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError("ERGO_RATE_TOL must be positive");
  return tol;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bernstein functions, rates of Cesaro means, and their verification suites", "ergo"};
  app.require_subcommand(1);

  std::string fn;
  std::string points;
  std::string t_grid = "0.1,1,10,100";
  std::string suite;
  std::string config;
  std::string path;
  std::uint64_t seed = 1;

  auto* eval = app.add_subcommand("eval", "evaluate a catalog function at points");
  eval->add_option("--fn", fn, "function spec, e.g. frac_power:0.5 or log_ratio")->required();
  eval->add_option("--points", points, "comma-separated points, complex as 1+2i")->required();
  eval->add_option("--out", path, "write CSV here instead of stdout");

  auto* rate_cmd = app.add_subcommand("rate", "tabulate r(t) and t r(t)");
  rate_cmd->add_option("--fn", fn, "function spec")->required();
  rate_cmd->add_option("--t-grid", t_grid, "'t1,t2,...' or 'lo:hi:n'");
  rate_cmd->add_option("--out", path, "write CSV here instead of stdout");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")->required();
  verify->add_option("--seed", seed, "seed for random draws");
  verify->add_option("--out", path, "write the report here instead of stdout");

  auto* sim = app.add_subcommand("simulate", "run an experiment config");
  sim->add_option("--config", config, "experiment file (YAML)")->required();
  sim->add_option("--seed", seed, "seed for random draws");
  sim->add_option("--out", path, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "ergo: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*eval) return cmd_eval(fn, points, path, out);
    if (*rate_cmd) return cmd_rate(fn, t_grid, path, out);
    if (*verify) return cmd_verify(suite, seed, path, out, err);
    if (*sim) return cmd_simulate(config, seed, path, out);
  } catch (const std::exception& e) {
    err << "ergo: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace ergo::cli
