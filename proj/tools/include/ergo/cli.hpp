#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/numeric.hpp"

namespace ergo::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

struct Check {
  std::string name;
  double measured;
  double bound;
  bool pass;
};

const std::vector<std::string>& suite_names();

/// Runs a verification suite; nullopt for an unknown name. `rate_tol` replaces
/// the 1e-6 relative tolerance of the identity and round-trip checks.
std::optional<std::vector<Check>> run_suite(std::string_view name, std::uint64_t seed,
                                            double rate_tol);

/// "1,4,9" or "1+2i,3-0.5i".
std::vector<cplx> parse_points(std::string_view text);
/// "0.1,1,10" or "lo:hi:n" for n log-spaced points.
std::vector<double> parse_t_grid(std::string_view text);

/// Global relative tolerance, ERGO_RATE_TOL or 1e-6. Throws ConfigError.
double rate_tolerance();

/// Runs one experiment config (YAML) and writes its CSV table. Throws ConfigError.
void simulate(std::string_view config_text, std::uint64_t seed, std::ostream& out);

std::string csv_number(double v);

/// Entry point for the `ergo` executable.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ergo::cli
