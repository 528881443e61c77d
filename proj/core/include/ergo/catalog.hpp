#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ergo/bernstein.hpp"
#include "ergo/measure.hpp"

namespace ergo {

/// A catalog name with numeric parameters, written "family:p1:p2".
struct FunctionSpec {
  std::string family;
  std::vector<double> params;
};

FunctionSpec parse_function_spec(std::string_view text);
std::string format_function_spec(const FunctionSpec& spec);

namespace catalog {

BernsteinFunction drift(double b = 1.0);
BernsteinFunction constant(double a = 1.0);
/// z^alpha, 0 < alpha < 1.
BernsteinFunction frac_power(double alpha);
/// w (1 - e^{-sz}).
BernsteinFunction atom(double s = 1.0, double w = 1.0);
BernsteinFunction log1p();
/// z/(z+1).
BernsteinFunction z_over_z_plus_1();
/// (z - 1)/log z; direct evaluation only.
BernsteinFunction log_rate();

/// (z - 1)/log z with its removable singularity at z = 1 and limit 0 at z = 0.
cplx log_rate_value(cplx z);

/// Members with an explicit (a, b, mu) triple.
std::vector<BernsteinFunction> with_measure();
/// Every member, including direct-evaluation ones.
std::vector<BernsteinFunction> all();
/// Members tagged special.
std::vector<BernsteinFunction> special();

/// Laplace-side measure of a potential 1/g, where one is known in closed form:
/// drift -> Lebesgue, frac_power -> s^{alpha-1}/Gamma(alpha), log_rate -> log potential.
RadonMeasure potential_measure(const BernsteinFunction& g);

}  // namespace catalog

/// Builds a catalog Bernstein function from its spec. Throws ConfigError.
BernsteinFunction make_bernstein(const FunctionSpec& spec);

}  // namespace ergo
