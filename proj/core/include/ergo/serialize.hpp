#pragma once

#include <string>
#include <string_view>

#include "ergo/bernstein.hpp"
#include "ergo/catalog.hpp"
#include "ergo/measure.hpp"
#include "ergo/stieltjes.hpp"

namespace ergo {

// Structured text documents (YAML). Measures look like
//   {atoms: [[s, w], ...], densities: [{family: power_law, params: {c: .., alpha: ..}}]}
// Parsing errors throw ConfigError with the offending line where known.

std::string measure_to_yaml(const RadonMeasure& mu);
RadonMeasure measure_from_yaml(std::string_view text);

/// {role: stieltjes, a_over_z: .., b: .., measure: {...}}
std::string stieltjes_to_yaml(const StieltjesFunction& f);
StieltjesFunction stieltjes_from_yaml(std::string_view text);

/// {role: bernstein, name: .., a: .., b: .., measure: {...}}
std::string bernstein_to_yaml(const BernsteinFunction& g);

/// Accepts either the explicit form above or a catalog reference
/// {bernstein: {family: frac_power, alpha: 0.5}}.
BernsteinFunction bernstein_from_yaml(std::string_view text);

/// Catalog reference {family: .., <param>: ..} to a spec ("frac_power:0.5").
FunctionSpec function_spec_from_yaml(std::string_view text);

}  // namespace ergo
