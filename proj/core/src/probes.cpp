#include <cmath>
#include <limits>

#include "ergo/bernstein.hpp"
#include "ergo/error.hpp"

namespace ergo {

CmVerdict cm_probe_samples(std::span<const double> grid, std::span<const double> values,
                           int n_max, const CmProbeOptions& options) {
  const std::size_t n = grid.size();
  if (values.size() != n) throw DomainError("cm_probe: grid and values differ in length");
  if (n_max < 0 || n <= static_cast<std::size_t>(n_max))
    throw DomainError("cm_probe: grid too short for the requested order");
  for (std::size_t i = 1; i < n; ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("cm_probe: grid must be strictly increasing");

  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> table(values.begin(), values.end());
  for (int order = 0; order <= n_max; ++order) {
    if (order > 0) {
      for (std::size_t i = 0; i + order < n; ++i)
        table[i] = (table[i + 1] - table[i]) / (grid[i + order] - grid[i]);
    }
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i + order < n; ++i) {
      // Rounding allowance: the divided difference is sum_j f_j / prod_{k != j}(t_j - t_k).
      double spread = 0.0;
      for (int j = 0; j <= order; ++j) {
        double weight = std::abs(values[i + j]);
        for (int k = 0; k <= order; ++k)
          if (k != j) weight /= std::abs(grid[i + j] - grid[i + k]);
        spread += weight;
      }
      const double allowance = options.tolerance + (options.value_rel_error + 4.0 * (order + 1) * eps) * spread;
      const double signed_value = sign * table[i];
      if (!(signed_value >= -allowance)) {
        return {false, order, i, grid[i], grid[i + order], signed_value};
      }
    }
  }
  return {};
}

CmVerdict cm_probe(const std::function<double(double)>& h, std::span<const double> grid,
                   int n_max, const CmProbeOptions& options) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = h(grid[i]);
  return cm_probe_samples(grid, values, n_max, options);
}

}  // namespace ergo
