#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace nfg::detail {

struct BoxSearchOptions {
  int grid_points = 33;
  int refine_iters = 60;
  int restarts = 4;
  std::uint64_t seed = 0;
  /// Tensor grids larger than this are replaced by a seeded sample of nodes.
  long max_grid_nodes = 50000;
  int max_sweeps = 30;
};

struct BoxSearchResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  long evaluations = 0;
};

/// Maximizes f over the box [lo, hi]^dims: coarse grid, then cyclic
/// coordinate golden-section refinement from the best `restarts` nodes.
BoxSearchResult maximize_in_box(const std::function<double(const std::vector<double>&)>& f, int dims,
                                double lo, double hi, const BoxSearchOptions& options);

}  // namespace nfg::detail
