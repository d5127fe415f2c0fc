#include "box_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

namespace nfg::detail {
namespace {

constexpr double kInvPhi = 0.6180339887498949;

struct LineBest {
  double x;
  double value;
};

// Golden-section maximization on [l, r]; endpoints are always candidates so a
// maximum on the boundary is found exactly.
LineBest golden_max(const std::function<double(double)>& g, double l, double r, int iters, long& evals) {
  LineBest best{l, g(l)};
  const double fr = g(r);
  evals += 2;
  if (fr > best.value) best = {r, fr};
  double x1 = r - kInvPhi * (r - l);
  double x2 = l + kInvPhi * (r - l);
  double f1 = g(x1);
  double f2 = g(x2);
  evals += 2;
  for (int it = 0; it < iters && r - l > 1e-15; ++it) {
    if (f1 < f2) {
      l = x1;
      x1 = x2;
      f1 = f2;
      x2 = l + kInvPhi * (r - l);
      f2 = g(x2);
    } else {
      r = x2;
      x2 = x1;
      f2 = f1;
      x1 = r - kInvPhi * (r - l);
      f1 = g(x1);
    }
    ++evals;
  }
  if (f1 > best.value) best = {x1, f1};
  if (f2 > best.value) best = {x2, f2};
  return best;
}

std::vector<double> node_point(long index, int dims, int grid_points, double lo, double step) {
  std::vector<double> x(static_cast<std::size_t>(dims));
  for (int d = 0; d < dims; ++d) {
    const long k = index % grid_points;
    index /= grid_points;
    x[static_cast<std::size_t>(d)] = k == grid_points - 1 ? lo + step * (grid_points - 1) : lo + step * static_cast<double>(k);
  }
  return x;
}

}  // namespace

BoxSearchResult maximize_in_box(const std::function<double(const std::vector<double>&)>& f, int dims,
                                double lo, double hi, const BoxSearchOptions& options) {
  BoxSearchResult out;
  if (dims == 0) {
    out.value = f({});
    out.converged = true;
    out.evaluations = 1;
    return out;
  }
  const int gp = std::max(2, options.grid_points);
  const double step = (hi - lo) / static_cast<double>(gp - 1);

  // Coarse grid: full tensor product when affordable, otherwise a seeded sample.
  long total = 1;
  bool full = true;
  for (int d = 0; d < dims; ++d) {
    if (total > options.max_grid_nodes / gp) {
      full = false;
      break;
    }
    total *= gp;
  }
  std::vector<long> nodes;
  if (full) {
    nodes.resize(static_cast<std::size_t>(total));
    std::iota(nodes.begin(), nodes.end(), 0L);
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> pick(0, gp - 1);
    nodes.reserve(static_cast<std::size_t>(options.max_grid_nodes));
    for (long i = 0; i < options.max_grid_nodes; ++i) {
      long idx = 0;
      for (int d = 0; d < dims; ++d) idx = idx * gp + pick(rng);
      nodes.push_back(idx);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  }
  std::vector<std::pair<double, long>> scored;
  scored.reserve(nodes.size());
  for (long idx : nodes) scored.emplace_back(f(node_point(idx, dims, gp, lo, step)), idx);
  out.evaluations += static_cast<long>(nodes.size());

  const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, options.restarts)), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<long>(starts), scored.end(),
                    [](const auto& l, const auto& r) { return l.first > r.first || (l.first == r.first && l.second < r.second); });

  out.value = scored.front().first;
  out.x = node_point(scored.front().second, dims, gp, lo, step);
  bool all_converged = true;

  for (std::size_t s = 0; s < starts; ++s) {
    std::vector<double> x = node_point(scored[s].second, dims, gp, lo, step);
    double fx = scored[s].first;
    bool converged = false;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      const double before = fx;
      for (int d = 0; d < dims; ++d) {
        const auto ud = static_cast<std::size_t>(d);
        const double center = x[ud];
        auto line = [&](double t) {
          x[ud] = t;
          const double v = f(x);
          x[ud] = center;
          return v;
        };
        const LineBest lb = golden_max(line, std::max(lo, center - step), std::min(hi, center + step),
                                       options.refine_iters, out.evaluations);
        if (lb.value > fx) {
          fx = lb.value;
          x[ud] = lb.x;
        }
      }
      if (fx - before <= 1e-15 * std::max(1.0, std::abs(fx))) {
        converged = true;
        break;
      }
    }
    all_converged = all_converged && converged;
    if (fx > out.value) {
      out.value = fx;
      out.x = x;
    }
  }
  out.converged = all_converged;
  return out;
}

}  // namespace nfg::detail
