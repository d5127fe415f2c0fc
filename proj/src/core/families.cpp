#include "nfg/families.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace nfg {
namespace {

void require_ssts(const SstsParams& p) {
  if (!(std::isfinite(p.n_bar) && p.n_bar >= 0.0)) throw Error(ErrorCode::InvalidArgument, "n_bar must be finite and ≥ 0");
  if (!(p.mu >= 0.0 && p.mu <= 1.0)) throw Error(ErrorCode::InvalidArgument, "mu must lie in [0, 1]");
}

// Shared pieces: s = 1 + 2n̄, t = n̄(1+n̄) = (s² − 1)/4.
struct SstsTerms {
  double s;
  double t;
  double mu2;
};

SstsTerms terms(const SstsParams& p) {
  require_ssts(p);
  return {1.0 + 2.0 * p.n_bar, p.n_bar * (1.0 + p.n_bar), p.mu * p.mu};
}

double grid_value(double lo, double hi, int steps, int i) {
  if (steps == 1) return lo;
  if (i == steps - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

}  // namespace

StandardFormParams ssts_params(const SstsParams& p) {
  require_ssts(p);
  const double a = 1.0 + 2.0 * p.n_bar;
  const double c = 2.0 * p.mu * std::sqrt(p.n_bar * (1.0 + p.n_bar));
  return {a, a, c, -c};
}

GaussianState ssts(const SstsParams& p) { return GaussianState(ssts_params(p).covariance(), 1, 1); }

GaussianState tmsv(double r) {
  if (!(std::isfinite(r) && r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "squeezing r must be finite and ≥ 0");
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  return GaussianState(StandardFormParams{ch, ch, sh, -sh}.covariance(), 1, 1);
}

double nfg_ssts(const SstsParams& p) {
  // 1 − X²/Y² = (Y − X)(Y + X)/Y² with X = s² − 4μ²t, Y = s² − 2μ²t.
  const auto [s, t, mu2] = terms(p);
  const double x = s * s - 4.0 * mu2 * t;
  const double y = s * s - 2.0 * mu2 * t;
  const double ratio = 2.0 * mu2 * t / y;
  return ratio * (1.0 + x / y);
}

double dg_ssts(const SstsParams& p) {
  // 1/X − 9/(√Z + s)² with Z = 4s² − 12μ²t rearranges to
  // 24μ²t / (X (√Z + s)(√Z + 2s)).
  const auto [s, t, mu2] = terms(p);
  const double x = s * s - 4.0 * mu2 * t;
  const double rz = std::sqrt(4.0 * s * s - 12.0 * mu2 * t);
  return 24.0 * mu2 * t / (x * (rz + s) * (rz + 2.0 * s));
}

double q_ssts(const SstsParams& p) {
  // 1/(1 + 2n̄(1−μ²)) − 1/(1 + 2n̄) = 2n̄μ² / ((1 + 2n̄(1−μ²))(1 + 2n̄)).
  require_ssts(p);
  const double mu2 = p.mu * p.mu;
  return 2.0 * p.n_bar * mu2 / ((1.0 + 2.0 * p.n_bar * (1.0 - mu2)) * (1.0 + 2.0 * p.n_bar));
}

double nfg_ssts_limit(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw Error(ErrorCode::InvalidArgument, "mu must lie in the open interval (0, 1)");
  const double mu2 = mu * mu;
  const double x = 1.0 - mu2;
  const double y = 1.0 - 0.5 * mu2;
  return (0.5 * mu2 / y) * (1.0 + x / y);
}

SweepRow sweep_point(const SstsParams& p) {
  SweepRow row;
  row.n_bar = p.n_bar;
  row.mu = p.mu;
  row.nfg = nfg_ssts(p);
  row.dg = dg_ssts(p);
  row.q = q_ssts(p);
  row.nfg_minus_dg = row.nfg - row.dg;
  row.nfg_minus_q = row.nfg - row.q;
  return row;
}

void validate_grid(const SweepGrid& grid) {
  if (grid.n_bar_steps < 1 || grid.mu_steps < 1) throw Error(ErrorCode::InvalidArgument, "sweep grid needs at least one step per axis");
  if (!(grid.n_bar_min <= grid.n_bar_max) || !(grid.mu_min <= grid.mu_max)) {
    throw Error(ErrorCode::InvalidArgument, "sweep bounds must satisfy min ≤ max");
  }
  if ((grid.n_bar_steps > 1 && grid.n_bar_min == grid.n_bar_max) || (grid.mu_steps > 1 && grid.mu_min == grid.mu_max)) {
    throw Error(ErrorCode::InvalidArgument, "degenerate sweep axis: several steps over an empty range");
  }
  require_ssts({grid.n_bar_min, grid.mu_min});
  require_ssts({grid.n_bar_max, grid.mu_max});
}

std::vector<SweepRow> sweep(const SweepGrid& grid) {
  validate_grid(grid);

  const std::size_t total = static_cast<std::size_t>(grid.n_bar_steps) * static_cast<std::size_t>(grid.mu_steps);
  std::vector<SweepRow> rows(total);
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx / static_cast<std::size_t>(grid.mu_steps));
      const int j = static_cast<int>(idx % static_cast<std::size_t>(grid.mu_steps));
      rows[idx] = sweep_point({grid_value(grid.n_bar_min, grid.n_bar_max, grid.n_bar_steps, i),
                               grid_value(grid.mu_min, grid.mu_max, grid.mu_steps, j)});
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  if (workers == 1 || total < 4096) {
    fill(0, total);
    return rows;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(fill, begin, end);
    }
  }
  return rows;
}

SweepGrid figure_grid(int figure) {
  switch (figure) {
    case 1:
    case 3:
      return {0.0, 50.0, 51, 0.0, 1.0, 51};
    case 2:
    case 4:
      return {100000.0, 100500.0, 51, 0.0, 1.0, 51};
    default:
      throw Error(ErrorCode::InvalidArgument, "figure must be 1, 2, 3 or 4");
  }
}

}  // namespace nfg
