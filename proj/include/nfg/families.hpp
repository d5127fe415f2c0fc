#pragma once

// Symmetric squeezed thermal states (SSTS), the two-mode squeezed vacuum, and
// the closed-form comparison measures evaluated on SSTS.

#include "nfg/gaussian_core.hpp"

#include <vector>

namespace nfg {

/// a = b = 1 + 2n̄, c = −d = 2μ√(n̄(1+n̄)).
struct SstsParams {
  double n_bar = 0.0;
  double mu = 0.0;
};

struct SweepGrid {
  double n_bar_min = 0.0;
  double n_bar_max = 50.0;
  int n_bar_steps = 51;
  double mu_min = 0.0;
  double mu_max = 1.0;
  int mu_steps = 51;
};

struct SweepRow {
  double n_bar = 0.0;
  double mu = 0.0;
  double nfg = 0.0;
  double dg = 0.0;
  double q = 0.0;
  double nfg_minus_dg = 0.0;
  double nfg_minus_q = 0.0;
};

StandardFormParams ssts_params(const SstsParams& p);
GaussianState ssts(const SstsParams& p);

/// CM with diagonal cosh 2r and off-diagonal ±sinh 2r, zero mean.
GaussianState tmsv(double r);

/// N_F^G on SSTS.
double nfg_ssts(const SstsParams& p);
/// Gaussian geometric discord on SSTS.
double dg_ssts(const SstsParams& p);
/// Measurement-induced average-distance correlation Q on SSTS.
double q_ssts(const SstsParams& p);
/// lim_{n̄→∞} nfg_ssts = 1 − (1−μ²)²/(1−μ²/2)², μ ∈ (0, 1).
double nfg_ssts_limit(double mu);

SweepRow sweep_point(const SstsParams& p);

/// Throws Error(InvalidArgument) for empty axes, reversed or out-of-range
/// bounds, and several steps over an empty range.
void validate_grid(const SweepGrid& grid);

/// Rows ordered n̄ outer, μ inner. Rows are computed on worker threads and
/// stored by index, so the output is independent of scheduling.
std::vector<SweepRow> sweep(const SweepGrid& grid);

/// Grids used for the four comparison figures (1–4).
SweepGrid figure_grid(int figure);

}  // namespace nfg
