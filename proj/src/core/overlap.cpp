#include "nfg/overlap.hpp"

#include <algorithm>
#include <cmath>

namespace nfg {
namespace {

void require_same_modes(const GaussianState& rho, const GaussianState& sigma) {
  if (rho.cm().dim() != sigma.cm().dim()) {
    throw Error(ErrorCode::DimensionMismatch, "states have different mode counts");
  }
}

double log_purity(const GaussianState& rho) { return -0.5 * log_det_spd(rho.cm().matrix()); }

double log_fidelity(const GaussianState& rho, const GaussianState& sigma) {
  return overlap(rho, sigma).log_value - 0.5 * (log_purity(rho) + log_purity(sigma));
}

}  // namespace

OverlapResult overlap(const GaussianState& rho, const GaussianState& sigma) {
  require_same_modes(rho, sigma);
  const Matrix mid = 0.5 * (rho.cm().matrix() + sigma.cm().matrix());
  Eigen::LLT<Matrix> llt(mid);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "midpoint covariance matrix is singular");
  }
  const Vector delta = rho.mean().vector() - sigma.mean().vector();
  const double quad = delta.dot(llt.solve(delta));
  const double log_value = -0.5 * log_det_spd(mid) - 0.5 * quad;
  return {std::exp(log_value), log_value};
}

double purity(const GaussianState& rho) { return std::exp(log_purity(rho)); }

double fidelity_f(const GaussianState& rho, const GaussianState& sigma) {
  // Overlaps of Gaussian states are positive; min() only absorbs rounding.
  return std::min(1.0, std::exp(log_fidelity(rho, sigma)));
}

double c_squared(const GaussianState& rho, const GaussianState& sigma) {
  return std::clamp(-std::expm1(2.0 * log_fidelity(rho, sigma)), 0.0, 1.0);
}

}  // namespace nfg
