#pragma once

#include "nfg/gaussian_core.hpp"

namespace nfg {

/// tr(ρσ); log_value stays finite when value underflows.
struct OverlapResult {
  double value = 0.0;
  double log_value = 0.0;
};

/// tr(ρσ) = det[(V_ρ+V_σ)/2]^{-1/2} exp(−½ δdᵀ [(V_ρ+V_σ)/2]^{-1} δd), δd = d_ρ − d_σ.
/// The midpoint matrix is factorized once (Cholesky); no explicit inverse.
OverlapResult overlap(const GaussianState& rho, const GaussianState& sigma);

/// tr ρ² = 1/√det Γ.
double purity(const GaussianState& rho);

/// F = tr(ρσ)/√(tr ρ² tr σ²), evaluated in log space.
double fidelity_f(const GaussianState& rho, const GaussianState& sigma);

/// C² = 1 − F².
double c_squared(const GaussianState& rho, const GaussianState& sigma);

}  // namespace nfg
