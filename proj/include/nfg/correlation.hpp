#pragma once

// N_F^G: the largest squared fidelity distance C² between a bipartite Gaussian
// state and its image under Gaussian unitaries on A that leave the reduced
// state ρ_A invariant.

#include "nfg/gaussian_core.hpp"

#include <cstdint>
#include <vector>

namespace nfg {

/// Φ(K, M, d̄): Γ → KΓKᵀ + M, d → Kd + d̄ on 2m quadratures.
///
/// Construction enforces M = Mᵀ ⪰ 0, det M ≥ (det K − 1)², and the complete
/// positivity condition M + i(Δ − KΔKᵀ) ⪰ 0 (equivalent to the first two for a
/// single mode).
class GaussianChannel {
 public:
  GaussianChannel(Matrix k, Matrix m_noise, Vector d_bar);
  GaussianChannel(Matrix k, Matrix m_noise);

  static GaussianChannel identity(int modes);

  int modes() const { return static_cast<int>(k_.rows() / 2); }
  const Matrix& k() const { return k_; }
  const Matrix& m_noise() const { return m_; }
  const Vector& d_bar() const { return d_bar_; }

 private:
  Matrix k_;
  Matrix m_;
  Vector d_bar_;
};

enum class NfgMethod { ClosedForm, Numeric, ChannelClosedForm };

const char* to_string(NfgMethod method) noexcept;

struct NfgResult {
  double value = 0.0;
  NfgMethod method = NfgMethod::ClosedForm;
  /// Rotation angle(s) attaining the supremum; empty when not applicable.
  std::vector<double> optimizer_theta;
  /// Set when the stabilizer search was restricted to block rotations on a
  /// degenerate A-block spectrum, so value is only a lower bound.
  bool lower_bound_only = false;
  bool converged = true;
};

struct OptimizerConfig {
  int grid_points = 33;
  int refine_iters = 60;
  int restarts = 4;
  std::uint64_t seed = 20180501;
};

struct MonotonicityReport {
  double before = 0.0;
  double after = 0.0;
  bool holds = false;
  /// before − after.
  double slack = 0.0;
};

/// 1 − (ab−c²)(ab−d²) / ((ab−c²/2)(ab−d²/2)), evaluated without cancellation.
NfgResult nfg_closed_form(const StandardFormParams& p);

/// 1 − √(det Γ₀ det Γ_θ) / det((Γ₀+Γ_θ)/2) for the standard form rotated by
/// S_θ on A, θ ∈ [0, π/2]. Closed expression in terms of (a, b, c, d).
double nfg_theta_objective(const StandardFormParams& p, double theta);

/// Same objective evaluated from determinants of the rotated CM. The state
/// must already be in standard form.
double nfg_theta_objective(const GaussianState& standard_state, double theta);

/// Exact value for (1+1) modes: reduce to standard form, then the closed form.
/// The mean is ignored.
NfgResult nfg_two_mode(const GaussianState& state);

/// 1 − det(B − CᵀA⁻¹C)/det B.
double nfg_upper_bound(const GaussianState& state);

/// Determinant-form objective over block rotations ⊕ S_{θ_i} acting on a state
/// whose A block is in Williamson form ⊕ ν_i I₂.
class RotationObjective {
 public:
  explicit RotationObjective(Matrix williamson_cm, int n_a);

  int angles() const { return n_a_; }
  const Matrix& base_cm() const { return gamma_; }
  double log_det_base() const { return log_det_; }

  /// Γ_S for S = ⊕ S_{θ_i} on A.
  Matrix rotated_cm(const std::vector<double>& thetas) const;
  double evaluate(const std::vector<double>& thetas) const;

 private:
  Matrix gamma_;
  int n_a_;
  double log_det_;
};

/// Numeric supremum for (n+m)-mode states: Williamson-rotate A, then a coarse
/// grid over [0, π/2]^{n_a} followed by derivative-free local refinement from
/// several starts.
NfgResult nfg_numeric(const GaussianState& state, const OptimizerConfig& config = {});

/// Channel acting on subsystem B: Γ ← (I⊕K)Γ(I⊕K)ᵀ + (0⊕M), mean ← (d_A, K d_B + d̄).
GaussianState apply_channel(const GaussianState& state, const GaussianChannel& channel);

/// N_F^G of (I⊗Φ)ρ for a standard-form state ρ and a single-mode channel Φ.
NfgResult nfg_after_channel_closed_form(const StandardFormParams& p, const GaussianChannel& channel);

/// Same for any (1+1)-mode state: the local symplectic that brings B to
/// standard form is folded into the channel, K ← K s_B⁻¹.
NfgResult nfg_after_channel_closed_form(const GaussianState& state, const GaussianChannel& channel);

MonotonicityReport check_monotonicity(const GaussianState& state, const GaussianChannel& channel);

}  // namespace nfg
