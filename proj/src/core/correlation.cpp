#include "nfg/correlation.hpp"

#include "box_search.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace nfg {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_two_mode(const GaussianState& state) {
  if (state.n_a() != 1 || state.n_b() != 1) {
    throw Error(ErrorCode::WrongPartition, "operation requires a (1+1)-mode state, got (" +
                                               std::to_string(state.n_a()) + "+" + std::to_string(state.n_b()) + ")");
  }
}

void require_physical(const StandardFormParams& p) {
  if (!p.is_physical()) throw Error(ErrorCode::Unphysical, "standard-form parameters are unphysical");
}

void require_theta(double theta) {
  if (!(theta >= 0.0 && theta <= kHalfPi)) {
    throw Error(ErrorCode::InvalidArgument, "theta must lie in [0, pi/2]");
  }
}

// 1 − √(det Γ det Γ_S)/det((Γ+Γ_S)/2) from log-determinants.
double determinant_objective(const Matrix& gamma, double log_det_gamma, const Matrix& gamma_s) {
  const double log_det_s = log_det_spd(gamma_s);
  const double log_det_mid = log_det_spd(0.5 * (gamma + gamma_s));
  return -std::expm1(0.5 * (log_det_gamma + log_det_s) - log_det_mid);
}

double clamp_unit(double v) { return std::clamp(v, 0.0, std::nextafter(1.0, 0.0)); }

}  // namespace

const char* to_string(NfgMethod method) noexcept {
  switch (method) {
    case NfgMethod::ClosedForm: return "closed_form";
    case NfgMethod::Numeric: return "numeric";
    case NfgMethod::ChannelClosedForm: return "channel_closed_form";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Channels

GaussianChannel::GaussianChannel(Matrix k, Matrix m_noise, Vector d_bar)
    : k_(std::move(k)), m_(std::move(m_noise)), d_bar_(std::move(d_bar)) {
  const Eigen::Index dim = k_.rows();
  if (dim == 0 || dim % 2 != 0 || k_.cols() != dim || m_.rows() != dim || m_.cols() != dim || d_bar_.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "channel K, M must be 2m×2m and d̄ of length 2m");
  }
  if (!k_.allFinite() || !m_.allFinite() || !d_bar_.allFinite()) {
    throw Error(ErrorCode::NonFinite, "channel has non-finite entries");
  }
  const double scale = std::max({1.0, max_abs(m_), max_abs(k_) * max_abs(k_)});
  const double tol = kDefaultTolerance * scale;
  if (max_abs(m_ - m_.transpose()) > tol) throw Error(ErrorCode::InvalidChannel, "M is not symmetric");
  m_ = 0.5 * (m_ + m_.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw Error(ErrorCode::InvalidChannel, "M is not positive semidefinite");

  const double det_k = k_.determinant();
  if (m_.determinant() < (det_k - 1.0) * (det_k - 1.0) - tol * scale) {
    throw Error(ErrorCode::InvalidChannel, "det M < (det K − 1)^2");
  }

  const Matrix delta = SymplecticForm(static_cast<int>(dim / 2)).matrix();
  const Matrix twist = delta - k_ * delta * k_.transpose();
  const Eigen::MatrixXcd cp = m_.cast<std::complex<double>>() +
                              std::complex<double>(0.0, 1.0) * twist.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> cps(cp, Eigen::EigenvaluesOnly);
  if (cps.eigenvalues().minCoeff() < -tol) {
    throw Error(ErrorCode::InvalidChannel, "channel is not completely positive: M + i(Δ − KΔKᵀ) has a negative eigenvalue");
  }
}

GaussianChannel::GaussianChannel(Matrix k, Matrix m_noise)
    : GaussianChannel(k, std::move(m_noise), Vector::Zero(k.rows())) {}

GaussianChannel GaussianChannel::identity(int modes) {
  return GaussianChannel(Matrix::Identity(2 * modes, 2 * modes), Matrix::Zero(2 * modes, 2 * modes));
}

// ---------------------------------------------------------------------------
// (1+1)-mode closed forms

NfgResult nfg_closed_form(const StandardFormParams& p) {
  require_physical(p);
  const double ab = p.a * p.b;
  const double c2 = p.c * p.c;
  const double d2 = p.d * p.d;
  const double x1 = ab - c2;
  const double x2 = ab - d2;
  // (ab−c²/2)(ab−d²/2) − (ab−c²)(ab−d²), expanded into non-negative terms.
  const double gap = 0.5 * c2 * x2 + 0.5 * d2 * x1 + 0.25 * c2 * d2;
  const double denom = (ab - 0.5 * c2) * (ab - 0.5 * d2);
  NfgResult r;
  r.value = clamp_unit(gap / denom);
  r.method = NfgMethod::ClosedForm;
  r.optimizer_theta = {kHalfPi};
  return r;
}

double nfg_theta_objective(const StandardFormParams& p, double theta) {
  require_theta(theta);
  require_physical(p);
  const double ab = p.a * p.b;
  const double c2 = p.c * p.c;
  const double d2 = p.d * p.d;
  const double s = std::sin(0.5 * theta);
  const double m = s * s;  // 1 − n₀ with n₀ = (1 + cos θ)/2
  const double n0 = 1.0 - m;
  const double gap = m * (c2 * (ab - d2) + d2 * (ab - c2) + m * c2 * d2);
  return clamp_unit(gap / ((ab - n0 * c2) * (ab - n0 * d2)));
}

double nfg_theta_objective(const GaussianState& standard_state, double theta) {
  require_theta(theta);
  require_two_mode(standard_state);
  const Matrix& g = standard_state.cm().matrix();
  const double tol = 1e-9 * std::max(1.0, max_abs(g));
  const StandardFormParams p{g(0, 0), g(2, 2), g(0, 2), g(1, 3)};
  if (max_abs(g - p.covariance()) > tol) {
    throw Error(ErrorCode::InvalidArgument, "state is not in standard form");
  }
  Matrix s = Matrix::Identity(4, 4);
  s.topLeftCorner(2, 2) = rotation(theta);
  const Matrix g_theta = s * g * s.transpose();
  return clamp_unit(determinant_objective(g, log_det_spd(g), g_theta));
}

NfgResult nfg_two_mode(const GaussianState& state) {
  require_two_mode(state);
  return nfg_closed_form(standard_form(state).params);
}

double nfg_upper_bound(const GaussianState& state) {
  if (state.n_a() == 0 || state.n_b() == 0) return 0.0;
  const Blocks blk = blocks(state);
  Eigen::LLT<Matrix> llt(blk.a);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "A block is not positive definite");
  Matrix schur = blk.b - blk.c.transpose() * llt.solve(blk.c);
  schur = 0.5 * (schur + schur.transpose());
  return clamp_unit(-std::expm1(log_det_spd(schur) - log_det_spd(blk.b)));
}

// ---------------------------------------------------------------------------
// Numeric supremum

RotationObjective::RotationObjective(Matrix williamson_cm, int n_a)
    : gamma_(std::move(williamson_cm)), n_a_(n_a), log_det_(log_det_spd(gamma_)) {
  if (n_a < 0 || 2 * n_a > gamma_.rows()) throw Error(ErrorCode::WrongPartition, "bad A-block size");
}

Matrix RotationObjective::rotated_cm(const std::vector<double>& thetas) const {
  if (static_cast<int>(thetas.size()) != n_a_) {
    throw Error(ErrorCode::DimensionMismatch, "expected one angle per mode of A");
  }
  const Eigen::Index na = 2 * n_a_;
  const Eigen::Index nb = gamma_.rows() - na;
  Matrix s = Matrix::Identity(na, na);
  for (int i = 0; i < n_a_; ++i) s.block(2 * i, 2 * i, 2, 2) = rotation(thetas[static_cast<std::size_t>(i)]);
  // S A Sᵀ = A for A = ⊕ν_i I₂, so only the off-diagonal blocks move.
  Matrix out = gamma_;
  out.topRightCorner(na, nb) = s * gamma_.topRightCorner(na, nb);
  out.bottomLeftCorner(nb, na) = out.topRightCorner(na, nb).transpose();
  return out;
}

double RotationObjective::evaluate(const std::vector<double>& thetas) const {
  return determinant_objective(gamma_, log_det_, rotated_cm(thetas));
}

NfgResult nfg_numeric(const GaussianState& state, const OptimizerConfig& config) {
  NfgResult result;
  result.method = NfgMethod::Numeric;
  if (state.n_a() == 0 || state.n_b() == 0) {
    result.value = 0.0;
    return result;
  }
  if (config.grid_points < 2 || config.refine_iters < 0 || config.restarts < 1) {
    throw Error(ErrorCode::InvalidArgument, "optimizer needs grid_points ≥ 2, refine_iters ≥ 0, restarts ≥ 1");
  }
  const Blocks blk = blocks(state);
  const WilliamsonDecomposition wa = williamson(blk.a);
  const GaussianState rotated = apply_gaussian_unitary(state, GaussianUnitary(wa.s), Side::A);
  Matrix g = rotated.cm().matrix();
  // Pin the A block to the exact Williamson form.
  g.topLeftCorner(2 * state.n_a(), 2 * state.n_a()).setZero();
  for (int i = 0; i < state.n_a(); ++i) {
    g(2 * i, 2 * i) = g(2 * i + 1, 2 * i + 1) = wa.nus[static_cast<std::size_t>(i)];
  }
  const RotationObjective objective(std::move(g), state.n_a());

  detail::BoxSearchOptions opts;
  opts.grid_points = config.grid_points;
  opts.refine_iters = config.refine_iters;
  opts.restarts = config.restarts;
  opts.seed = config.seed;
  const auto best = detail::maximize_in_box([&](const std::vector<double>& t) { return objective.evaluate(t); },
                                            state.n_a(), 0.0, kHalfPi, opts);
  result.value = clamp_unit(best.value);
  result.optimizer_theta = best.x;
  result.lower_bound_only = wa.degenerate;
  result.converged = best.converged;
  return result;
}

// ---------------------------------------------------------------------------
// Channels on B

GaussianState apply_channel(const GaussianState& state, const GaussianChannel& channel) {
  const Eigen::Index na = 2 * state.n_a();
  const Eigen::Index nb = 2 * state.n_b();
  if (channel.k().rows() != nb) {
    throw Error(ErrorCode::DimensionMismatch, "channel acts on " + std::to_string(channel.modes()) +
                                                  " modes, subsystem B has " + std::to_string(state.n_b()));
  }
  const Eigen::Index dim = na + nb;
  Matrix big_k = Matrix::Identity(dim, dim);
  big_k.bottomRightCorner(nb, nb) = channel.k();
  Matrix g = big_k * state.cm().matrix() * big_k.transpose();
  g.bottomRightCorner(nb, nb) += channel.m_noise();
  g = 0.5 * (g + g.transpose());
  g.topLeftCorner(na, na) = state.cm().matrix().topLeftCorner(na, na);
  Vector mean = state.mean().vector();
  mean.tail(nb) = channel.k() * mean.tail(nb) + channel.d_bar();
  return GaussianState(CovarianceMatrix(std::move(g)), Displacement(std::move(mean)), state.n_a(), state.n_b());
}

NfgResult nfg_after_channel_closed_form(const StandardFormParams& p, const GaussianChannel& channel) {
  require_physical(p);
  if (channel.modes() != 1) throw Error(ErrorCode::DimensionMismatch, "closed form needs a single-mode channel");
  const Matrix& k = channel.k();
  const Matrix& m = channel.m_noise();
  if (max_abs(k) == 0.0 && max_abs(m) == 0.0) throw Error(ErrorCode::InvalidChannel, "K and M are both zero");

  const double det_k = k(0, 0) * k(1, 1) - k(0, 1) * k(1, 0);
  const double n1 = det_k * det_k;
  const double n2 = m(1, 1) * k(0, 0) * k(0, 0) + m(0, 0) * k(1, 0) * k(1, 0) - 2.0 * m(0, 1) * k(0, 0) * k(1, 0);
  const double n3 = m(1, 1) * k(0, 1) * k(0, 1) + m(0, 0) * k(1, 1) * k(1, 1) - 2.0 * m(0, 1) * k(0, 1) * k(1, 1);
  const double n4 = m(0, 0) * m(1, 1) - m(0, 1) * m(0, 1);

  const double a = p.a;
  const double ab = p.a * p.b;
  const double c2 = p.c * p.c;
  const double d2 = p.d * p.d;
  const double x1 = ab - c2;
  const double x2 = ab - d2;
  const double y1 = ab - 0.5 * c2;
  const double y2 = ab - 0.5 * d2;
  const double beta = y1 * y2;
  const double delta = a * y1 * n2 + a * y2 * n3 + a * a * n4;
  // (β − α) n₁ + (δ − γ), both differences expanded into non-negative terms.
  const double beta_minus_alpha = 0.5 * c2 * x2 + 0.5 * d2 * x1 + 0.25 * c2 * d2;
  const double delta_minus_gamma = 0.5 * a * c2 * n2 + 0.5 * a * d2 * n3;

  NfgResult r;
  r.method = NfgMethod::ChannelClosedForm;
  r.value = clamp_unit((beta_minus_alpha * n1 + delta_minus_gamma) / (beta * n1 + delta));
  r.optimizer_theta = {kHalfPi};
  return r;
}

NfgResult nfg_after_channel_closed_form(const GaussianState& state, const GaussianChannel& channel) {
  if (channel.modes() != 1) throw Error(ErrorCode::DimensionMismatch, "closed form needs a single-mode channel");
  const StandardFormResult sf = standard_form(state);
  // s_B is symplectic, so det K and hence channel validity are unchanged.
  const Matrix k = channel.k() * sf.s_b.matrix().inverse();
  return nfg_after_channel_closed_form(sf.params, GaussianChannel(k, channel.m_noise(), channel.d_bar()));
}

MonotonicityReport check_monotonicity(const GaussianState& state, const GaussianChannel& channel) {
  MonotonicityReport report;
  report.before = nfg_two_mode(state).value;
  report.after = nfg_two_mode(apply_channel(state, channel)).value;
  report.slack = report.before - report.after;
  report.holds = report.after <= report.before + 1e-10;
  return report;
}

}  // namespace nfg
