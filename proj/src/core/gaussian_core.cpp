#include "nfg/gaussian_core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace nfg {
namespace {

using ComplexMatrix = Eigen::MatrixXcd;

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
}

void require_even_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " must be a non-empty square matrix of even dimension, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double scale_of(const Matrix& m) { return std::max(1.0, max_abs(m)); }

struct SpdRoots {
  Matrix sqrt;
  Matrix inv_sqrt;
};

SpdRoots spd_roots(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "eigen-decomposition failed");
  }
  const Vector& lambda = es.eigenvalues();
  if (!(lambda.minCoeff() > 0.0)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "covariance matrix is not positive definite (min eigenvalue " +
                    std::to_string(lambda.minCoeff()) + ")");
  }
  const Matrix& v = es.eigenvectors();
  return {v * lambda.cwiseSqrt().asDiagonal() * v.transpose(),
          v * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose()};
}

// Hermitian Γ^{1/2} (iΔ) Γ^{1/2}; eigenvalues come in ±ν pairs.
Eigen::SelfAdjointEigenSolver<ComplexMatrix> symplectic_eigensolver(const Matrix& sqrt_cm) {
  const Matrix delta = SymplecticForm(static_cast<int>(sqrt_cm.rows() / 2)).matrix();
  const Matrix antisym = sqrt_cm * delta * sqrt_cm;
  const ComplexMatrix h = std::complex<double>(0.0, 1.0) * antisym.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::NoConvergence, "Hermitian eigen-solve for symplectic spectrum failed");
  }
  return es;
}

std::vector<double> spectrum_general(const Matrix& cm) {
  // Fallback for matrices that are not positive definite: moduli of the
  // eigenvalues of ΔΓ, paired.
  const Matrix delta = SymplecticForm(static_cast<int>(cm.rows() / 2)).matrix();
  Eigen::EigenSolver<Matrix> es(delta * cm, false);
  std::vector<double> moduli;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) moduli.push_back(std::abs(es.eigenvalues()(i)));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  std::vector<double> nus;
  for (std::size_t i = 0; i < moduli.size(); i += 2) nus.push_back(0.5 * (moduli[i] + moduli[i + 1]));
  return nus;
}

}  // namespace

// ---------------------------------------------------------------------------
// Types

SymplecticForm::SymplecticForm(int modes) : modes_(modes) {
  if (modes < 1) throw Error(ErrorCode::InvalidArgument, "symplectic form needs at least one mode");
  matrix_ = Matrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    matrix_(2 * k, 2 * k + 1) = 1.0;
    matrix_(2 * k + 1, 2 * k) = -1.0;
  }
}

CovarianceMatrix::CovarianceMatrix(Matrix entries) : entries_(std::move(entries)) {
  require_even_square(entries_, "covariance matrix");
  require_finite(entries_, "covariance matrix");
}

Displacement::Displacement(Vector values) : values_(std::move(values)) {
  if (!values_.allFinite()) throw Error(ErrorCode::NonFinite, "displacement has non-finite entries");
}

SymplecticMatrix::SymplecticMatrix(Matrix s, double tol) : s_(std::move(s)) {
  require_even_square(s_, "symplectic matrix");
  require_finite(s_, "symplectic matrix");
  if (!is_symplectic(s_, tol)) throw Error(ErrorCode::InvalidArgument, "matrix is not symplectic");
}

SymplecticMatrix SymplecticMatrix::identity(int modes) {
  return SymplecticMatrix(Matrix::Identity(2 * modes, 2 * modes));
}

GaussianUnitary::GaussianUnitary(SymplecticMatrix s_in, Displacement m_in)
    : s(std::move(s_in)), m(std::move(m_in)) {
  if (m.size() != s.matrix().rows()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary displacement length does not match symplectic matrix");
  }
}

GaussianUnitary::GaussianUnitary(SymplecticMatrix s_in)
    : s(std::move(s_in)), m(Displacement::zero(s.matrix().rows())) {}

Matrix StandardFormParams::covariance() const {
  Matrix g(4, 4);
  g << a, 0, c, 0,
       0, a, 0, d,
       c, 0, b, 0,
       0, d, 0, b;
  return g;
}

bool StandardFormParams::is_physical(double tol) const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) return false;
  const double slack = tol * std::max({1.0, std::abs(a), std::abs(b)});
  const double ab1 = a * b - 1.0;
  if (a < 1.0 - slack || b < 1.0 - slack) return false;
  const double slack2 = tol * std::max(1.0, a * b);
  if (ab1 < c * c - slack2 || ab1 < d * d - slack2) return false;
  return validate_cm(covariance(), tol).physical;
}

GaussianState::GaussianState(CovarianceMatrix cm, Displacement mean, int n_a, int n_b, NoCheck)
    : cm_(std::move(cm)), mean_(std::move(mean)), n_a_(n_a), n_b_(n_b) {
  if (n_a < 0 || n_b < 0 || 2 * (n_a + n_b) != cm_.dim()) {
    throw Error(ErrorCode::WrongPartition, "partition (" + std::to_string(n_a) + "+" +
                                               std::to_string(n_b) + ") does not match CM of dimension " +
                                               std::to_string(cm_.dim()));
  }
  if (mean_.size() != cm_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "mean length does not match covariance matrix");
  }
}

GaussianState::GaussianState(CovarianceMatrix cm, Displacement mean, int n_a, int n_b)
    : GaussianState(std::move(cm), std::move(mean), n_a, n_b, NoCheck{}) {
  const ValidationReport report = validate_cm(cm_.matrix());
  if (!report.physical) {
    const double nu_min = report.symplectic_eigenvalues.empty() ? 0.0 : report.symplectic_eigenvalues.back();
    throw Error(ErrorCode::Unphysical,
                report.symmetric ? "covariance matrix violates the uncertainty principle (min symplectic "
                                   "eigenvalue " + std::to_string(nu_min) + ")"
                                 : "covariance matrix is not symmetric");
  }
}

GaussianState::GaussianState(Matrix cm, int n_a, int n_b)
    : GaussianState(CovarianceMatrix(cm), Displacement::zero(cm.rows()), n_a, n_b) {}

GaussianState GaussianState::unchecked(CovarianceMatrix cm, Displacement mean, int n_a, int n_b) {
  return GaussianState(std::move(cm), std::move(mean), n_a, n_b, NoCheck{});
}

GaussianState GaussianState::with_mean(Displacement mean) const {
  GaussianState out = *this;
  if (mean.size() != cm_.dim()) throw Error(ErrorCode::DimensionMismatch, "mean length does not match state");
  out.mean_ = std::move(mean);
  return out;
}

// ---------------------------------------------------------------------------
// Operations

SymplecticForm symplectic_form(int modes) { return SymplecticForm(modes); }

ValidationReport validate_cm(const Matrix& cm, double tol) {
  require_even_square(cm, "covariance matrix");
  require_finite(cm, "covariance matrix");
  ValidationReport report;
  const double scale = scale_of(cm);
  report.symmetry_deviation = max_abs(cm - cm.transpose());
  report.symmetric = report.symmetry_deviation <= tol * scale;
  const Matrix sym = 0.5 * (cm + cm.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const bool positive_definite = es.info() == Eigen::Success && es.eigenvalues().minCoeff() > 0.0;
  if (positive_definite) {
    const auto roots = spd_roots(sym);
    const auto hs = symplectic_eigensolver(roots.sqrt);
    const Eigen::Index n = sym.rows() / 2;
    for (Eigen::Index k = 0; k < n; ++k) report.symplectic_eigenvalues.push_back(hs.eigenvalues()(2 * n - 1 - k));
  } else {
    report.symplectic_eigenvalues = spectrum_general(sym);
  }
  const double nu_min = report.symplectic_eigenvalues.back();
  report.physical = report.symmetric && positive_definite && nu_min >= 1.0 - tol * scale;
  return report;
}

bool is_symplectic(const Matrix& s, double tol) {
  require_even_square(s, "symplectic candidate");
  const Matrix delta = SymplecticForm(static_cast<int>(s.rows() / 2)).matrix();
  return max_abs(s * delta * s.transpose() - delta) <= tol;
}

WilliamsonDecomposition williamson(const Matrix& cm) {
  require_even_square(cm, "covariance matrix");
  require_finite(cm, "covariance matrix");
  const double scale = scale_of(cm);
  if (max_abs(cm - cm.transpose()) > kDefaultTolerance * scale) {
    throw Error(ErrorCode::InvalidArgument, "Williamson decomposition needs a symmetric matrix");
  }
  const Matrix sym = 0.5 * (cm + cm.transpose());
  const auto roots = spd_roots(sym);
  const auto hs = symplectic_eigensolver(roots.sqrt);
  const Eigen::Index n = sym.rows() / 2;

  // Columns (√2 Im v, √2 Re v) of each +ν eigenvector v give an orthogonal O
  // with Oᵀ Γ^{1/2} Δ Γ^{1/2} O = ⊕ ν_k Δ₁. Then S = D^{1/2} Oᵀ Γ^{-1/2}.
  Matrix o(2 * n, 2 * n);
  std::vector<double> nus;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index col = 2 * n - 1 - k;
    nus.push_back(hs.eigenvalues()(col));
    Eigen::VectorXcd v = hs.eigenvectors().col(col);
    // Canonical phase: the first significant component is made positive
    // imaginary, so inputs already in Williamson form map to S = I.
    const double vmax = v.cwiseAbs().maxCoeff();
    Eigen::Index pivot = 0;
    while (std::abs(v(pivot)) < 1e-6 * vmax) ++pivot;
    v *= std::complex<double>(0.0, 1.0) * std::abs(v(pivot)) / v(pivot);
    o.col(2 * k) = std::sqrt(2.0) * v.imag();
    o.col(2 * k + 1) = std::sqrt(2.0) * v.real();
  }
  Vector sqrt_d(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) sqrt_d(2 * k) = sqrt_d(2 * k + 1) = std::sqrt(nus[static_cast<std::size_t>(k)]);
  Matrix s = sqrt_d.asDiagonal() * o.transpose() * roots.inv_sqrt;

  bool degenerate = false;
  for (std::size_t k = 1; k < nus.size(); ++k) {
    if (nus[k - 1] - nus[k] <= 1e-8 * std::max(1.0, nus[0])) degenerate = true;
  }
  // Rounding in S grows with its norm squared.
  const double s_tol = 1e-9 * std::max(1.0, max_abs(s) * max_abs(s));
  return {SymplecticMatrix(std::move(s), s_tol), std::move(nus), degenerate};
}

StandardFormResult standard_form(const GaussianState& state) {
  if (state.n_a() != 1 || state.n_b() != 1) {
    throw Error(ErrorCode::WrongPartition, "standard form requires a (1+1)-mode state");
  }
  const Blocks blk = blocks(state);
  const WilliamsonDecomposition wa = williamson(blk.a);
  const WilliamsonDecomposition wb = williamson(blk.b);
  const Matrix c1 = wa.s.matrix() * blk.c * wb.s.matrix().transpose();

  // Two-sided rotation: c1 = R(φ) diag(σ₊, σ₋) R(ψ) with R(t) = [[cos, −sin], [sin, cos]]
  // and σ₊ ≥ |σ₋|, the sign of σ₋ carrying det c1.
  const double e = 0.5 * (c1(0, 0) + c1(1, 1)) + 0.0;
  const double f = 0.5 * (c1(0, 0) - c1(1, 1)) + 0.0;
  const double g = 0.5 * (c1(1, 0) + c1(0, 1)) + 0.0;
  const double h = 0.5 * (c1(1, 0) - c1(0, 1)) + 0.0;
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  const double a1 = std::atan2(g, f);
  const double a2 = std::atan2(h, e);
  const double psi = 0.5 * (a2 - a1);
  const double phi = 0.5 * (a2 + a1);
  // rotation(t) = R(−t): ra = R(φ)ᵀ, rb = R(ψ).
  const Matrix ra = rotation(phi);
  const Matrix rb = rotation(-psi);

  StandardFormParams p;
  p.a = wa.nus[0];
  p.b = wb.nus[0];
  p.c = q + r;
  p.d = q - r;
  const double tol_a = 1e-9 * std::max(1.0, max_abs(wa.s.matrix()) * max_abs(wa.s.matrix()));
  const double tol_b = 1e-9 * std::max(1.0, max_abs(wb.s.matrix()) * max_abs(wb.s.matrix()));
  return {p, SymplecticMatrix(ra * wa.s.matrix(), tol_a), SymplecticMatrix(rb * wb.s.matrix(), tol_b)};
}

Blocks blocks(const GaussianState& state) {
  const Matrix& g = state.cm().matrix();
  const Eigen::Index na = 2 * state.n_a();
  const Eigen::Index nb = 2 * state.n_b();
  return {g.topLeftCorner(na, na), g.bottomRightCorner(nb, nb), g.topRightCorner(na, nb)};
}

GaussianState apply_gaussian_unitary(const GaussianState& state, const GaussianUnitary& u, Side side) {
  const Eigen::Index dim = state.cm().dim();
  const Eigen::Index na = 2 * state.n_a();
  const Eigen::Index nb = 2 * state.n_b();
  const Eigen::Index expected = side == Side::A ? na : side == Side::B ? nb : dim;
  const Eigen::Index offset = side == Side::B ? na : 0;
  if (u.s.matrix().rows() != expected) {
    throw Error(ErrorCode::DimensionMismatch, "unitary acts on " + std::to_string(u.s.matrix().rows()) +
                                                  " quadratures, side has " + std::to_string(expected));
  }
  Matrix s = Matrix::Identity(dim, dim);
  s.block(offset, offset, expected, expected) = u.s.matrix();
  Vector m = Vector::Zero(dim);
  m.segment(offset, expected) = u.m.vector();

  Matrix g = s * state.cm().matrix() * s.transpose();
  g = 0.5 * (g + g.transpose());
  // Untouched blocks are copied back exactly.
  if (side == Side::A && nb > 0) g.bottomRightCorner(nb, nb) = state.cm().matrix().bottomRightCorner(nb, nb);
  if (side == Side::B && na > 0) g.topLeftCorner(na, na) = state.cm().matrix().topLeftCorner(na, na);
  return GaussianState(CovarianceMatrix(std::move(g)), Displacement(s * state.mean().vector() + m),
                       state.n_a(), state.n_b());
}

}  // namespace nfg
