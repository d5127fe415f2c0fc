#pragma once

// Covariance-matrix representation of bosonic Gaussian states.
//
// Conventions: quadratures are ordered (x_1, p_1, x_2, p_2, ...). The
// covariance matrix is vacuum-normalized (vacuum = identity), i.e. twice the
// symmetrized second moments. Means are expressed in x = (a + a†)/√2 units, so
// a coherent state |α⟩ has mean (√2 Re α, √2 Im α). This is the convention in
// which the Gaussian overlap formula in overlap.hpp holds.

#include "nfg/error.hpp"
#include "nfg/linalg.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace nfg {

/// Δ = ⊕_k [[0, 1], [−1, 0]] for n modes.
class SymplecticForm {
 public:
  explicit SymplecticForm(int modes);

  int modes() const { return modes_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  int modes_;
  Matrix matrix_;
};

/// Square, even-dimensional, finite real matrix. Physicality is not part of
/// the type: see validate_cm().
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(Matrix entries);

  Eigen::Index dim() const { return entries_.rows(); }
  int modes() const { return static_cast<int>(entries_.rows() / 2); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

/// First moments; all entries finite.
class Displacement {
 public:
  explicit Displacement(Vector values);
  static Displacement zero(Eigen::Index dim) { return Displacement(Vector::Zero(dim)); }

  Eigen::Index size() const { return values_.size(); }
  const Vector& vector() const { return values_; }

 private:
  Vector values_;
};

/// Real matrix with S Δ Sᵀ = Δ within tolerance.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Matrix s, double tol = 1e-9);
  static SymplecticMatrix identity(int modes);

  int modes() const { return static_cast<int>(s_.rows() / 2); }
  const Matrix& matrix() const { return s_; }

 private:
  Matrix s_;
};

struct GaussianUnitary {
  SymplecticMatrix s;
  Displacement m;

  GaussianUnitary(SymplecticMatrix s_in, Displacement m_in);
  explicit GaussianUnitary(SymplecticMatrix s_in);
};

/// Scalars of the two-mode standard form
///   [[a, 0, c, 0], [0, a, 0, d], [c, 0, b, 0], [0, d, 0, b]].
struct StandardFormParams {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double d = 0.0;

  Matrix covariance() const;
  /// a, b ≥ 1, ab − 1 ≥ max(c², d²) and the full uncertainty relation.
  bool is_physical(double tol = kDefaultTolerance) const;
};

struct ValidationReport {
  double symmetry_deviation = 0.0;
  bool symmetric = false;
  /// Symplectic eigenvalues, descending.
  std::vector<double> symplectic_eigenvalues;
  bool physical = false;
};

struct WilliamsonDecomposition {
  SymplecticMatrix s;
  /// Descending.
  std::vector<double> nus;
  bool degenerate = false;
};

enum class Side { A, B, Global };

/// Bipartite Gaussian state: CM Γ = [[A, C], [Cᵀ, B]] with A on the first
/// n_a modes and B on the remaining n_b modes.
class GaussianState {
 public:
  /// Validates structure and Γ + iΔ ⪰ 0; throws Error(Unphysical) otherwise.
  GaussianState(CovarianceMatrix cm, Displacement mean, int n_a, int n_b);
  GaussianState(Matrix cm, int n_a, int n_b);

  /// Structure-only validation, for diagnostics on unphysical input.
  static GaussianState unchecked(CovarianceMatrix cm, Displacement mean, int n_a, int n_b);

  const CovarianceMatrix& cm() const { return cm_; }
  const Displacement& mean() const { return mean_; }
  int n_a() const { return n_a_; }
  int n_b() const { return n_b_; }
  int modes() const { return n_a_ + n_b_; }

  GaussianState with_mean(Displacement mean) const;

 private:
  struct NoCheck {};
  GaussianState(CovarianceMatrix cm, Displacement mean, int n_a, int n_b, NoCheck);

  CovarianceMatrix cm_;
  Displacement mean_;
  int n_a_;
  int n_b_;
};

struct Blocks {
  Matrix a;
  Matrix b;
  Matrix c;
};

struct StandardFormResult {
  StandardFormParams params;
  SymplecticMatrix s_a;
  SymplecticMatrix s_b;
};

SymplecticForm symplectic_form(int modes);

/// Symmetry and uncertainty-principle check. Symplectic eigenvalues are the
/// moduli of the eigenvalues of iΔΓ. Tolerances are relative to max|Γ|.
ValidationReport validate_cm(const Matrix& cm, double tol = kDefaultTolerance);

bool is_symplectic(const Matrix& s, double tol = kDefaultTolerance);

/// S Γ Sᵀ = ⊕ ν_i I₂ with ν descending. Requires Γ symmetric positive definite.
WilliamsonDecomposition williamson(const Matrix& cm);

/// Local symplectics s_a, s_b bringing a (1+1)-mode CM to standard form with
/// c ≥ |d|.
StandardFormResult standard_form(const GaussianState& state);

Blocks blocks(const GaussianState& state);

/// Γ ← S̃ Γ S̃ᵀ, d ← S̃ d + m̃ where S̃ acts on the chosen side only.
GaussianState apply_gaussian_unitary(const GaussianState& state,
                                     const GaussianUnitary& u, Side side);

}  // namespace nfg
