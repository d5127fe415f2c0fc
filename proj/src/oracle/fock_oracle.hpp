#pragma once

// Truncated Fock-basis density matrices for states with known number-basis
// expansions. Used only to cross-check the covariance-matrix overlap formula;
// nothing here depends on the nfg core library.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace nfg::oracle {

using Complex = std::complex<double>;
using SparseDm = Eigen::SparseMatrix<Complex>;

/// Basis |n₁, …, n_k⟩ with 0 ≤ n_i < cutoff, flattened as n₁·cutoff + n₂ for
/// two modes.
class FockDensityMatrix {
 public:
  FockDensityMatrix(int modes, int cutoff, SparseDm entries);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  Eigen::Index dim() const { return entries_.rows(); }
  const SparseDm& entries() const { return entries_; }

  /// 1 − Re tr ρ.
  double trace_deficit() const { return trace_deficit_; }
  double hermiticity_error() const;
  /// Smallest eigenvalue of the dense matrix; intended for small dimensions.
  double min_eigenvalue() const;
  double purity() const;

 private:
  int modes_;
  int cutoff_;
  SparseDm entries_;
  double trace_deficit_;
};

struct CutoffPolicy {
  int start = 20;
  int ceiling = 512;
  double trace_guard = 1e-10;
};

FockDensityMatrix thermal_dm(double n_bar, int cutoff);
FockDensityMatrix coherent_dm(Complex alpha, int cutoff);
/// S(r)|0⟩ with the x quadrature squeezed (variance e^{−2r} in vacuum units).
FockDensityMatrix squeezed_vacuum_dm(double r, int cutoff);
/// (1/cosh r) Σ_k tanh^k r |k, k⟩.
FockDensityMatrix two_mode_squeezed_dm(double r, int cutoff);
/// ρ ⊗ σ for single-mode factors at equal cutoff.
FockDensityMatrix tensor(const FockDensityMatrix& rho, const FockDensityMatrix& sigma);

/// Smallest cutoff start·2^k ≤ ceiling whose trace deficit is below the guard.
/// Throws std::runtime_error when the ceiling is reached first.
int adaptive_cutoff(const std::function<FockDensityMatrix(int)>& build, const CutoffPolicy& policy = {});

/// Re tr(ρσ); throws std::runtime_error when |Im| ≥ 1e−12 or dimensions differ.
double overlap_fock(const FockDensityMatrix& rho, const FockDensityMatrix& sigma);

// Covariance-matrix descriptions of the same states, in the vacuum-normalized
// convention with means in x = (a + a†)/√2 units. Row-major.
struct CmDescription {
  int modes = 1;
  std::vector<double> cm;
  std::vector<double> mean;
};

CmDescription thermal_cm(double n_bar);
CmDescription coherent_cm(Complex alpha);
CmDescription squeezed_vacuum_cm(double r);
CmDescription two_mode_squeezed_cm(double r);
CmDescription product_cm(const CmDescription& a, const CmDescription& b);

/// One comparison: the Fock-side overlap of a state pair plus the CM
/// descriptions needed to evaluate the same overlap from covariance matrices.
struct OracleCase {
  std::string family;
  std::string label;
  CmDescription rho;
  CmDescription sigma;
  int cutoff = 0;
  double fock_overlap = 0.0;
  double trace_deficit = 0.0;
};

/// Families: "thermal", "coherent", "squeezed", "tmsv". Unknown names throw
/// std::invalid_argument.
std::vector<OracleCase> oracle_cases(const std::vector<std::string>& families, const CutoffPolicy& policy = {});

}  // namespace nfg::oracle
