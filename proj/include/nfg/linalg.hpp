#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace nfg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Default tolerance for symmetry and uncertainty-principle checks, relative to
// max|entry| of the matrix under test.
inline constexpr double kDefaultTolerance = 1e-9;

/// Natural log of det(m) for a symmetric positive-definite matrix. Throws
/// Error(NotPositiveDefinite) when the Cholesky factorization fails.
double log_det_spd(const Matrix& m);

/// Largest absolute entry, 0 for empty matrices.
double max_abs(const Matrix& m);

/// Matrix from a row-major buffer of rows*cols values.
Matrix from_row_major(std::span<const double> data, Eigen::Index rows,
                      Eigen::Index cols);

/// Row-major copy of m.
std::vector<double> to_row_major(const Matrix& m);

/// Block-diagonal direct sum a ⊕ b.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// 2×2 rotation [[cos θ, sin θ], [−sin θ, cos θ]].
Matrix rotation(double theta);

}  // namespace nfg
