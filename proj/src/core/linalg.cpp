#include "nfg/linalg.hpp"

#include "nfg/error.hpp"

#include <cmath>

namespace nfg {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::NonFinite: return "non-finite value";
    case ErrorCode::Unphysical: return "unphysical covariance matrix";
    case ErrorCode::NotPositiveDefinite: return "matrix not positive definite";
    case ErrorCode::InvalidChannel: return "invalid Gaussian channel";
    case ErrorCode::WrongPartition: return "wrong mode partition";
    case ErrorCode::NoConvergence: return "optimizer did not converge";
  }
  return "unknown error";
}

double log_det_spd(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
  }
  const Matrix& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    if (!(l(i, i) > 0.0)) {
      throw Error(ErrorCode::NotPositiveDefinite, "Cholesky factor has a non-positive pivot");
    }
    acc += std::log(l(i, i));
  }
  return 2.0 * acc;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Matrix from_row_major(std::span<const double> data, Eigen::Index rows, Eigen::Index cols) {
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "row-major buffer has " +
                                                  std::to_string(data.size()) + " entries, expected " +
                                                  std::to_string(rows * cols));
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = data[static_cast<std::size_t>(i * cols + j)];
  return m;
}

std::vector<double> to_row_major(const Matrix& m) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix rotation(double theta) {
  Matrix r(2, 2);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  r << c, s, -s, c;
  return r;
}

}  // namespace nfg
