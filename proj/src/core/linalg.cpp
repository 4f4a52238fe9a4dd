#include "core/linalg.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace lrlogit {

double orthonormality_residual(const Matrix& m) {
  const Matrix gram = m.transpose() * m;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

Matrix gram_schmidt(const Matrix& columns, double rank_tol) {
  Matrix q(columns.rows(), columns.cols());
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    Vector a = columns.col(j);
    // Second pass restores orthogonality lost to cancellation.
    for (int pass = 0; pass < 2 && j > 0; ++pass) {
      const Vector coeffs = q.leftCols(j).transpose() * a;
      a -= q.leftCols(j) * coeffs;
    }
    const double norm = a.norm();
    if (norm < rank_tol) {
      fail(ErrorKind::RankDeficient,
           "Gram-Schmidt residual norm " + std::to_string(norm) +
               " below tolerance at column " + std::to_string(j));
    }
    q.col(j) = a / norm;
  }
  return q;
}

Matrix random_orthogonal(std::size_t n, Rng& rng) {
  const auto dim = static_cast<Eigen::Index>(n);
  for (;;) {
    Matrix g(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c)
      for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    bool singular = false;
    for (Eigen::Index i = 0; i < dim; ++i)
      if (std::abs(r(i, i)) < 1e-12) singular = true;
    if (singular) continue;
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    // Sign convention diag(R) > 0 makes Q Haar-distributed.
    for (Eigen::Index i = 0; i < dim; ++i)
      if (r(i, i) < 0.0) q.col(i) = -q.col(i);
    return q;
  }
}

Matrix truncate_rank(const Matrix& m, std::size_t rank) {
  const auto keep = static_cast<Eigen::Index>(rank);
  if (keep >= std::min(m.rows(), m.cols())) return m;
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU().leftCols(keep) *
         svd.singularValues().head(keep).asDiagonal() *
         svd.matrixV().leftCols(keep).transpose();
}

std::size_t numerical_rank(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

Vector flatten(const Matrix& m) {
  Vector out(m.size());
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(k++) = m(r, c);
  return out;
}

Matrix unflatten(std::span<const double> flat, std::size_t rows, std::size_t cols) {
  require(flat.size() == rows * cols, "flattened size does not match shape");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t k = 0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = flat[k++];
  return m;
}

}  // namespace lrlogit
