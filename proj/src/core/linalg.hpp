#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>

#include "core/rng.hpp"

namespace lrlogit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kGramSchmidtRankTol = 1e-8;

/// max |MᵀM − I| over all entries.
double orthonormality_residual(const Matrix& m);

/// Orthonormalizes the columns of `columns` in order (classical Gram-Schmidt
/// with one reorthogonalization pass). Throws RankDeficient when a residual
/// norm drops below `rank_tol`.
Matrix gram_schmidt(const Matrix& columns, double rank_tol = kGramSchmidtRankTol);

/// Haar-distributed n×n orthogonal matrix from a standard-Gaussian draw.
Matrix random_orthogonal(std::size_t n, Rng& rng);

/// Best rank-`rank` approximation in Frobenius norm (truncated SVD).
Matrix truncate_rank(const Matrix& m, std::size_t rank);

/// Number of singular values above rel_tol · σ_max.
std::size_t numerical_rank(const Matrix& m, double rel_tol = 1e-10);

/// Row-major flattening; inner products ⟨A, B⟩ equal dot products of the
/// flattened forms.
Vector flatten(const Matrix& m);
Matrix unflatten(std::span<const double> flat, std::size_t rows, std::size_t cols);

inline double frobenius_sq(const Matrix& m) { return m.squaredNorm(); }

}  // namespace lrlogit
