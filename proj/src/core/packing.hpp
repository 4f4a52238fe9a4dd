#pragma once

// Rank-r packing sets for matrix logistic regression.
//
// A packing element is B = B1 · diag(g) · B2ᵀ where
//   * g comes from a ±1/√(r−1) hypercube codeword rotated by a fixed
//     orthogonal Q, taken in absolute value and scaled by ε/r;
//   * B1 (B2) is the Gram-Schmidt orthonormalization of the columns
//     U_j · [1; S[:, j]] for a ±1/√((m−1)r) hypercube matrix S and fixed
//     orthogonal bases U_1..U_r.
// Elements are indexed by (f, p1, p2) over the three codebooks.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/linalg.hpp"

namespace lrlogit {

inline constexpr int kDefaultMaxAttempts = 64;
inline constexpr double kDefaultKappa = 0.2;
/// Per-codebook default size; keeps exhaustive pairwise verification cheap.
inline constexpr std::size_t kDefaultCodebookCap = 4;

struct HypercubeVectorSet {
  std::vector<Vector> vectors;
  double entry_magnitude = 0.0;
  std::uint64_t seed = 0;
  int attempts = 0;
};

struct HypercubeMatrixSet {
  std::vector<Matrix> matrices;
  double entry_magnitude = 0.0;
  std::uint64_t seed = 0;
  int attempts = 0;
};

struct OrthogonalBases {
  Matrix q;
  std::vector<Matrix> u1;
  std::vector<Matrix> u2;
  std::uint64_t seed = 0;
};

struct RankRFactorization {
  Matrix b1;      // m1×r, orthonormal columns
  Vector g_diag;  // r nonnegative singular values
  Matrix b2;      // m2×r, orthonormal columns

  Matrix dense() const { return b1 * g_diag.asDiagonal() * b2.transpose(); }
  double energy() const { return g_diag.squaredNorm(); }
};

struct PackingIndex {
  std::size_t f = 0;
  std::size_t p1 = 0;
  std::size_t p2 = 0;

  friend bool operator==(const PackingIndex&, const PackingIndex&) = default;
};

struct PackingElement {
  PackingIndex index;
  RankRFactorization factors;
};

struct PairDistance {
  std::size_t a = 0;
  std::size_t b = 0;
  double distance_sq = 0.0;
};

struct ElementIssue {
  std::size_t index = 0;
  std::string what;
  double value = 0.0;
};

struct VerificationReport {
  bool passed = false;
  double kappa = kDefaultKappa;
  double lower_threshold = 0.0;  // κ·ε²r/(r−1), strict
  double upper_threshold = 0.0;  // 4ε²r/(r−1)
  double expected_energy = 0.0;  // ε²/(r(r−1))
  double min_pairwise_sq = 0.0;
  double max_pairwise_sq = 0.0;
  PairDistance closest;
  PairDistance farthest;
  double max_orthonormality_residual = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
  bool energy_ok = false;
  bool orthonormal_ok = false;
  bool distinct_ok = false;
  std::size_t lower_violations = 0;
  std::size_t upper_violations = 0;
  std::vector<PairDistance> worst_pairs;  // most severe distance violations
  std::vector<ElementIssue> element_issues;
  std::vector<std::string> failures;

  /// All checks except the pairwise lower bound.
  bool structurally_sound() const {
    return upper_ok && energy_ok && orthonormal_ok && distinct_ok;
  }
};

struct PackingSet {
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  std::size_t r = 0;
  double d = 0.0;
  double epsilon = 0.0;
  double kappa = kDefaultKappa;
  std::uint64_t seed = 0;
  int attempts = 0;
  std::vector<PackingElement> elements;
  double min_pairwise_sq = 0.0;
  double max_pairwise_sq = 0.0;
  VerificationReport report;

  std::size_t size() const { return elements.size(); }
  Matrix dense(std::size_t l) const { return elements.at(l).factors.dense(); }
};

struct HammingResult {
  std::size_t min_distance = 0;
  std::pair<std::size_t, std::size_t> pair{0, 0};
};

/// Exact minimum Hamming distance over all unordered pairs (entries compared
/// for equality). A single-element set reports the codeword length.
HammingResult hamming_min(const std::vector<Vector>& set);
HammingResult hamming_min(const std::vector<Matrix>& set);

/// Minimum Hamming distance demanded of a codebook of dimension `dim`: ⌈dim/20⌉.
std::size_t hamming_threshold(std::size_t dim);

/// Union bound on the probability that F i.i.d. codewords of length r−1
/// contain a pair closer than (r−1)/20, clipped to [0, 1].
double lemma1_failure_bound(std::size_t count, std::size_t r);
double corollary1_failure_bound(std::size_t count, std::size_t m, std::size_t r);
/// Same bounds without clipping.
double lemma1_failure_bound_unclipped(std::size_t count, std::size_t r);
double corollary1_failure_bound_unclipped(std::size_t count, std::size_t m, std::size_t r);

/// One unvalidated draw of i.i.d. uniform ±1/√(r−1) codewords.
std::vector<Vector> draw_hypercube_vectors(std::size_t count, std::size_t r, Rng& rng);
std::vector<Matrix> draw_hypercube_matrices(std::size_t count, std::size_t m,
                                            std::size_t r, Rng& rng);

HypercubeVectorSet sample_hypercube_vectors(std::size_t count, std::size_t r,
                                            std::uint64_t seed,
                                            int max_attempts = kDefaultMaxAttempts);
HypercubeMatrixSet sample_hypercube_matrices(std::size_t count, std::size_t m,
                                             std::size_t r, std::uint64_t seed,
                                             int max_attempts = kDefaultMaxAttempts);

struct CardinalityLimits {
  std::uint64_t f_max = 0;
  std::uint64_t p1_max = 0;
  std::uint64_t p2_max = 0;
  std::uint64_t l_max = 0;
  double f_exponent = 0.0;
  double p1_exponent = 0.0;
  double p2_exponent = 0.0;
  double l_exponent = 0.0;  // floored exponent of L_max
};

/// Codebook size limits from the simultaneous-existence conditions, with no
/// degeneracy check. Counts saturate at 2^63.
CardinalityLimits cardinality_limits(std::size_t m1, std::size_t m2, std::size_t r);
/// As cardinality_limits, but throws DegenerateCardinality if any limit < 2.
CardinalityLimits max_cardinalities(std::size_t m1, std::size_t m2, std::size_t r);

struct EpsilonRange {
  double lo = 0.0;  // exclusive
  double hi = 0.0;  // inclusive

  bool contains(double eps) const { return eps > lo && eps <= hi; }
  /// Geometric midpoint, the default scale.
  double midpoint() const;
};

EpsilonRange epsilon_range(double d, std::size_t r);

OrthogonalBases sample_orthogonal_bases(std::size_t m1, std::size_t m2, std::size_t r,
                                        std::uint64_t seed);

/// Diagonal of G_f = (ε/r)·|Q · [1/√(r−1); s_f]|.
Vector build_core(const Vector& s_f, const Matrix& q, double epsilon, std::size_t r);

/// Columns U_j · [1; S[:, j]] before orthonormalization.
Matrix factor_precolumns(const Matrix& s_p, const std::vector<Matrix>& u_bases);
/// Gram-Schmidt of factor_precolumns; throws RankDeficient.
Matrix build_factor(const Matrix& s_p, const std::vector<Matrix>& u_bases);

struct PackingParams {
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  std::size_t r = 0;
  double d = 0.0;
  std::optional<double> epsilon;  // empty = midpoint of epsilon_range
  std::uint64_t seed = 0;
  double kappa = kDefaultKappa;
  int max_attempts = kDefaultMaxAttempts;
  std::optional<std::size_t> count_f;
  std::optional<std::size_t> count_p1;
  std::optional<std::size_t> count_p2;
  /// When false, a set that never passes verification is returned (best
  /// attempt, report attached) instead of raising ConstructionFailed.
  bool require_certified = true;
};

struct CodebookSizes {
  std::size_t f = 0;
  std::size_t p1 = 0;
  std::size_t p2 = 0;
};

/// Resolves requested codebook sizes against cardinality_limits.
CodebookSizes resolve_codebook_sizes(const PackingParams& params);

PackingSet assemble_packing(const PackingParams& params);

VerificationReport verify_packing(const PackingSet& set, double kappa);

/// ‖B_a − B_b‖_F² from the factored forms.
double pairwise_distance_sq(const RankRFactorization& a, const RankRFactorization& b);

}  // namespace lrlogit
