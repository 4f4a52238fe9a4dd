#include "core/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "core/error.hpp"

namespace lrlogit {

namespace {

constexpr double kC1 = 0.81;  // (1 − 1/10)²
const double kLog2e = std::numbers::log2e;
const double kHalfLog2ThreeHalves = 0.5 * std::log2(1.5);

template <typename T>
std::size_t hamming(const T& a, const T& b) {
  std::size_t count = 0;
  const double* pa = a.data();
  const double* pb = b.data();
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (pa[i] != pb[i]) ++count;
  return count;
}

template <typename T>
HammingResult hamming_min_impl(const std::vector<T>& set) {
  require(!set.empty(), "hamming_min requires a nonempty set");
  HammingResult best;
  best.min_distance = static_cast<std::size_t>(set.front().size());
  bool first = true;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      const std::size_t dist = hamming(set[i], set[j]);
      if (first || dist < best.min_distance) {
        best = {dist, {i, j}};
        first = false;
      }
    }
  }
  return best;
}

std::uint64_t saturating_pow2_floor(double exponent) {
  if (exponent >= 63.0) return std::uint64_t{1} << 63;
  return static_cast<std::uint64_t>(std::floor(std::exp2(exponent)));
}

double union_bound(std::size_t count, double dim) {
  const auto c = static_cast<double>(count);
  return std::exp(2.0 * std::log(c) - std::numbers::ln2 - 0.5 * kC1 * dim);
}

void check_cardinality_possible(std::size_t count, std::size_t dim) {
  // Distinct codewords are always required (threshold ≥ 1), so more
  // codewords than hypercube vertices can never be validated.
  if (dim < 63 && count > (std::uint64_t{1} << dim)) {
    fail(ErrorKind::CardinalityTooLarge,
         "requested " + std::to_string(count) + " codewords but the " +
             std::to_string(dim) + "-dimensional hypercube has only " +
             std::to_string(std::uint64_t{1} << dim) + " vertices");
  }
}

}  // namespace

HammingResult hamming_min(const std::vector<Vector>& set) { return hamming_min_impl(set); }
HammingResult hamming_min(const std::vector<Matrix>& set) { return hamming_min_impl(set); }

std::size_t hamming_threshold(std::size_t dim) { return (dim + 19) / 20; }

double lemma1_failure_bound_unclipped(std::size_t count, std::size_t r) {
  require(count >= 2 && r >= 2, "lemma1_failure_bound requires F >= 2 and r >= 2");
  return union_bound(count, static_cast<double>(r - 1));
}

double lemma1_failure_bound(std::size_t count, std::size_t r) {
  return std::clamp(lemma1_failure_bound_unclipped(count, r), 0.0, 1.0);
}

double corollary1_failure_bound_unclipped(std::size_t count, std::size_t m, std::size_t r) {
  require(count >= 2 && m >= 2 && r >= 1,
          "corollary1_failure_bound requires P >= 2, m >= 2, r >= 1");
  return union_bound(count, static_cast<double>((m - 1) * r));
}

double corollary1_failure_bound(std::size_t count, std::size_t m, std::size_t r) {
  return std::clamp(corollary1_failure_bound_unclipped(count, m, r), 0.0, 1.0);
}

std::vector<Vector> draw_hypercube_vectors(std::size_t count, std::size_t r, Rng& rng) {
  const auto dim = static_cast<Eigen::Index>(r - 1);
  const double mag = 1.0 / std::sqrt(static_cast<double>(r - 1));
  std::vector<Vector> out(count, Vector(dim));
  for (auto& v : out)
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.coin() ? mag : -mag;
  return out;
}

std::vector<Matrix> draw_hypercube_matrices(std::size_t count, std::size_t m,
                                            std::size_t r, Rng& rng) {
  const auto rows = static_cast<Eigen::Index>(m - 1);
  const auto cols = static_cast<Eigen::Index>(r);
  const double mag = 1.0 / std::sqrt(static_cast<double>((m - 1) * r));
  std::vector<Matrix> out(count, Matrix(rows, cols));
  for (auto& s : out)
    for (Eigen::Index c = 0; c < cols; ++c)
      for (Eigen::Index i = 0; i < rows; ++i) s(i, c) = rng.coin() ? mag : -mag;
  return out;
}

HypercubeVectorSet sample_hypercube_vectors(std::size_t count, std::size_t r,
                                            std::uint64_t seed, int max_attempts) {
  require(count >= 2, "sample_hypercube_vectors requires F >= 2");
  require(r >= 2, "sample_hypercube_vectors requires r >= 2");
  require(max_attempts >= 1, "max_attempts must be positive");
  check_cardinality_possible(count, r - 1);
  const std::size_t threshold = hamming_threshold(r - 1);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(seed, {tag("hypercube-vectors"), static_cast<std::uint64_t>(attempt)});
    auto vectors = draw_hypercube_vectors(count, r, rng);
    if (hamming_min(vectors).min_distance >= threshold) {
      return {std::move(vectors), 1.0 / std::sqrt(static_cast<double>(r - 1)), seed,
              attempt + 1};
    }
  }
  fail(ErrorKind::ConstructionFailed,
       "no hypercube vector set with minimum Hamming distance " +
           std::to_string(threshold) + " after " + std::to_string(max_attempts) +
           " attempts");
}

HypercubeMatrixSet sample_hypercube_matrices(std::size_t count, std::size_t m,
                                             std::size_t r, std::uint64_t seed,
                                             int max_attempts) {
  require(count >= 2, "sample_hypercube_matrices requires P >= 2");
  require(m >= 2 && r >= 1, "sample_hypercube_matrices requires m >= 2 and r >= 1");
  require(max_attempts >= 1, "max_attempts must be positive");
  const std::size_t dim = (m - 1) * r;
  check_cardinality_possible(count, dim);
  const std::size_t threshold = hamming_threshold(dim);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(seed, {tag("hypercube-matrices"), static_cast<std::uint64_t>(attempt)});
    auto matrices = draw_hypercube_matrices(count, m, r, rng);
    if (hamming_min(matrices).min_distance >= threshold) {
      return {std::move(matrices), 1.0 / std::sqrt(static_cast<double>(dim)), seed,
              attempt + 1};
    }
  }
  fail(ErrorKind::ConstructionFailed,
       "no hypercube matrix set with minimum Hamming distance " +
           std::to_string(threshold) + " after " + std::to_string(max_attempts) +
           " attempts");
}

CardinalityLimits cardinality_limits(std::size_t m1, std::size_t m2, std::size_t r) {
  require(m1 >= 1 && m2 >= 1 && r >= 1, "dimensions must be positive");
  const double scale = kLog2e / 4.0 * kC1;
  const auto dr = static_cast<double>(r);
  CardinalityLimits out;
  out.f_exponent = scale * (dr - 1.0) - kHalfLog2ThreeHalves;
  out.p1_exponent = scale * static_cast<double>(m1 - 1) * dr - kHalfLog2ThreeHalves;
  out.p2_exponent = scale * static_cast<double>(m2 - 1) * dr - kHalfLog2ThreeHalves;
  out.l_exponent = std::floor(
      kLog2e / 4.0 * (kC1 * dr * static_cast<double>(m1 + m2 - 1) + kC1 * (dr - 1.0)) -
      3.0 * kHalfLog2ThreeHalves);
  out.f_max = saturating_pow2_floor(out.f_exponent);
  out.p1_max = saturating_pow2_floor(out.p1_exponent);
  out.p2_max = saturating_pow2_floor(out.p2_exponent);
  out.l_max = out.l_exponent < 0.0 ? 0 : saturating_pow2_floor(out.l_exponent);
  return out;
}

CardinalityLimits max_cardinalities(std::size_t m1, std::size_t m2, std::size_t r) {
  require(m1 >= 2 && m2 >= 2 && r >= 2, "max_cardinalities requires m1, m2, r >= 2");
  const CardinalityLimits lim = cardinality_limits(m1, m2, r);
  std::string degenerate;
  auto check = [&](const char* name, std::uint64_t value) {
    if (value < 2) {
      if (!degenerate.empty()) degenerate += ", ";
      degenerate += std::string(name) + "=" + std::to_string(value);
    }
  };
  check("F_max", lim.f_max);
  check("P1_max", lim.p1_max);
  check("P2_max", lim.p2_max);
  check("L_max", lim.l_max);
  if (!degenerate.empty())
    fail(ErrorKind::DegenerateCardinality, "degenerate cardinality: " + degenerate);
  return lim;
}

double EpsilonRange::midpoint() const { return std::sqrt(lo * hi); }

EpsilonRange epsilon_range(double d, std::size_t r) {
  require(d > 0.0, "epsilon_range requires d > 0");
  require(r >= 2, "epsilon_range requires r >= 2");
  const auto dr = static_cast<double>(r);
  EpsilonRange range{std::sqrt(8.0 * (dr - 1.0) / dr), d * std::sqrt((dr - 1.0) / dr)};
  if (range.lo >= range.hi) {
    fail(ErrorKind::EmptyRange, "no admissible epsilon for d = " + std::to_string(d) +
                                    " (requires d > sqrt(8))");
  }
  return range;
}

OrthogonalBases sample_orthogonal_bases(std::size_t m1, std::size_t m2, std::size_t r,
                                        std::uint64_t seed) {
  require(m1 >= 1 && m2 >= 1 && r >= 1, "dimensions must be positive");
  OrthogonalBases bases;
  bases.seed = seed;
  Rng q_rng(seed, {tag("Q")});
  bases.q = random_orthogonal(r, q_rng);
  bases.u1.reserve(r);
  bases.u2.reserve(r);
  for (std::size_t j = 0; j < r; ++j) {
    Rng rng(seed, {tag("U1"), j});
    bases.u1.push_back(random_orthogonal(m1, rng));
  }
  for (std::size_t j = 0; j < r; ++j) {
    Rng rng(seed, {tag("U2"), j});
    bases.u2.push_back(random_orthogonal(m2, rng));
  }
  return bases;
}

Vector build_core(const Vector& s_f, const Matrix& q, double epsilon, std::size_t r) {
  require(r >= 2, "build_core requires r >= 2");
  require(static_cast<std::size_t>(s_f.size()) == r - 1, "s_f must have length r-1");
  require(static_cast<std::size_t>(q.rows()) == r && q.rows() == q.cols(),
          "Q must be r×r");
  Vector head(static_cast<Eigen::Index>(r));
  head(0) = std::sqrt(1.0 / static_cast<double>(r - 1));
  head.tail(static_cast<Eigen::Index>(r - 1)) = s_f;
  const Vector g1 = q * head;
  return (epsilon / static_cast<double>(r)) * g1.cwiseAbs();
}

Matrix factor_precolumns(const Matrix& s_p, const std::vector<Matrix>& u_bases) {
  const Eigen::Index m = s_p.rows() + 1;
  const Eigen::Index r = s_p.cols();
  require(static_cast<Eigen::Index>(u_bases.size()) == r, "need one basis per column");
  require(r <= m, "factor rank cannot exceed the side length");
  Matrix pre(m, r);
  Vector lifted(m);
  for (Eigen::Index j = 0; j < r; ++j) {
    const Matrix& u = u_bases[static_cast<std::size_t>(j)];
    require(u.rows() == m && u.cols() == m, "basis has wrong shape");
    lifted(0) = 1.0;
    lifted.tail(m - 1) = s_p.col(j);
    pre.col(j) = u * lifted;
  }
  return pre;
}

Matrix build_factor(const Matrix& s_p, const std::vector<Matrix>& u_bases) {
  return gram_schmidt(factor_precolumns(s_p, u_bases));
}

CodebookSizes resolve_codebook_sizes(const PackingParams& params) {
  if (params.r < 2) {
    fail(ErrorKind::DegenerateCardinality,
         "rank r = " + std::to_string(params.r) +
             " leaves an empty core codebook; packing requires r >= 2");
  }
  require(params.m1 >= 2 && params.m2 >= 2, "packing requires m1, m2 >= 2");
  require(params.r <= std::min(params.m1, params.m2), "rank cannot exceed min(m1, m2)");
  const CardinalityLimits lim = cardinality_limits(params.m1, params.m2, params.r);

  auto resolve = [](const char* name, const std::optional<std::size_t>& requested,
                    std::uint64_t limit) -> std::size_t {
    const std::uint64_t usable = std::max<std::uint64_t>(limit, 1);
    if (!requested) return static_cast<std::size_t>(std::min<std::uint64_t>(usable, kDefaultCodebookCap));
    require(*requested >= 1, std::string(name) + " must be at least 1");
    if (*requested > usable) {
      fail(ErrorKind::CardinalityTooLarge,
           std::string(name) + " = " + std::to_string(*requested) +
               " exceeds the existence limit " + std::to_string(limit));
    }
    return *requested;
  };

  CodebookSizes sizes{resolve("F", params.count_f, lim.f_max),
                      resolve("P1", params.count_p1, lim.p1_max),
                      resolve("P2", params.count_p2, lim.p2_max)};
  const double total = static_cast<double>(sizes.f) * static_cast<double>(sizes.p1) *
                       static_cast<double>(sizes.p2);
  if (total < 2.0) {
    fail(ErrorKind::DegenerateCardinality,
         "packing would contain a single element (F_max=" + std::to_string(lim.f_max) +
             ", P1_max=" + std::to_string(lim.p1_max) +
             ", P2_max=" + std::to_string(lim.p2_max) + ")");
  }
  if (total > static_cast<double>(lim.l_max)) {
    fail(ErrorKind::CardinalityTooLarge,
         "packing size " + std::to_string(static_cast<std::uint64_t>(total)) +
             " exceeds L_max = " + std::to_string(lim.l_max));
  }
  return sizes;
}

double pairwise_distance_sq(const RankRFactorization& a, const RankRFactorization& b) {
  if (a.b1 == b.b1 && a.b2 == b.b2 && a.g_diag == b.g_diag) return 0.0;
  // ⟨B1 G B2ᵀ, B1' G' B2'ᵀ⟩ = gᵀ ((B1ᵀB1') ∘ (B2ᵀB2')) g'
  const Matrix m1 = a.b1.transpose() * b.b1;
  const Matrix m2 = a.b2.transpose() * b.b2;
  const double cross = a.g_diag.dot(m1.cwiseProduct(m2) * b.g_diag);
  return std::max(0.0, a.energy() + b.energy() - 2.0 * cross);
}

VerificationReport verify_packing(const PackingSet& set, double kappa) {
  require(!set.elements.empty(), "verify_packing requires a nonempty set");
  require(set.r >= 2, "verify_packing requires r >= 2");
  require(kappa >= 0.0, "kappa must be nonnegative");

  VerificationReport rep;
  rep.kappa = kappa;
  const auto r = static_cast<double>(set.r);
  const double eps_sq = set.epsilon * set.epsilon;
  const double unit = eps_sq * r / (r - 1.0);
  rep.lower_threshold = kappa * unit;
  rep.upper_threshold = 4.0 * unit;
  rep.expected_energy = eps_sq / (r * (r - 1.0));

  rep.energy_ok = true;
  rep.orthonormal_ok = true;
  const double energy_tol = kOrthonormalTol * std::max(1.0, rep.expected_energy);
  for (std::size_t l = 0; l < set.elements.size(); ++l) {
    const RankRFactorization& fac = set.elements[l].factors;
    const bool shapes_ok =
        fac.b1.rows() == static_cast<Eigen::Index>(set.m1) &&
        fac.b2.rows() == static_cast<Eigen::Index>(set.m2) &&
        fac.b1.cols() == static_cast<Eigen::Index>(set.r) &&
        fac.b2.cols() == static_cast<Eigen::Index>(set.r) &&
        fac.g_diag.size() == static_cast<Eigen::Index>(set.r);
    if (!shapes_ok) {
      rep.orthonormal_ok = false;
      rep.element_issues.push_back({l, "factor shapes do not match (m1, m2, r)", 0.0});
      continue;
    }
    const double energy = fac.energy();
    if (!(energy < set.d * set.d)) {
      rep.energy_ok = false;
      rep.element_issues.push_back({l, "energy exceeds radius d^2", energy});
    }
    if (std::abs(energy - rep.expected_energy) > energy_tol) {
      rep.energy_ok = false;
      rep.element_issues.push_back({l, "energy differs from eps^2/(r(r-1))", energy});
    }
    if (fac.g_diag.minCoeff() < 0.0) {
      rep.energy_ok = false;
      rep.element_issues.push_back({l, "negative singular value", fac.g_diag.minCoeff()});
    }
    for (const auto* factor : {&fac.b1, &fac.b2}) {
      const double res = orthonormality_residual(*factor);
      rep.max_orthonormality_residual = std::max(rep.max_orthonormality_residual, res);
      if (res > kOrthonormalTol) {
        rep.orthonormal_ok = false;
        rep.element_issues.push_back(
            {l, factor == &fac.b1 ? "B1 not orthonormal" : "B2 not orthonormal", res});
      }
    }
  }

  rep.distinct_ok = true;
  for (std::size_t a = 0; a < set.elements.size() && rep.distinct_ok; ++a)
    for (std::size_t b = a + 1; b < set.elements.size(); ++b)
      if (set.elements[a].index == set.elements[b].index) {
        rep.distinct_ok = false;
        rep.failures.push_back("duplicate index tuple at elements " + std::to_string(a) +
                               " and " + std::to_string(b));
        break;
      }

  std::vector<PairDistance> violations;
  if (set.elements.size() < 2) {
    rep.min_pairwise_sq = rep.max_pairwise_sq = 0.0;
    rep.lower_ok = false;
    rep.upper_ok = true;
    rep.failures.push_back("packing has fewer than two elements");
  } else {
    rep.min_pairwise_sq = std::numeric_limits<double>::infinity();
    rep.max_pairwise_sq = -1.0;
    for (std::size_t a = 0; a < set.elements.size(); ++a) {
      for (std::size_t b = a + 1; b < set.elements.size(); ++b) {
        const double dist =
            pairwise_distance_sq(set.elements[a].factors, set.elements[b].factors);
        if (dist < rep.min_pairwise_sq) rep.closest = {a, b, rep.min_pairwise_sq = dist};
        if (dist > rep.max_pairwise_sq) rep.farthest = {a, b, rep.max_pairwise_sq = dist};
        if (!(dist > rep.lower_threshold)) {
          ++rep.lower_violations;
          violations.push_back({a, b, dist});
        }
        if (dist > rep.upper_threshold) {
          ++rep.upper_violations;
          violations.push_back({a, b, dist});
        }
      }
    }
    rep.lower_ok = rep.lower_violations == 0;
    rep.upper_ok = rep.upper_violations == 0;
  }

  // Severity: distance below the lower threshold, or above the upper one,
  // measured relative to the threshold crossed.
  auto severity = [&](const PairDistance& p) {
    return p.distance_sq > rep.upper_threshold ? p.distance_sq / rep.upper_threshold
                                               : rep.lower_threshold / std::max(p.distance_sq, 1e-300);
  };
  std::sort(violations.begin(), violations.end(), [&](const auto& x, const auto& y) {
    const double sx = severity(x), sy = severity(y);
    if (sx != sy) return sx > sy;
    return std::pair{x.a, x.b} < std::pair{y.a, y.b};
  });
  if (violations.size() > 8) violations.resize(8);
  rep.worst_pairs = std::move(violations);

  if (!rep.lower_ok && set.elements.size() >= 2)
    rep.failures.push_back(std::to_string(rep.lower_violations) +
                           " pair(s) at or below the lower distance threshold; closest pair (" +
                           std::to_string(rep.closest.a) + ", " + std::to_string(rep.closest.b) + ")");
  if (!rep.upper_ok)
    rep.failures.push_back(std::to_string(rep.upper_violations) +
                           " pair(s) above the upper distance threshold; farthest pair (" +
                           std::to_string(rep.farthest.a) + ", " + std::to_string(rep.farthest.b) + ")");
  for (const auto& issue : rep.element_issues)
    rep.failures.push_back("element " + std::to_string(issue.index) + ": " + issue.what);

  rep.passed = rep.lower_ok && rep.upper_ok && rep.energy_ok && rep.orthonormal_ok &&
               rep.distinct_ok;
  return rep;
}

PackingSet assemble_packing(const PackingParams& params) {
  require(params.max_attempts >= 1, "max_attempts must be positive");
  const CodebookSizes sizes = resolve_codebook_sizes(params);
  const EpsilonRange range = epsilon_range(params.d, params.r);
  const double epsilon = params.epsilon.value_or(range.midpoint());
  if (!range.contains(epsilon)) {
    fail(ErrorKind::InvalidArgument,
         "epsilon " + std::to_string(epsilon) + " outside admissible range (" +
             std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]");
  }

  // Each hypercube draw is paired with several basis draws before the
  // codebooks themselves are resampled.
  constexpr int kBasesPerCodebookRound = 8;

  std::optional<PackingSet> best;
  double best_score = -1.0;
  int cube_round = -1;
  std::vector<Vector> core_words;
  std::vector<Matrix> words1, words2;

  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    if (attempt / kBasesPerCodebookRound != cube_round) {
      cube_round = attempt / kBasesPerCodebookRound;
      const std::uint64_t cube_seed =
          derive_seed(params.seed, {tag("codebooks"), static_cast<std::uint64_t>(cube_round)});
      if (sizes.f >= 2) {
        core_words = sample_hypercube_vectors(sizes.f, params.r, derive_seed(cube_seed, {tag("F")}),
                                              params.max_attempts).vectors;
      } else {
        Rng rng(cube_seed, {tag("F")});
        core_words = draw_hypercube_vectors(1, params.r, rng);
      }
      auto draw_matrices = [&](std::size_t count, std::size_t m, const char* label) {
        if (count >= 2)
          return sample_hypercube_matrices(count, m, params.r, derive_seed(cube_seed, {tag(label)}),
                                           params.max_attempts).matrices;
        Rng rng(cube_seed, {tag(label)});
        return draw_hypercube_matrices(1, m, params.r, rng);
      };
      words1 = draw_matrices(sizes.p1, params.m1, "P1");
      words2 = draw_matrices(sizes.p2, params.m2, "P2");
    }

    const OrthogonalBases bases = sample_orthogonal_bases(
        params.m1, params.m2, params.r,
        derive_seed(params.seed, {tag("bases"), static_cast<std::uint64_t>(attempt)}));

    PackingSet set;
    set.m1 = params.m1;
    set.m2 = params.m2;
    set.r = params.r;
    set.d = params.d;
    set.epsilon = epsilon;
    set.kappa = params.kappa;
    set.seed = params.seed;
    set.attempts = attempt + 1;
    try {
      std::vector<Vector> cores;
      std::vector<Matrix> factors1, factors2;
      for (const auto& s : core_words) cores.push_back(build_core(s, bases.q, epsilon, params.r));
      for (const auto& s : words1) factors1.push_back(build_factor(s, bases.u1));
      for (const auto& s : words2) factors2.push_back(build_factor(s, bases.u2));
      set.elements.reserve(sizes.f * sizes.p1 * sizes.p2);
      for (std::size_t f = 0; f < sizes.f; ++f)
        for (std::size_t p1 = 0; p1 < sizes.p1; ++p1)
          for (std::size_t p2 = 0; p2 < sizes.p2; ++p2)
            set.elements.push_back({{f, p1, p2}, {factors1[p1], cores[f], factors2[p2]}});
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::RankDeficient) continue;
      throw;
    }

    set.report = verify_packing(set, params.kappa);
    set.min_pairwise_sq = set.report.min_pairwise_sq;
    set.max_pairwise_sq = set.report.max_pairwise_sq;
    if (set.report.passed) return set;

    const double score = set.report.structurally_sound()
                             ? set.report.min_pairwise_sq / set.report.upper_threshold
                             : -0.5;
    if (score > best_score) {
      best_score = score;
      best = std::move(set);
    }
  }

  if (!params.require_certified && best) {
    best->attempts = params.max_attempts;
    return std::move(*best);
  }
  std::string detail = "packing verification failed after " +
                       std::to_string(params.max_attempts) + " attempts";
  if (best) {
    detail += "; best attempt: min pairwise sq " + std::to_string(best->report.min_pairwise_sq) +
              " vs lower threshold " + std::to_string(best->report.lower_threshold);
    for (const auto& f : best->report.failures) detail += "; " + f;
  }
  fail(ErrorKind::ConstructionFailed, detail);
}

}  // namespace lrlogit
