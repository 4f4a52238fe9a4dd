#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/packing.hpp"

using namespace lrlogit;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

PackingParams default_params(std::uint64_t seed) {
  PackingParams p;
  p.m1 = 12;
  p.m2 = 12;
  p.r = 3;
  p.d = 10.0;
  p.seed = seed;
  p.require_certified = false;
  return p;
}

}  // namespace

TEST_CASE("hamming threshold is ceil(dim/20)") {
  CHECK(hamming_threshold(1) == 1);
  CHECK(hamming_threshold(20) == 1);
  CHECK(hamming_threshold(21) == 2);
  CHECK(hamming_threshold(40) == 2);
  CHECK(hamming_threshold(41) == 3);
}

TEST_CASE("hamming distance counts differing entries") {
  Vector a(4), b(4), c(4);
  a << 1, 1, 1, 1;
  b << 1, -1, 1, -1;
  c << 1, 1, 1, -1;
  const auto h = hamming_min(std::vector<Vector>{a, b, c});
  CHECK(h.min_distance == 1);
  CHECK(h.pair.first == 0);
  CHECK(h.pair.second == 2);
  CHECK(hamming_min(std::vector<Vector>{a}).min_distance == 4);
}

TEST_CASE("hypercube failure bounds") {
  CHECK(lemma1_failure_bound(2, 41) == doctest::Approx(1.8427e-7).epsilon(1e-3));
  CHECK(lemma1_failure_bound_unclipped(2, 2) == doctest::Approx(1.334).epsilon(1e-3));
  CHECK(lemma1_failure_bound(2, 2) == 1.0);
  CHECK_THROWS_AS(lemma1_failure_bound(1, 10), Error);
}

TEST_CASE("hypercube vectors have the right magnitude and spread") {
  const auto set = sample_hypercube_vectors(8, 21, 3);
  REQUIRE(set.vectors.size() == 8);
  CHECK(set.entry_magnitude == doctest::Approx(1.0 / std::sqrt(20.0)));
  for (const auto& v : set.vectors) {
    CHECK(v.size() == 20);
    for (Eigen::Index i = 0; i < v.size(); ++i) CHECK(std::abs(v(i)) == doctest::Approx(set.entry_magnitude));
  }
  CHECK(hamming_min(set.vectors).min_distance >= hamming_threshold(20));
}

TEST_CASE("hypercube matrices") {
  const auto set = sample_hypercube_matrices(4, 12, 3, 1);
  REQUIRE(set.matrices.size() == 4);
  CHECK(set.entry_magnitude == doctest::Approx(1.0 / std::sqrt(33.0)));
  CHECK(set.matrices[0].rows() == 11);
  CHECK(set.matrices[0].cols() == 3);
  CHECK(hamming_min(set.matrices).min_distance >= hamming_threshold(33));
}

TEST_CASE("codebooks larger than the cube are rejected") {
  CHECK(kind_of([] { sample_hypercube_vectors(3, 2, 0); }) == ErrorKind::CardinalityTooLarge);
  CHECK(sample_hypercube_vectors(2, 2, 0).vectors.size() == 2);
  CHECK(kind_of([] { sample_hypercube_matrices(3, 2, 1, 0); }) == ErrorKind::CardinalityTooLarge);
}

TEST_CASE("epsilon range") {
  const auto range = epsilon_range(10.0, 2);
  CHECK(range.lo == doctest::Approx(2.0));
  CHECK(range.hi == doctest::Approx(7.0710678118654755));
  CHECK(range.midpoint() == doctest::Approx(std::sqrt(range.lo * range.hi)));
  CHECK(range.contains(range.hi));
  CHECK_FALSE(range.contains(range.lo));
  CHECK(kind_of([] { epsilon_range(1.0, 2); }) == ErrorKind::EmptyRange);
  CHECK(kind_of([] { epsilon_range(2.8, 2); }) == ErrorKind::EmptyRange);
}

TEST_CASE("cardinality limits") {
  const auto lim = cardinality_limits(10, 10, 2);
  CHECK(lim.f_exponent == doctest::Approx(-0.000336).epsilon(0.01));
  CHECK(lim.f_max == 0);
  CHECK(kind_of([] { max_cardinalities(10, 10, 2); }) == ErrorKind::DegenerateCardinality);
  const auto big = cardinality_limits(12, 12, 3);
  CHECK(big.p1_max >= 2);
  CHECK(big.l_max >= 2);
}

TEST_CASE("core diagonal has the packing energy") {
  Rng rng(4);
  const std::size_t r = 5;
  const Matrix q = random_orthogonal(r, rng);
  Vector s(r - 1);
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = (i % 2 ? 1.0 : -1.0) / std::sqrt(r - 1.0);
  const double eps = 2.5;
  const Vector g = build_core(s, q, eps, r);
  CHECK(g.minCoeff() >= 0.0);
  CHECK(g.squaredNorm() == doctest::Approx(eps * eps / (r * (r - 1.0))).epsilon(1e-12));
}

TEST_CASE("factor columns are orthonormal") {
  const auto bases = sample_orthogonal_bases(12, 12, 3, 9);
  CHECK(orthonormality_residual(bases.q) < 1e-12);
  const auto s = sample_hypercube_matrices(2, 12, 3, 2).matrices[0];
  const Matrix pre = factor_precolumns(s, bases.u1);
  CHECK(pre.rows() == 12);
  CHECK(pre.cols() == 3);
  // Column j is U_j [1; S_j]; its norm² is 1 + 1/r.
  for (Eigen::Index j = 0; j < 3; ++j) CHECK(pre.col(j).squaredNorm() == doctest::Approx(1.0 + 1.0 / 3.0));
  CHECK(orthonormality_residual(build_factor(s, bases.u1)) < 1e-12);
}

TEST_CASE("codebook size resolution") {
  auto p = default_params(0);
  p.r = 1;
  CHECK(kind_of([&] { resolve_codebook_sizes(p); }) == ErrorKind::DegenerateCardinality);
  p.r = 13;
  CHECK(kind_of([&] { resolve_codebook_sizes(p); }) == ErrorKind::InvalidArgument);
  p.r = 3;
  const auto sizes = resolve_codebook_sizes(p);
  CHECK(sizes.f * sizes.p1 * sizes.p2 >= 2);
  p.count_p1 = std::size_t{1} << 40;
  CHECK(kind_of([&] { resolve_codebook_sizes(p); }) == ErrorKind::CardinalityTooLarge);
}

TEST_CASE("assembled packing is structurally sound and deterministic") {
  const auto set = assemble_packing(default_params(7));
  REQUIRE(set.size() >= 2);
  const double energy = set.epsilon * set.epsilon / (3.0 * 2.0);
  for (std::size_t l = 0; l < set.size(); ++l) {
    const auto& f = set.elements[l].factors;
    CHECK(std::abs(f.energy() - energy) <= 1e-10 * energy);
    CHECK(f.dense().squaredNorm() < set.d * set.d);
    CHECK(orthonormality_residual(f.b1) <= 1e-10);
    CHECK(orthonormality_residual(f.b2) <= 1e-10);
  }
  CHECK(set.report.structurally_sound());
  CHECK(set.max_pairwise_sq <= set.report.upper_threshold);
  CHECK(set.min_pairwise_sq > 0.0);

  const auto again = assemble_packing(default_params(7));
  REQUIRE(again.size() == set.size());
  for (std::size_t l = 0; l < set.size(); ++l) CHECK(again.dense(l) == set.dense(l));
  const auto other = assemble_packing(default_params(8));
  CHECK(other.dense(0) != set.dense(0));
}

TEST_CASE("factored distance matches dense distance") {
  const auto set = assemble_packing(default_params(1));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const double dense = (set.dense(a) - set.dense(b)).squaredNorm();
      CHECK(pairwise_distance_sq(set.elements[a].factors, set.elements[b].factors) ==
            doctest::Approx(dense).epsilon(1e-9).scale(1.0));
    }
  CHECK(pairwise_distance_sq(set.elements[2].factors, set.elements[2].factors) == 0.0);
}

TEST_CASE("certified construction reports failure instead of returning") {
  auto p = default_params(7);
  p.require_certified = true;
  p.max_attempts = 2;
  const auto set = assemble_packing(default_params(7));
  if (!set.report.passed)
    CHECK(kind_of([&] { assemble_packing(p); }) == ErrorKind::ConstructionFailed);
}

TEST_CASE("verification catches targeted mutations") {
  auto set = assemble_packing(default_params(3));
  SUBCASE("energy") {
    set.elements[4].factors.g_diag *= 10.0;
    const auto rep = verify_packing(set, 0.2);
    CHECK_FALSE(rep.passed);
    CHECK_FALSE(rep.energy_ok);
    bool named = false;
    for (const auto& issue : rep.element_issues) named = named || issue.index == 4;
    CHECK(named);
  }
  SUBCASE("orthonormality") {
    set.elements[1].factors.b1(0, 0) += 1e-3;
    const auto rep = verify_packing(set, 0.2);
    CHECK_FALSE(rep.orthonormal_ok);
  }
  SUBCASE("duplicate index") {
    set.elements[1].index = set.elements[0].index;
    CHECK_FALSE(verify_packing(set, 0.2).distinct_ok);
  }
  SUBCASE("negative core") {
    set.elements[2].factors.g_diag(0) = -set.elements[2].factors.g_diag(0);
    CHECK_FALSE(verify_packing(set, 0.2).passed);
  }
  SUBCASE("unmodified re-verification matches construction") {
    const auto rep = verify_packing(set, set.kappa);
    CHECK(rep.passed == set.report.passed);
    CHECK(rep.min_pairwise_sq == set.min_pairwise_sq);
    CHECK(rep.structurally_sound());
  }
}

TEST_CASE("zero kappa certifies the upper sandwich alone") {
  const auto set = assemble_packing(default_params(5));
  CHECK(verify_packing(set, 0.0).passed);
}
