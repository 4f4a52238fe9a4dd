#include <doctest.h>

#include <cmath>
#include <set>

#include "core/error.hpp"
#include "core/linalg.hpp"
#include "core/rng.hpp"

using namespace lrlogit;

TEST_CASE("seed derivation is deterministic and tag sensitive") {
  CHECK(derive_seed(1, {tag("a"), 2}) == derive_seed(1, {tag("a"), 2}));
  CHECK(derive_seed(1, {tag("a"), 2}) != derive_seed(1, {tag("a"), 3}));
  CHECK(derive_seed(1, {tag("a")}) != derive_seed(1, {tag("b")}));
  CHECK(derive_seed(1, {tag("a")}) != derive_seed(2, {tag("a")}));
}

TEST_CASE("rng streams reproduce") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  Rng c(42, {tag("x")}), d(42, {tag("x")});
  for (int i = 0; i < 100; ++i) CHECK(c.normal() == d.normal());
}

TEST_CASE("rng moments") {
  Rng rng(7);
  const int n = 200000;
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(sn / n) < 0.01);
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("bounded integers stay in range and cover it") {
  Rng rng(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.below(7);
    REQUIRE(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("gram-schmidt orthonormalizes and preserves the span") {
  Rng rng(11);
  Matrix a(6, 3);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  const Matrix q = gram_schmidt(a, kGramSchmidtRankTol);
  CHECK(orthonormality_residual(q) < 1e-12);
  const Matrix proj = q * q.transpose() * a;
  CHECK((proj - a).norm() < 1e-12);
  // Upper-triangular change of basis: first column keeps its direction.
  CHECK(q.col(0).dot(a.col(0)) == doctest::Approx(a.col(0).norm()));
}

TEST_CASE("gram-schmidt on nearly parallel columns") {
  Matrix a(3, 2);
  a << 1.0, 1.0, 1e-6, 2e-6, 0.0, 1e-6;
  const Matrix q = gram_schmidt(a, 1e-12);
  CHECK(orthonormality_residual(q) < 1e-10);
}

TEST_CASE("gram-schmidt rejects rank-deficient input") {
  Matrix a(4, 2);
  a << 1, 2, 2, 4, 3, 6, 4, 8;
  try {
    gram_schmidt(a, kGramSchmidtRankTol);
    FAIL("expected RankDeficient");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RankDeficient);
  }
}

TEST_CASE("random orthogonal matrices") {
  Rng rng(5);
  for (std::size_t n : {1u, 2u, 5u, 12u}) {
    const Matrix q = random_orthogonal(n, rng);
    CHECK(orthonormality_residual(q) < 1e-12);
  }
}

TEST_CASE("rank truncation") {
  Rng rng(9);
  Matrix a(5, 4);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
  CHECK(numerical_rank(a) == 4);
  const Matrix t = truncate_rank(a, 2);
  CHECK(numerical_rank(t) == 2);
  CHECK(truncate_rank(a, 4) == a);
  // Eckart-Young: residual equals the tail singular values.
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector s = svd.singularValues();
  CHECK((a - t).squaredNorm() == doctest::Approx(s(2) * s(2) + s(3) * s(3)));
}

TEST_CASE("flatten is row-major and inverts unflatten") {
  Matrix a(2, 3);
  a << 1, 2, 3, 4, 5, 6;
  const Vector f = flatten(a);
  for (int i = 0; i < 6; ++i) CHECK(f(i) == i + 1);
  CHECK(unflatten(std::span<const double>(f.data(), 6), 2, 3) == a);
  CHECK_THROWS_AS(unflatten(std::span<const double>(f.data(), 5), 2, 3), Error);
}
