#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/bound.hpp"
#include "core/error.hpp"

using namespace lrlogit;

TEST_CASE("bound constants") {
  const auto k = constants();
  CHECK(k.c1 == 0.81);
  // log2(e)(√2−1)/(4√2) and 3(√2−1)/√8 · log2(3/2)
  CHECK(k.c2 == doctest::Approx(0.10563889857304348).epsilon(1e-14));
  CHECK(k.c3 == doctest::Approx(0.25699732458207897).epsilon(1e-14));
}

TEST_CASE("minimax lower bound reference values") {
  const auto lb = minimax_lower_bound({10, 10, 2, 1000, 1.0, BoundVariant::Theorem});
  CHECK(lb.value == doctest::Approx(2.9907215896794596e-4).epsilon(1e-12));
  CHECK_FALSE(lb.vacuous);
  const auto lb3 = minimax_lower_bound({12, 12, 3, 1, 1.0, BoundVariant::Theorem});
  CHECK(lb3.numerator / (8.0 * std::sqrt(2.0 / std::numbers::pi)) ==
        doctest::Approx(0.71464).epsilon(1e-4));
}

TEST_CASE("bound scales as 1/(nσ)") {
  const BoundInputs base{10, 10, 2, 1000, 1.0, BoundVariant::Theorem};
  const double v = minimax_lower_bound(base).value;
  auto twice_n = base;
  twice_n.n = 2000;
  CHECK(minimax_lower_bound(twice_n).value == doctest::Approx(v / 2));
  auto twice_sigma = base;
  twice_sigma.sigma = 2.0;
  CHECK(minimax_lower_bound(twice_sigma).value == doctest::Approx(v / 2));
}

TEST_CASE("tiny problems give a vacuous bound") {
  const auto lb = minimax_lower_bound({2, 2, 2, 100, 1.0, BoundVariant::Theorem});
  CHECK(lb.vacuous);
  CHECK(lb.value == 0.0);
  CHECK(lb.numerator == doctest::Approx(-0.829).epsilon(1e-3));
}

TEST_CASE("bound input validation") {
  CHECK_THROWS_AS(minimax_lower_bound({10, 10, 2, 0, 1.0, BoundVariant::Theorem}), Error);
  CHECK_THROWS_AS(minimax_lower_bound({10, 10, 2, 10, 0.0, BoundVariant::Theorem}), Error);
  CHECK_THROWS_AS(minimax_lower_bound({10, 10, 11, 10, 1.0, BoundVariant::Theorem}), Error);
}

TEST_CASE("packing log-cardinality") {
  const auto thm = packing_log_cardinality(10, 10, 2, BoundVariant::Theorem);
  CHECK(thm.exponent == doctest::Approx(9.9319488).epsilon(1e-7));
  CHECK(thm.log2_l == 9.0);
  const auto app = packing_log_cardinality(10, 10, 2, BoundVariant::AppendixL);
  CHECK(app.exponent == doctest::Approx(10.516240334).epsilon(1e-9));
  CHECK(app.log2_l == 10.0);
}

TEST_CASE("fano") {
  CHECK(fano_lower_bound(1024, 1.0 / std::sqrt(2.0)) == doctest::Approx(1.9289321881).epsilon(1e-9));
  CHECK(fano_lower_bound_log2(10.0, 1.0 / std::sqrt(2.0)) ==
        doctest::Approx(fano_lower_bound(1024, 1.0 / std::sqrt(2.0))));
  CHECK(fano_lower_bound(2, 0.0) == 0.0);
  CHECK(decoder_error_bound() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("delta-epsilon dictionary") {
  const auto de = delta_epsilon(3, 2.0);
  CHECK(de.delta == doctest::Approx(4.0 * 3 / (8.0 * 2)));
  for (double eps : {0.1, 1.0, 3.7, 123.0}) {
    for (std::size_t r : {2u, 3u, 10u}) {
      const double back = epsilon_from_delta(r, delta_epsilon(r, eps).delta);
      CHECK(std::abs(back - eps) <= 1e-12 * eps);
    }
  }
}

TEST_CASE("information sandwich") {
  const auto sw = sandwich_check(1024, 1.0, 2, 1, 1.0);
  CHECK(sw.u1_bits == doctest::Approx(1.9289321881));
  CHECK(sw.u2_nats == doctest::Approx(0.7978845608028654));
  CHECK(sw.consistent == (sw.u2_bits >= sw.u1_bits));
  // U2 is linear in n, so n* solves n·U2(1) = U1.
  CHECK(sw.n_star == doctest::Approx(sw.u1_bits / sw.u2_bits));
  const auto big = sandwich_check(1024, 1.0, 2, 100, 1.0);
  CHECK(big.consistent);
}
