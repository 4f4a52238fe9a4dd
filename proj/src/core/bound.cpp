#include "core/bound.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/glm.hpp"

namespace lrlogit {

namespace {

double dimension_term(std::size_t m1, std::size_t m2, BoundVariant variant) {
  const double sum = static_cast<double>(m1 + m2);
  return variant == BoundVariant::Theorem ? sum - 2.0 : sum - 1.0;
}

}  // namespace

BoundConstants constants() {
  const double sqrt2 = std::numbers::sqrt2;
  return {
      (1.0 - 1.0 / 10.0) * (1.0 - 1.0 / 10.0),
      std::numbers::log2e * (sqrt2 - 1.0) / (4.0 * sqrt2),
      (3.0 * (sqrt2 - 1.0) / std::sqrt(8.0)) * std::log2(1.5),
  };
}

LowerBound minimax_lower_bound(const BoundInputs& in) {
  require(in.m1 >= 2 && in.m2 >= 2, "bound requires m1, m2 >= 2");
  require(in.r >= 2 && in.r <= std::min(in.m1, in.m2), "bound requires 2 <= r <= min(m1, m2)");
  require(in.n >= 1, "bound requires n >= 1");
  require(in.sigma > 0.0, "bound requires sigma > 0");
  const BoundConstants c = constants();
  const auto r = static_cast<double>(in.r);
  LowerBound out;
  out.numerator =
      (c.c2 * (c.c1 * r * dimension_term(in.m1, in.m2, in.variant) + c.c1 * (r - 1.0)) - c.c3) -
      1.0;
  const double denominator = 8.0 * static_cast<double>(in.n) * in.sigma *
                             std::sqrt(2.0 / std::numbers::pi);
  if (out.numerator <= 0.0) {
    out.vacuous = true;
    out.value = 0.0;
  } else {
    out.value = out.numerator / denominator;
  }
  return out;
}

LogCardinality packing_log_cardinality(std::size_t m1, std::size_t m2, std::size_t r,
                                       BoundVariant variant) {
  require(m1 >= 2 && m2 >= 2 && r >= 2, "packing_log_cardinality requires m1, m2, r >= 2");
  const double c1 = constants().c1;
  const auto dr = static_cast<double>(r);
  LogCardinality out;
  out.exponent = std::numbers::log2e / 4.0 *
                     (c1 * dr * dimension_term(m1, m2, variant) + c1 * (dr - 1.0)) -
                 1.5 * std::log2(1.5);
  out.log2_l = std::floor(out.exponent);
  return out;
}

double fano_lower_bound_log2(double log2_l, double p_err) {
  require(log2_l >= 1.0, "Fano bound requires L >= 2");
  require(p_err >= 0.0 && p_err < 1.0, "Fano bound requires 0 <= p_err < 1");
  return (1.0 - p_err) * log2_l - 1.0;
}

double fano_lower_bound(double l, double p_err) {
  require(l >= 2.0, "Fano bound requires L >= 2");
  return fano_lower_bound_log2(std::log2(l), p_err);
}

DeltaEpsilon delta_epsilon(std::size_t r, double epsilon) {
  require(r >= 2, "delta_epsilon requires r >= 2");
  require(epsilon > 0.0, "delta_epsilon requires epsilon > 0");
  const auto dr = static_cast<double>(r);
  return {epsilon * epsilon * dr / (8.0 * (dr - 1.0)),
          std::sqrt(dr / (8.0 * (dr - 1.0))) * epsilon};
}

double epsilon_from_delta(std::size_t r, double delta) {
  require(r >= 2 && delta > 0.0, "epsilon_from_delta requires r >= 2, delta > 0");
  const auto dr = static_cast<double>(r);
  return std::sqrt(8.0 * delta * (dr - 1.0) / dr);
}

double decoder_error_bound() { return 1.0 / std::numbers::sqrt2; }

SandwichReport sandwich_check(std::size_t packing_size, double epsilon, std::size_t r,
                              std::size_t n, double sigma) {
  require(n >= 1, "sandwich_check requires n >= 1");
  SandwichReport out;
  out.u1_bits = fano_lower_bound(static_cast<double>(packing_size), decoder_error_bound());
  const InformationBound u2 = cmi_upper_bound(epsilon, r, n, sigma);
  out.u2_nats = u2.nats;
  out.u2_bits = u2.bits;
  out.consistent = out.u1_bits <= out.u2_bits;
  const double bits_per_sample = cmi_upper_bound(epsilon, r, 1, sigma).bits;
  out.n_star = out.u1_bits / bits_per_sample;
  return out;
}

SandwichReport sandwich_check(const PackingSet& packing, std::size_t n, double sigma) {
  return sandwich_check(packing.size(), packing.epsilon, packing.r, n, sigma);
}

}  // namespace lrlogit
