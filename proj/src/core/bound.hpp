#pragma once

// Closed-form minimax lower-bound arithmetic: constants, the risk floor,
// packing log-cardinality, Fano's inequality and the δ–ε dictionary.

#include <cstddef>

#include "core/packing.hpp"

namespace lrlogit {

/// Which dimension term enters the exponent: the theorem's (m1+m2−2) or the
/// packing lemma's (m1+m2−1).
enum class BoundVariant { Theorem, AppendixL };

struct BoundConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

BoundConstants constants();

struct BoundInputs {
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  std::size_t r = 0;
  std::size_t n = 0;
  double sigma = 1.0;
  BoundVariant variant = BoundVariant::Theorem;
};

struct LowerBound {
  double value = 0.0;      // floor on the Frobenius-norm risk, 0 when vacuous
  double numerator = 0.0;  // [c2(c1 r(m1+m2−k) + c1(r−1)) − c3] − 1
  bool vacuous = false;
};

LowerBound minimax_lower_bound(const BoundInputs& in);

struct LogCardinality {
  double exponent = 0.0;  // before flooring
  double log2_l = 0.0;    // floored
};

LogCardinality packing_log_cardinality(std::size_t m1, std::size_t m2, std::size_t r,
                                       BoundVariant variant);

/// (1 − p_err)·log₂L − 1, in bits.
double fano_lower_bound(double l, double p_err);
/// Same with log₂L supplied directly (avoids 2^x overflow for huge L).
double fano_lower_bound_log2(double log2_l, double p_err);

struct DeltaEpsilon {
  double delta = 0.0;
  double eps_star = 0.0;
};

DeltaEpsilon delta_epsilon(std::size_t r, double epsilon);
/// Inverse map ε = √(8δ(r−1)/r).
double epsilon_from_delta(std::size_t r, double delta);

/// Decoder error bound used in the sandwich: 1/√2.
double decoder_error_bound();

struct SandwichReport {
  double u1_bits = 0.0;
  double u2_nats = 0.0;
  double u2_bits = 0.0;
  bool consistent = false;
  /// Sample count at which the CMI upper bound meets the Fano lower bound.
  double n_star = 0.0;
};

SandwichReport sandwich_check(const PackingSet& packing, std::size_t n, double sigma);
SandwichReport sandwich_check(std::size_t packing_size, double epsilon, std::size_t r,
                              std::size_t n, double sigma);

}  // namespace lrlogit
