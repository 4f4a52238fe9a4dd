#pragma once

// Matrix-variate logistic model with zero intercept:
//   P(y = 1 | X) = sigmoid(⟨B, X⟩),  vec(X) ~ N(0, σ² I).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "core/linalg.hpp"

namespace lrlogit {

struct Dataset {
  std::size_t m1 = 0;
  std::size_t m2 = 0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> truth_index;
  Matrix design;                        // n × (m1·m2); row i is X_i flattened row-major
  std::vector<std::uint8_t> responses;  // n bits

  std::size_t n() const { return responses.size(); }
  Matrix covariate(std::size_t i) const;
};

double sigmoid(double t);
/// log(1 + e^{−t}) without overflow.
double log1p_exp_neg(double t);

Dataset sample_dataset(const Matrix& b, std::size_t n, double sigma, std::uint64_t seed,
                       std::optional<std::size_t> truth_index = std::nullopt);

/// ⟨B, X_i⟩ for every sample.
Vector linear_predictor(const Matrix& b, const Dataset& data);

double neg_loglik(const Matrix& b, const Dataset& data);
Matrix grad_neg_loglik(const Matrix& b, const Dataset& data);

struct ObjectiveEval {
  double value = 0.0;
  Matrix gradient;
};
ObjectiveEval neg_loglik_with_grad(const Matrix& b, const Dataset& data);

/// KL(Bern(sigmoid(a)) ‖ Bern(sigmoid(b))), exact and nonnegative.
double bernoulli_kl_logits(double a, double b);

struct KLReport {
  double mc_estimate = 0.0;  // nats, summed over the n samples
  double mc_stderr = 0.0;
  double analytic_upper = 0.0;
  std::size_t n_samples_used = 0;
};

/// Monte-Carlo estimate of E_X KL(f_l(y|X) ‖ f_l'(y|X)) over the dataset's
/// covariates.
KLReport kl_conditional(const Matrix& b_l, const Matrix& b_lp, const Dataset& data);

/// n·σ·‖B_l − B_l'‖_F·√(2/π).
double kl_upper_bound(const Matrix& b_l, const Matrix& b_lp, std::size_t n, double sigma);

struct HalfNormalCheck {
  double empirical_mean = 0.0;
  double analytic_mean = 0.0;
};

/// Mean of |⟨X, B_l − B_l'⟩| over n_mc fresh covariates against σ‖ΔB‖_F√(2/π).
HalfNormalCheck half_normal_check(const Matrix& b_l, const Matrix& b_lp, double sigma,
                                  std::size_t n_mc, std::uint64_t seed);

struct InformationBound {
  double nats = 0.0;
  double bits = 0.0;
};

/// Upper bound n·(2/r)·√(2/π)·σ·ε on the conditional mutual information.
InformationBound cmi_upper_bound(double epsilon, std::size_t r, std::size_t n, double sigma);

}  // namespace lrlogit
