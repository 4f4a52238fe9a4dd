#pragma once

// Full-matrix and rank-constrained maximum-likelihood estimators, the
// minimum-distance decoder, and Monte-Carlo risk measurement.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "core/glm.hpp"
#include "core/packing.hpp"

namespace lrlogit {

struct FixedStep {
  double eta = 1e-3;
};

/// Sufficient decrease f(B⁺) ≤ f(B) − (c/η)·‖B⁺ − B‖²; for an unconstrained
/// step this is the Armijo rule. The trial step grows by 1/β after every
/// accepted iteration.
struct Backtracking {
  double beta = 0.5;
  double c = 1e-4;
  double initial = 1.0;
};

using StepRule = std::variant<Backtracking, FixedStep>;

struct ZeroInit {};
struct GaussianInit {
  double scale = 0.01;
  std::uint64_t seed = 0;
};
struct MatrixInit {
  Matrix value;
};
using InitRule = std::variant<ZeroInit, GaussianInit, MatrixInit>;

struct FitOptions {
  std::size_t max_iters = 1000;
  StepRule step_rule = Backtracking{};
  double tol_grad = 1e-4;
  std::optional<std::size_t> rank;
  InitRule init = ZeroInit{};
};

struct FitResult {
  Matrix b_hat;
  std::size_t iterations = 0;
  double final_grad_norm = 0.0;
  bool converged = false;
  std::vector<double> objective_trace;
};

FitResult fit_full(const Dataset& data, const FitOptions& opts);

/// Projected gradient descent onto rank ≤ r matrices. Convergence is judged
/// on the gradient mapping ‖B − P(B − η∇f)‖/η.
FitResult fit_lowrank(const Dataset& data, std::size_t r, const FitOptions& opts);

enum class FitMethod { Full, LowRank, Oracle };

struct Estimator {
  FitMethod method = FitMethod::Full;
  std::size_t rank = 0;  // LowRank only
  FitOptions options;
};

/// Runs the configured estimator; Oracle returns `truth` unchanged.
FitResult run_estimator(const Estimator& est, const Dataset& data, const Matrix& truth);

/// argmin_l ‖B̂ − B_l‖_F², ties to the smallest index.
std::size_t min_distance_decode(const Matrix& b_hat, const std::vector<Matrix>& elements);
std::size_t min_distance_decode(const Matrix& b_hat, const PackingSet& packing);

std::vector<Matrix> dense_elements(const PackingSet& packing);

enum class RecoveryRule {
  Geometric,  // ‖B̂ − B_l‖_F < ½·min pairwise distance
  Literal,    // ‖B̂ − B_l‖_F² < √(2δ), with 8δ = κ·ε²r/(r−1)
};

/// Threshold on ‖B̂ − B_l‖_F² below which recovery of l is certified.
double recovery_threshold_sq(const PackingSet& packing, RecoveryRule rule);
bool recovery_certified(const Matrix& b_hat, std::size_t l, const PackingSet& packing,
                        RecoveryRule rule);

struct DecoderErrorRate {
  double error_rate = 0.0;
  std::size_t errors = 0;
  std::size_t trials = 0;
  std::vector<std::size_t> per_index_trials;
  std::vector<std::size_t> per_index_errors;
};

DecoderErrorRate decoder_error_rate(const PackingSet& packing, std::size_t n, double sigma,
                                    std::size_t trials, const Estimator& est,
                                    std::uint64_t seed);

struct RiskSummary {
  double mean_sq_frob = 0.0;
  double median = 0.0;
  double std_error = 0.0;
  std::vector<double> per_trial;
};

RiskSummary summarize_risk(std::vector<double> losses);

RiskSummary empirical_risk(const Matrix& b_true, std::size_t n, double sigma,
                           std::size_t trials, const Estimator& est, std::uint64_t seed);

}  // namespace lrlogit
