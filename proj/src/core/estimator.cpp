#include "core/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace lrlogit {

namespace {

// Objective, residual and gradient on flattened coefficients.
struct Evaluation {
  double value = 0.0;
  Vector residual;  // sigmoid(t_i) − y_i
};

Evaluation evaluate(const Vector& coef, const Dataset& data) {
  const Vector t = data.design * coef;
  Evaluation ev;
  ev.residual.resize(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const double y = data.responses[static_cast<std::size_t>(i)];
    ev.value += log1p_exp_neg(t(i)) + (1.0 - y) * t(i);
    ev.residual(i) = sigmoid(t(i)) - y;
  }
  return ev;
}

Matrix initial_point(const InitRule& init, std::size_t m1, std::size_t m2) {
  const auto rows = static_cast<Eigen::Index>(m1);
  const auto cols = static_cast<Eigen::Index>(m2);
  if (const auto* g = std::get_if<GaussianInit>(&init)) {
    Rng rng(g->seed, {tag("init")});
    Matrix b(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) b(r, c) = g->scale * rng.normal();
    return b;
  }
  if (const auto* m = std::get_if<MatrixInit>(&init)) {
    require(m->value.rows() == rows && m->value.cols() == cols,
            "initial matrix shape does not match dataset");
    return m->value;
  }
  return Matrix::Zero(rows, cols);
}

void validate(const Dataset& data, const FitOptions& opts) {
  require(data.n() >= 1, "fit requires n >= 1");
  require(opts.max_iters >= 1, "max_iters must be at least 1");
  require(opts.tol_grad > 0.0, "tol_grad must be positive");
  if (const auto* bt = std::get_if<Backtracking>(&opts.step_rule)) {
    require(bt->beta > 0.0 && bt->beta < 1.0, "backtracking beta must lie in (0, 1)");
    require(bt->c > 0.0 && bt->c < 1.0, "backtracking c must lie in (0, 1)");
    require(bt->initial > 0.0, "initial step must be positive");
  } else {
    require(std::get<FixedStep>(opts.step_rule).eta > 0.0, "fixed step must be positive");
  }
}

// `project` == nullptr means unconstrained.
FitResult descend(const Dataset& data, const FitOptions& opts,
                  const std::function<Matrix(const Matrix&)>* project) {
  validate(data, opts);
  const std::size_t m1 = data.m1, m2 = data.m2;
  auto to_matrix = [&](const Vector& v) {
    return unflatten({v.data(), static_cast<std::size_t>(v.size())}, m1, m2);
  };
  auto apply_projection = [&](Vector v) {
    if (project == nullptr) return v;
    return flatten((*project)(to_matrix(v)));
  };

  Vector coef = apply_projection(flatten(initial_point(opts.init, m1, m2)));
  Evaluation cur = evaluate(coef, data);
  Vector grad = data.design.transpose() * cur.residual;

  FitResult out;
  out.objective_trace.push_back(cur.value);

  const auto* backtracking = std::get_if<Backtracking>(&opts.step_rule);
  double eta = backtracking ? backtracking->initial : std::get<FixedStep>(opts.step_rule).eta;

  for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
    if (project == nullptr) {
      out.final_grad_norm = grad.norm();
      if (out.final_grad_norm <= opts.tol_grad) {
        out.converged = true;
        break;
      }
    }

    Vector next;
    Evaluation next_eval;
    double step_sq = 0.0;
    bool accepted = false;
    for (;;) {
      next = apply_projection(coef - eta * grad);
      step_sq = (next - coef).squaredNorm();
      next_eval = evaluate(next, data);
      if (!backtracking) {
        accepted = true;
        break;
      }
      if (next_eval.value <= cur.value - (backtracking->c / eta) * step_sq) {
        accepted = true;
        break;
      }
      eta *= backtracking->beta;
      if (eta < 1e-300) break;
    }

    if (project != nullptr) {
      out.final_grad_norm = std::sqrt(step_sq) / eta;
      if (out.final_grad_norm <= opts.tol_grad) {
        out.converged = true;
        break;
      }
    }
    if (!accepted) break;  // step underflow: no descent direction left

    coef = std::move(next);
    cur = std::move(next_eval);
    grad = data.design.transpose() * cur.residual;
    out.objective_trace.push_back(cur.value);
    out.iterations = iter + 1;
    if (backtracking) eta /= backtracking->beta;
  }

  if (!out.converged && project == nullptr) {
    out.final_grad_norm = grad.norm();
    out.converged = out.final_grad_norm <= opts.tol_grad;
  }
  out.b_hat = to_matrix(coef);
  return out;
}

}  // namespace

FitResult fit_full(const Dataset& data, const FitOptions& opts) {
  return descend(data, opts, nullptr);
}

FitResult fit_lowrank(const Dataset& data, std::size_t r, const FitOptions& opts) {
  require(r >= 1 && r <= std::min(data.m1, data.m2),
          "fit_lowrank requires 1 <= r <= min(m1, m2)");
  if (r == std::min(data.m1, data.m2)) return descend(data, opts, nullptr);
  const std::function<Matrix(const Matrix&)> project = [r](const Matrix& m) {
    return truncate_rank(m, r);
  };
  return descend(data, opts, &project);
}

FitResult run_estimator(const Estimator& est, const Dataset& data, const Matrix& truth) {
  switch (est.method) {
    case FitMethod::Full:
      return fit_full(data, est.options);
    case FitMethod::LowRank:
      return fit_lowrank(data, est.rank, est.options);
    case FitMethod::Oracle: {
      FitResult out;
      out.b_hat = truth;
      out.converged = true;
      return out;
    }
  }
  fail(ErrorKind::InvalidArgument, "unknown fit method");
}

std::size_t min_distance_decode(const Matrix& b_hat, const std::vector<Matrix>& elements) {
  require(!elements.empty(), "min_distance_decode requires a nonempty packing");
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < elements.size(); ++l) {
    require(elements[l].rows() == b_hat.rows() && elements[l].cols() == b_hat.cols(),
            "estimate shape does not match packing");
    const double dist = (b_hat - elements[l]).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = l;
    }
  }
  return best;
}

std::vector<Matrix> dense_elements(const PackingSet& packing) {
  std::vector<Matrix> out;
  out.reserve(packing.size());
  for (const auto& e : packing.elements) out.push_back(e.factors.dense());
  return out;
}

std::size_t min_distance_decode(const Matrix& b_hat, const PackingSet& packing) {
  return min_distance_decode(b_hat, dense_elements(packing));
}

double recovery_threshold_sq(const PackingSet& packing, RecoveryRule rule) {
  if (rule == RecoveryRule::Geometric) return packing.min_pairwise_sq / 4.0;
  const auto r = static_cast<double>(packing.r);
  const double delta = packing.kappa * packing.epsilon * packing.epsilon * r / (8.0 * (r - 1.0));
  return std::sqrt(2.0 * delta);
}

bool recovery_certified(const Matrix& b_hat, std::size_t l, const PackingSet& packing,
                        RecoveryRule rule) {
  return (b_hat - packing.dense(l)).squaredNorm() < recovery_threshold_sq(packing, rule);
}

DecoderErrorRate decoder_error_rate(const PackingSet& packing, std::size_t n, double sigma,
                                    std::size_t trials, const Estimator& est,
                                    std::uint64_t seed) {
  require(trials >= 1, "decoder_error_rate requires trials >= 1");
  require(!packing.elements.empty(), "decoder_error_rate requires a nonempty packing");
  const std::vector<Matrix> elements = dense_elements(packing);
  std::vector<std::size_t> truth(trials), decoded(trials);
  parallel_for(trials, [&](std::size_t t) {
    Rng rng(seed, {tag("decoder-trial"), t});
    const std::size_t l = rng.below(elements.size());
    const Dataset data =
        sample_dataset(elements[l], n, sigma, derive_seed(seed, {tag("decoder-data"), t}), l);
    truth[t] = l;
    decoded[t] = min_distance_decode(run_estimator(est, data, elements[l]).b_hat, elements);
  });
  DecoderErrorRate out;
  out.trials = trials;
  out.per_index_trials.assign(elements.size(), 0);
  out.per_index_errors.assign(elements.size(), 0);
  for (std::size_t t = 0; t < trials; ++t) {
    ++out.per_index_trials[truth[t]];
    if (decoded[t] != truth[t]) {
      ++out.errors;
      ++out.per_index_errors[truth[t]];
    }
  }
  out.error_rate = static_cast<double>(out.errors) / static_cast<double>(trials);
  return out;
}

RiskSummary summarize_risk(std::vector<double> losses) {
  require(!losses.empty(), "risk summary needs at least one trial");
  RiskSummary out;
  const auto count = static_cast<double>(losses.size());
  double sum = 0.0;
  for (double v : losses) sum += v;
  out.mean_sq_frob = sum / count;
  if (losses.size() > 1) {
    double ss = 0.0;
    for (double v : losses) ss += (v - out.mean_sq_frob) * (v - out.mean_sq_frob);
    out.std_error = std::sqrt(ss / (count - 1.0) / count);
  }
  std::vector<double> sorted = losses;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  out.median = sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  out.per_trial = std::move(losses);
  return out;
}

RiskSummary empirical_risk(const Matrix& b_true, std::size_t n, double sigma,
                           std::size_t trials, const Estimator& est, std::uint64_t seed) {
  require(trials >= 2, "empirical_risk requires trials >= 2");
  std::vector<double> losses(trials);
  parallel_for(trials, [&](std::size_t t) {
    const Dataset data = sample_dataset(b_true, n, sigma, derive_seed(seed, {tag("risk-data"), t}));
    losses[t] = (run_estimator(est, data, b_true).b_hat - b_true).squaredNorm();
  });
  return summarize_risk(std::move(losses));
}

}  // namespace lrlogit
