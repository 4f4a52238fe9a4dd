#include "core/glm.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace lrlogit {

namespace {

const double kSqrtTwoOverPi = std::sqrt(2.0 / std::numbers::pi);

void check_shapes(const Matrix& b, const Dataset& data) {
  require(static_cast<std::size_t>(b.rows()) == data.m1 &&
              static_cast<std::size_t>(b.cols()) == data.m2,
          "coefficient matrix shape does not match dataset");
}

}  // namespace

Matrix Dataset::covariate(std::size_t i) const {
  const Vector row = design.row(static_cast<Eigen::Index>(i));
  return unflatten({row.data(), static_cast<std::size_t>(row.size())}, m1, m2);
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double log1p_exp_neg(double t) {
  if (t >= 0.0) return std::log1p(std::exp(-t));
  return -t + std::log1p(std::exp(t));
}

Dataset sample_dataset(const Matrix& b, std::size_t n, double sigma, std::uint64_t seed,
                       std::optional<std::size_t> truth_index) {
  require(n >= 1, "sample_dataset requires n >= 1");
  require(sigma > 0.0, "sample_dataset requires sigma > 0");
  require(b.rows() >= 1 && b.cols() >= 1, "sample_dataset requires a nonempty coefficient matrix");
  Dataset data;
  data.m1 = static_cast<std::size_t>(b.rows());
  data.m2 = static_cast<std::size_t>(b.cols());
  data.sigma = sigma;
  data.seed = seed;
  data.truth_index = truth_index;
  const Eigen::Index p = b.size();
  const Vector coef = flatten(b);
  data.design.resize(static_cast<Eigen::Index>(n), p);
  data.responses.resize(n);
  Vector x(p);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(seed, {tag("sample"), i});
    for (Eigen::Index k = 0; k < p; ++k) x(k) = sigma * rng.normal();
    data.design.row(static_cast<Eigen::Index>(i)) = x.transpose();
    data.responses[i] = rng.uniform() < sigmoid(x.dot(coef)) ? 1 : 0;
  }
  return data;
}

Vector linear_predictor(const Matrix& b, const Dataset& data) {
  check_shapes(b, data);
  return data.design * flatten(b);
}

ObjectiveEval neg_loglik_with_grad(const Matrix& b, const Dataset& data) {
  const Vector t = linear_predictor(b, data);
  Vector residual(t.size());
  double value = 0.0;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const double y = data.responses[static_cast<std::size_t>(i)];
    value += log1p_exp_neg(t(i)) + (1.0 - y) * t(i);
    residual(i) = sigmoid(t(i)) - y;
  }
  const Vector g = data.design.transpose() * residual;
  return {value, unflatten({g.data(), static_cast<std::size_t>(g.size())}, data.m1, data.m2)};
}

double neg_loglik(const Matrix& b, const Dataset& data) {
  const Vector t = linear_predictor(b, data);
  double value = 0.0;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const double y = data.responses[static_cast<std::size_t>(i)];
    value += log1p_exp_neg(t(i)) + (1.0 - y) * t(i);
  }
  return value;
}

Matrix grad_neg_loglik(const Matrix& b, const Dataset& data) {
  return neg_loglik_with_grad(b, data).gradient;
}

double bernoulli_kl_logits(double a, double b) {
  // p·Δ − Δ + log(1 + e^{−b}) − log(1 + e^{−a}),  Δ = a − b, p = sigmoid(a)
  if (a == b) return 0.0;
  const double delta = a - b;
  const double kl = sigmoid(a) * delta - delta + log1p_exp_neg(b) - log1p_exp_neg(a);
  return std::max(0.0, kl);
}

KLReport kl_conditional(const Matrix& b_l, const Matrix& b_lp, const Dataset& data) {
  const Vector a = linear_predictor(b_l, data);
  const Vector b = linear_predictor(b_lp, data);
  const auto n = static_cast<std::size_t>(a.size());
  KLReport rep;
  rep.n_samples_used = n;
  double sum = 0.0;
  Vector terms(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    terms(i) = bernoulli_kl_logits(a(i), b(i));
    sum += terms(i);
  }
  rep.mc_estimate = sum;
  if (n > 1) {
    const double mean = sum / static_cast<double>(n);
    const double var = (terms.array() - mean).square().sum() / static_cast<double>(n - 1);
    rep.mc_stderr = std::sqrt(static_cast<double>(n) * var);
  }
  rep.analytic_upper = kl_upper_bound(b_l, b_lp, n, data.sigma);
  return rep;
}

double kl_upper_bound(const Matrix& b_l, const Matrix& b_lp, std::size_t n, double sigma) {
  require(sigma > 0.0, "kl_upper_bound requires sigma > 0");
  require(b_l.rows() == b_lp.rows() && b_l.cols() == b_lp.cols(), "shape mismatch");
  return static_cast<double>(n) * sigma * (b_l - b_lp).norm() * kSqrtTwoOverPi;
}

HalfNormalCheck half_normal_check(const Matrix& b_l, const Matrix& b_lp, double sigma,
                                  std::size_t n_mc, std::uint64_t seed) {
  require(sigma > 0.0, "half_normal_check requires sigma > 0");
  require(n_mc >= 1, "half_normal_check requires n_mc >= 1");
  require(b_l.rows() == b_lp.rows() && b_l.cols() == b_lp.cols(), "shape mismatch");
  const Vector delta = flatten(b_l - b_lp);
  double sum = 0.0;
  for (std::size_t k = 0; k < n_mc; ++k) {
    Rng rng(seed, {tag("half-normal"), k});
    double dot = 0.0;
    for (Eigen::Index j = 0; j < delta.size(); ++j) dot += sigma * rng.normal() * delta(j);
    sum += std::abs(dot);
  }
  return {sum / static_cast<double>(n_mc), sigma * delta.norm() * kSqrtTwoOverPi};
}

InformationBound cmi_upper_bound(double epsilon, std::size_t r, std::size_t n, double sigma) {
  require(r >= 2, "cmi_upper_bound requires r >= 2");
  require(sigma > 0.0 && epsilon > 0.0, "cmi_upper_bound requires sigma, epsilon > 0");
  const double nats = static_cast<double>(n) * (2.0 / static_cast<double>(r)) *
                      kSqrtTwoOverPi * sigma * epsilon;
  return {nats, nats * std::numbers::log2e};
}

}  // namespace lrlogit
