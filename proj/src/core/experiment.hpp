#pragma once

// Risk-versus-sample-size sweeps: truths drawn uniformly from a packing,
// full and low-rank fits per trial, minimum-distance decoding, and the
// lower-bound floor at every n.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/bound.hpp"
#include "core/estimator.hpp"
#include "core/serialize.hpp"

namespace lrlogit {

struct ExperimentConfig {
  std::size_t m1 = 12;
  std::size_t m2 = 12;
  std::size_t r = 3;
  double d = 10.0;
  std::optional<double> epsilon;  // empty = "auto"
  double sigma = 1.0;
  std::vector<std::size_t> n_grid{500, 1000, 2000, 4000, 8000};
  std::size_t trials_per_point = 20;
  std::vector<FitMethod> methods{FitMethod::Full, FitMethod::LowRank};
  std::uint64_t seed = 0;
  double kappa = kDefaultKappa;
  BoundVariant variant = BoundVariant::Theorem;
  std::size_t max_iters = 1000;
  double tol_grad = 1e-3;
  std::string csv_path;      // empty = do not write
  std::string summary_path;  // empty = do not write
};

void validate_config(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const Json& doc);
Json config_to_json(const ExperimentConfig& cfg);

const char* method_name(FitMethod m);
FitMethod method_from_name(const std::string& name);

struct RiskRow {
  std::size_t n = 0;
  std::string method;
  double mean_sq_frob = 0.0;
  double median = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  double decoder_err = 0.0;
};

inline constexpr const char* kRiskCsvHeader =
    "n,method,mean_sq_frob,median,stderr,bound,decoder_err";

std::string rows_to_csv(const std::vector<RiskRow>& rows);
std::vector<RiskRow> rows_from_csv(const std::string& text);

struct ExperimentResult {
  std::vector<RiskRow> rows;  // sorted by (n, method)
  Json summary;
  std::size_t resumed_points = 0;  // n values restored from a previous run
};

/// Builds the packing used to draw truths (certification is reported, not
/// required).
PackingSet experiment_packing(const ExperimentConfig& cfg);

/// Rows for a single n (one per method), independent of any other n.
std::vector<RiskRow> run_point(const ExperimentConfig& cfg, const PackingSet& packing,
                               const std::vector<Matrix>& elements, std::size_t n);

/// Runs the sweep. When csv_path is set, rows are flushed after each n and
/// an existing CSV from an identically configured run is resumed.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace lrlogit
