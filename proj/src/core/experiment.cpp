#include "core/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace lrlogit {

namespace {

std::string fingerprint(const ExperimentConfig& cfg) {
  Json doc = config_to_json(cfg);
  doc.erase("csv_path");
  doc.erase("summary_path");
  return doc.dump();
}

std::filesystem::path state_path(const std::string& csv_path) {
  return std::filesystem::path(csv_path + ".state.json");
}

void sort_rows(std::vector<RiskRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const RiskRow& a, const RiskRow& b) {
    return std::tie(a.n, a.method) < std::tie(b.n, b.method);
  });
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "invalid number in CSV: '" + s + "'");
  }
  if (used != s.size()) fail(ErrorKind::Parse, "invalid number in CSV: '" + s + "'");
  return v;
}

}  // namespace

const char* method_name(FitMethod m) {
  switch (m) {
    case FitMethod::Full: return "full";
    case FitMethod::LowRank: return "lowrank";
    case FitMethod::Oracle: return "oracle";
  }
  return "unknown";
}

FitMethod method_from_name(const std::string& name) {
  if (name == "full") return FitMethod::Full;
  if (name == "lowrank") return FitMethod::LowRank;
  if (name == "oracle") return FitMethod::Oracle;
  fail(ErrorKind::InvalidArgument, "unknown method '" + name + "'");
}

void validate_config(const ExperimentConfig& cfg) {
  require(cfg.m1 >= 2 && cfg.m2 >= 2, "m1, m2 must be at least 2");
  require(cfg.r >= 2 && cfg.r <= std::min(cfg.m1, cfg.m2), "r must satisfy 2 <= r <= min(m1, m2)");
  require(cfg.sigma > 0.0, "sigma must be positive");
  require(!cfg.n_grid.empty(), "n_grid must not be empty");
  require(cfg.n_grid.front() >= 1, "n_grid entries must be positive");
  for (std::size_t i = 1; i < cfg.n_grid.size(); ++i)
    require(cfg.n_grid[i] > cfg.n_grid[i - 1], "n_grid must be strictly increasing");
  require(cfg.trials_per_point >= 2, "trials_per_point must be at least 2");
  require(!cfg.methods.empty(), "methods must not be empty");
  std::set<FitMethod> seen(cfg.methods.begin(), cfg.methods.end());
  require(seen.size() == cfg.methods.size(), "methods must be distinct");
  require(cfg.kappa >= 0.0, "kappa must be nonnegative");
  require(cfg.max_iters >= 1 && cfg.tol_grad > 0.0, "invalid fit options");
  const EpsilonRange range = epsilon_range(cfg.d, cfg.r);
  if (cfg.epsilon) require(range.contains(*cfg.epsilon), "epsilon outside admissible range");
}

ExperimentConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) fail(ErrorKind::Parse, "config must be a JSON object");
  ExperimentConfig cfg;
  try {
    if (doc.contains("m1")) cfg.m1 = doc["m1"].get<std::size_t>();
    if (doc.contains("m2")) cfg.m2 = doc["m2"].get<std::size_t>();
    if (doc.contains("r")) cfg.r = doc["r"].get<std::size_t>();
    if (doc.contains("d")) cfg.d = doc["d"].get<double>();
    if (doc.contains("epsilon")) {
      const Json& e = doc["epsilon"];
      if (e.is_string()) {
        if (e.get<std::string>() != "auto") fail(ErrorKind::InvalidArgument, "epsilon must be a number or \"auto\"");
        cfg.epsilon.reset();
      } else {
        cfg.epsilon = e.get<double>();
      }
    }
    if (doc.contains("sigma")) cfg.sigma = doc["sigma"].get<double>();
    if (doc.contains("n_grid")) cfg.n_grid = doc["n_grid"].get<std::vector<std::size_t>>();
    if (doc.contains("trials_per_point")) cfg.trials_per_point = doc["trials_per_point"].get<std::size_t>();
    if (doc.contains("methods")) {
      cfg.methods.clear();
      for (const auto& m : doc["methods"]) cfg.methods.push_back(method_from_name(m.get<std::string>()));
    }
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("kappa")) cfg.kappa = doc["kappa"].get<double>();
    if (doc.contains("variant")) {
      const auto v = doc["variant"].get<std::string>();
      if (v == "theorem") cfg.variant = BoundVariant::Theorem;
      else if (v == "appendix") cfg.variant = BoundVariant::AppendixL;
      else fail(ErrorKind::InvalidArgument, "variant must be theorem or appendix");
    }
    if (doc.contains("max_iters")) cfg.max_iters = doc["max_iters"].get<std::size_t>();
    if (doc.contains("tol_grad")) cfg.tol_grad = doc["tol_grad"].get<double>();
    if (doc.contains("csv_path")) cfg.csv_path = doc["csv_path"].get<std::string>();
    if (doc.contains("summary_path")) cfg.summary_path = doc["summary_path"].get<std::string>();
  } catch (const Json::exception& e) {
    fail(ErrorKind::Parse, std::string("config: ") + e.what());
  }
  return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json doc;
  doc["m1"] = cfg.m1;
  doc["m2"] = cfg.m2;
  doc["r"] = cfg.r;
  doc["d"] = cfg.d;
  doc["epsilon"] = cfg.epsilon ? Json(*cfg.epsilon) : Json("auto");
  doc["sigma"] = cfg.sigma;
  doc["n_grid"] = cfg.n_grid;
  doc["trials_per_point"] = cfg.trials_per_point;
  Json methods = Json::array();
  for (auto m : cfg.methods) methods.push_back(method_name(m));
  doc["methods"] = std::move(methods);
  doc["seed"] = cfg.seed;
  doc["kappa"] = cfg.kappa;
  doc["variant"] = cfg.variant == BoundVariant::Theorem ? "theorem" : "appendix";
  doc["max_iters"] = cfg.max_iters;
  doc["tol_grad"] = cfg.tol_grad;
  doc["csv_path"] = cfg.csv_path;
  doc["summary_path"] = cfg.summary_path;
  return doc;
}

std::string rows_to_csv(const std::vector<RiskRow>& rows) {
  std::string out = std::string(kRiskCsvHeader) + "\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n) + "," + row.method + "," + format_double(row.mean_sq_frob) +
           "," + format_double(row.median) + "," + format_double(row.std_error) + "," +
           format_double(row.bound) + "," + format_double(row.decoder_err) + "\n";
  }
  return out;
}

std::vector<RiskRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kRiskCsvHeader)
    fail(ErrorKind::Parse, "risk CSV header mismatch");
  std::vector<RiskRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) fail(ErrorKind::Parse, "risk CSV row has wrong column count");
    RiskRow row;
    row.n = static_cast<std::size_t>(parse_number(cells[0]));
    row.method = cells[1];
    row.mean_sq_frob = parse_number(cells[2]);
    row.median = parse_number(cells[3]);
    row.std_error = parse_number(cells[4]);
    row.bound = parse_number(cells[5]);
    row.decoder_err = parse_number(cells[6]);
    rows.push_back(std::move(row));
  }
  return rows;
}

PackingSet experiment_packing(const ExperimentConfig& cfg) {
  PackingParams params;
  params.m1 = cfg.m1;
  params.m2 = cfg.m2;
  params.r = cfg.r;
  params.d = cfg.d;
  params.epsilon = cfg.epsilon;
  params.seed = cfg.seed;
  params.kappa = cfg.kappa;
  params.require_certified = false;
  return assemble_packing(params);
}

std::vector<RiskRow> run_point(const ExperimentConfig& cfg, const PackingSet& packing,
                               const std::vector<Matrix>& elements, std::size_t n) {
  const std::size_t trials = cfg.trials_per_point;
  const std::size_t methods = cfg.methods.size();
  std::vector<double> losses(trials * methods);
  std::vector<std::uint8_t> wrong(trials * methods);

  FitOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.tol_grad = cfg.tol_grad;

  parallel_for(trials, [&](std::size_t t) {
    Rng pick(cfg.seed, {tag("truth"), n, t});
    const std::size_t l = pick.below(elements.size());
    const Dataset data =
        sample_dataset(elements[l], n, cfg.sigma, derive_seed(cfg.seed, {tag("data"), n, t}), l);
    for (std::size_t k = 0; k < methods; ++k) {
      const Estimator est{cfg.methods[k], cfg.r, opts};
      const Matrix b_hat = run_estimator(est, data, elements[l]).b_hat;
      losses[k * trials + t] = (b_hat - elements[l]).squaredNorm();
      wrong[k * trials + t] = min_distance_decode(b_hat, elements) != l ? 1 : 0;
    }
  });

  const double bound =
      minimax_lower_bound({cfg.m1, cfg.m2, cfg.r, n, cfg.sigma, cfg.variant}).value;
  std::vector<RiskRow> rows;
  for (std::size_t k = 0; k < methods; ++k) {
    const RiskSummary risk = summarize_risk(
        {losses.begin() + static_cast<std::ptrdiff_t>(k * trials),
         losses.begin() + static_cast<std::ptrdiff_t>((k + 1) * trials)});
    std::size_t errors = 0;
    for (std::size_t t = 0; t < trials; ++t) errors += wrong[k * trials + t];
    rows.push_back({n, method_name(cfg.methods[k]), risk.mean_sq_frob, risk.median,
                    risk.std_error, bound,
                    static_cast<double>(errors) / static_cast<double>(trials)});
  }
  (void)packing;
  sort_rows(rows);
  return rows;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const PackingSet packing = experiment_packing(cfg);
  const std::vector<Matrix> elements = dense_elements(packing);

  ExperimentResult result;
  std::map<std::size_t, std::vector<RiskRow>> done;
  const std::string print = fingerprint(cfg);

  if (!cfg.csv_path.empty() && std::filesystem::exists(cfg.csv_path) &&
      std::filesystem::exists(state_path(cfg.csv_path))) {
    try {
      const Json state = parse_json(read_text_file(state_path(cfg.csv_path)));
      if (state.value("fingerprint", std::string()) == print) {
        for (auto& row : rows_from_csv(read_text_file(cfg.csv_path))) done[row.n].push_back(row);
        for (auto it = done.begin(); it != done.end();) {
          const bool known = std::find(cfg.n_grid.begin(), cfg.n_grid.end(), it->first) != cfg.n_grid.end();
          it = (known && it->second.size() == cfg.methods.size()) ? std::next(it) : done.erase(it);
        }
        result.resumed_points = done.size();
      }
    } catch (const Error&) {
      done.clear();  // unreadable partial state: start over
      result.resumed_points = 0;
    }
  }

  auto flush = [&] {
    if (cfg.csv_path.empty()) return;
    std::vector<RiskRow> rows;
    for (const auto& [n, point] : done) rows.insert(rows.end(), point.begin(), point.end());
    sort_rows(rows);
    write_text_file(cfg.csv_path, rows_to_csv(rows));
    write_text_file(state_path(cfg.csv_path), dump_json(Json{{"fingerprint", print}}));
  };

  for (std::size_t n : cfg.n_grid) {
    if (done.count(n) != 0) continue;
    done[n] = run_point(cfg, packing, elements, n);
    flush();
  }

  for (const auto& [n, point] : done) result.rows.insert(result.rows.end(), point.begin(), point.end());
  sort_rows(result.rows);

  Json summary;
  summary["config"] = config_to_json(cfg);
  summary["epsilon"] = packing.epsilon;
  summary["packing"] = {{"size", packing.size()},
                        {"certified", packing.report.passed},
                        {"min_pairwise_sq", packing.min_pairwise_sq},
                        {"max_pairwise_sq", packing.max_pairwise_sq},
                        {"lower_threshold", packing.report.lower_threshold},
                        {"upper_threshold", packing.report.upper_threshold},
                        {"failures", packing.report.failures}};
  const LogCardinality logl = packing_log_cardinality(cfg.m1, cfg.m2, cfg.r, cfg.variant);
  summary["log2_L"] = logl.log2_l;
  Json points = Json::array();
  for (std::size_t n : cfg.n_grid) {
    const LowerBound lb = minimax_lower_bound({cfg.m1, cfg.m2, cfg.r, n, cfg.sigma, cfg.variant});
    const SandwichReport sw = sandwich_check(packing, n, cfg.sigma);
    points.push_back({{"n", n},
                      {"bound", lb.value},
                      {"vacuous", lb.vacuous},
                      {"sandwich",
                       {{"u1_bits", sw.u1_bits},
                        {"u2_nats", sw.u2_nats},
                        {"u2_bits", sw.u2_bits},
                        {"consistent", sw.consistent},
                        {"n_star", sw.n_star}}}});
  }
  summary["points"] = std::move(points);
  Json rows = Json::array();
  for (const auto& row : result.rows)
    rows.push_back({{"n", row.n},
                    {"method", row.method},
                    {"mean_sq_frob", row.mean_sq_frob},
                    {"median", row.median},
                    {"stderr", row.std_error},
                    {"bound", row.bound},
                    {"decoder_err", row.decoder_err}});
  summary["rows"] = std::move(rows);
  result.summary = std::move(summary);

  if (!cfg.summary_path.empty()) write_text_file(cfg.summary_path, dump_json(result.summary));
  if (!cfg.csv_path.empty() && result.resumed_points == cfg.n_grid.size()) flush();
  return result;
}

}  // namespace lrlogit
