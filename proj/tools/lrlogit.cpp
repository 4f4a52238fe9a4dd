// lrlogit command-line front end over the C API.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrlogit/lrlogit.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConstruction = 3;
constexpr int kExitIo = 4;
constexpr int kExitInternal = 1;

struct Failure {
  int code;
  std::string kind;
  std::string message;
  Json details;
};

int exit_code_for(lrl_status s) {
  switch (s) {
    case LRL_OK: return kExitOk;
    case LRL_INVALID_ARGUMENT: return kExitUsage;
    case LRL_CARDINALITY_TOO_LARGE:
    case LRL_DEGENERATE_CARDINALITY:
    case LRL_EMPTY_RANGE:
    case LRL_CONSTRUCTION_FAILED:
    case LRL_RANK_DEFICIENT:
    case LRL_VERIFICATION_FAILED: return kExitConstruction;
    case LRL_IO_ERROR:
    case LRL_PARSE_ERROR: return kExitIo;
    case LRL_INTERNAL_ERROR: return kExitInternal;
  }
  return kExitInternal;
}

void check(lrl_status s) {
  if (s != LRL_OK) throw Failure{exit_code_for(s), lrl_status_name(s), lrl_last_error(), nullptr};
}

[[noreturn]] void usage_error(const std::string& message) {
  throw Failure{kExitUsage, "InvalidArgument", message, nullptr};
}

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s == nullptr ? std::string() : std::string(s);
  lrl_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitIo, "IoError", "cannot open '" + path + "'", nullptr};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{kExitIo, "IoError", "cannot write '" + path + "'", nullptr};
  out << contents;
  if (!out) throw Failure{kExitIo, "IoError", "write failed for '" + path + "'", nullptr};
}

Json parse(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Failure{kExitIo, "ParseError", what + ": " + e.what(), nullptr};
  }
}

// Single JSON document to --out or stdout.
void emit(const std::string& doc, const std::string& out_path) {
  if (out_path.empty())
    std::cout << doc;
  else
    write_file(out_path, doc);
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

struct PackingHandle {
  lrl_packing* ptr = nullptr;
  ~PackingHandle() { lrl_packing_free(ptr); }
};
struct DatasetHandle {
  lrl_dataset* ptr = nullptr;
  ~DatasetHandle() { lrl_dataset_free(ptr); }
};
struct FitHandle {
  lrl_fit* ptr = nullptr;
  ~FitHandle() { lrl_fit_free(ptr); }
};

void load_packing(const std::string& path, PackingHandle& h) {
  check(lrl_packing_from_json(read_file(path).c_str(), &h.ptr));
}

std::vector<double> packing_element(const lrl_packing* p, std::size_t index) {
  std::size_t m1 = 0, m2 = 0;
  check(lrl_packing_dims(p, &m1, &m2, nullptr));
  std::vector<double> b(m1 * m2);
  check(lrl_packing_element(p, index, b.data()));
  return b;
}

lrl_variant parse_variant(const std::string& v) {
  if (v == "theorem") return LRL_VARIANT_THEOREM;
  if (v == "appendix") return LRL_VARIANT_APPENDIX;
  usage_error("--variant must be theorem or appendix");
}

// ---- subcommands

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
  double kappa = 0.2;
  std::string variant = "theorem";
};

struct PackArgs {
  std::size_t m1 = 12, m2 = 12, r = 3;
  double d = 10.0;
  double epsilon = 0.0;
  int max_attempts = 64;
  std::size_t count_f = 0, count_p1 = 0, count_p2 = 0;
  std::string report;
};

std::string sibling(const std::string& path, const std::string& name) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? name : path.substr(0, slash + 1) + name;
}

int run_pack(const Common& c, const PackArgs& a, const CLI::App& cmd) {
  lrl_packing_params p;
  lrl_packing_params_default(&p);
  p.m1 = a.m1;
  p.m2 = a.m2;
  p.r = a.r;
  p.d = a.d;
  p.epsilon = a.epsilon;
  p.seed = c.seed;
  p.kappa = c.kappa;
  if (!c.config.empty()) {
    const Json cfg = parse(read_file(c.config), "config");
    try {
      if (cfg.contains("m1") && cmd.count("--m1") == 0) p.m1 = cfg["m1"].get<std::size_t>();
      if (cfg.contains("m2") && cmd.count("--m2") == 0) p.m2 = cfg["m2"].get<std::size_t>();
      if (cfg.contains("r") && cmd.count("--rank") == 0) p.r = cfg["r"].get<std::size_t>();
      if (cfg.contains("d") && cmd.count("--d") == 0) p.d = cfg["d"].get<double>();
      if (cfg.contains("epsilon") && cfg["epsilon"].is_number() && cmd.count("--epsilon") == 0)
        p.epsilon = cfg["epsilon"].get<double>();
      if (cfg.contains("seed") && cmd.count("--seed") == 0) p.seed = cfg["seed"].get<std::uint64_t>();
      if (cfg.contains("kappa") && cmd.count("--kappa") == 0) p.kappa = cfg["kappa"].get<double>();
    } catch (const Json::exception& e) {
      throw Failure{kExitIo, "ParseError", std::string("config: ") + e.what(), nullptr};
    }
  }
  p.max_attempts = a.max_attempts;
  p.count_f = a.count_f;
  p.count_p1 = a.count_p1;
  p.count_p2 = a.count_p2;
  p.require_certified = 0;  // always emit the best attempt and its report

  PackingHandle h;
  check(lrl_packing_build(&p, &h.ptr));
  const std::string packing_path = c.out.empty() ? "packing.json" : c.out;
  const std::string report_path = a.report.empty() ? sibling(packing_path, "report.json") : a.report;
  const std::string report = take([&] {
    char* s = nullptr;
    check(lrl_packing_report_json(h.ptr, &s));
    return s;
  }());
  write_file(packing_path, take([&] {
    char* s = nullptr;
    check(lrl_packing_to_json(h.ptr, &s));
    return s;
  }()));
  write_file(report_path, report);

  const Json rep = parse(report, "report");
  if (!rep.value("passed", false)) {
    throw Failure{kExitConstruction, "VerificationFailed",
                  "packing written but not certified; see " + report_path,
                  rep.value("failures", Json::array())};
  }
  return kExitOk;
}

int run_verify(const Common& c, const std::string& packing_path) {
  PackingHandle h;
  load_packing(packing_path, h);
  int passed = 0;
  char* report = nullptr;
  check(lrl_packing_verify(h.ptr, c.kappa, &passed, &report));
  const std::string text = take(report);
  emit(text, c.out);
  if (passed == 0) {
    const Json rep = parse(text, "report");
    throw Failure{kExitConstruction, "VerificationFailed", "packing failed verification",
                  rep.value("failures", Json::array())};
  }
  return kExitOk;
}

struct BoundArgs {
  std::size_t m1 = 0, m2 = 0, r = 0, n = 0;
  double sigma = 1.0;
  double epsilon = 0.0;
};

int run_bound(const Common& c, const BoundArgs& a) {
  lrl_bound_args args{a.m1, a.m2, a.r, a.n, a.sigma, parse_variant(c.variant), a.epsilon};
  char* out = nullptr;
  check(lrl_bound_report(&args, &out));
  emit(take(out), c.out);
  return kExitOk;
}

struct SimulateArgs {
  std::string packing;
  std::size_t index = 0;
  std::string truth;
  std::size_t n = 1000;
  double sigma = 1.0;
  bool binary = false;
};

int run_simulate(const Common& c, const SimulateArgs& a) {
  DatasetHandle data;
  if (!a.packing.empty()) {
    PackingHandle h;
    load_packing(a.packing, h);
    check(lrl_dataset_simulate_packing(h.ptr, a.index, a.n, a.sigma, c.seed, &data.ptr));
  } else if (!a.truth.empty()) {
    const Json t = parse(read_file(a.truth), "truth");
    std::vector<double> b;
    std::size_t m1 = 0, m2 = 0;
    try {
      m1 = t.at("m1").get<std::size_t>();
      m2 = t.at("m2").get<std::size_t>();
      b = t.at("B").get<std::vector<double>>();
    } catch (const Json::exception& e) {
      throw Failure{kExitIo, "ParseError", std::string("truth: ") + e.what(), nullptr};
    }
    if (b.size() != m1 * m2) usage_error("truth matrix size does not match m1*m2");
    check(lrl_dataset_simulate(b.data(), m1, m2, a.n, a.sigma, c.seed, &data.ptr));
  } else {
    usage_error("simulate needs --packing or --truth");
  }
  if (a.binary) {
    if (c.out.empty()) usage_error("--binary requires --out");
    check(lrl_dataset_save(data.ptr, c.out.c_str(), 1));
    return kExitOk;
  }
  char* out = nullptr;
  check(lrl_dataset_to_json(data.ptr, &out));
  emit(take(out), c.out);
  return kExitOk;
}

struct FitArgs {
  std::string data;
  std::string method = "full";
  std::size_t rank = 0;
  std::size_t max_iters = 1000;
  double tol = 1e-4;
  std::string step = "backtracking";
  double eta = 1e-3;
  std::string init = "zero";
  double init_scale = 0.01;
  std::string packing;
  long long init_index = -1;
};

int run_fit(const Common& c, const FitArgs& a) {
  DatasetHandle data;
  check(lrl_dataset_load(a.data.c_str(), &data.ptr));
  lrl_fit_options o;
  lrl_fit_options_default(&o);
  if (a.method == "full") o.method = LRL_METHOD_FULL;
  else if (a.method == "lowrank") o.method = LRL_METHOD_LOWRANK;
  else if (a.method == "oracle") o.method = LRL_METHOD_ORACLE;
  else usage_error("--method must be full, lowrank or oracle");
  if (o.method == LRL_METHOD_LOWRANK && a.rank == 0) usage_error("lowrank requires --rank");
  o.rank = a.rank;
  o.max_iters = a.max_iters;
  o.tol_grad = a.tol;
  if (a.step == "fixed") o.step = LRL_STEP_FIXED;
  else if (a.step == "backtracking") o.step = LRL_STEP_BACKTRACKING;
  else usage_error("--step must be backtracking or fixed");
  o.eta = a.eta;

  std::vector<double> start;
  if (!a.packing.empty() || a.init_index >= 0) {
    if (a.packing.empty() || a.init_index < 0)
      usage_error("--packing and --init-index must be given together");
    PackingHandle h;
    load_packing(a.packing, h);
    start = packing_element(h.ptr, static_cast<std::size_t>(a.init_index));
    o.init_matrix = start.data();
    o.init = LRL_INIT_MATRIX;
  }
  if (a.init == "gaussian") {
    o.init = LRL_INIT_GAUSSIAN;
    o.init_scale = a.init_scale;
    o.init_seed = c.seed;
  } else if (a.init != "zero") {
    usage_error("--init must be zero or gaussian");
  }
  if (o.method == LRL_METHOD_ORACLE && o.init_matrix == nullptr)
    usage_error("oracle method requires --packing and --init-index");

  FitHandle fit;
  check(lrl_fit_run(data.ptr, &o, &fit.ptr));
  char* out = nullptr;
  check(lrl_fit_to_json(fit.ptr, &out));
  emit(take(out), c.out);
  return kExitOk;
}

int run_decode(const Common& c, const std::string& packing_path, const std::string& fit_path,
               const std::string& data_path) {
  PackingHandle h;
  load_packing(packing_path, h);
  FitHandle fit;
  check(lrl_fit_from_json(read_file(fit_path).c_str(), &fit.ptr));
  std::size_t m1 = 0, m2 = 0;
  check(lrl_fit_dims(fit.ptr, &m1, &m2));
  std::vector<double> b(m1 * m2);
  check(lrl_fit_estimate(fit.ptr, b.data()));
  std::size_t index = 0;
  double dist = 0.0;
  check(lrl_decode(h.ptr, b.data(), m1, m2, &index, &dist));
  Json doc{{"index", index}, {"distance_sq", dist}, {"packing_size", lrl_packing_size(h.ptr)}};
  if (!data_path.empty()) {
    DatasetHandle data;
    check(lrl_dataset_load(data_path.c_str(), &data.ptr));
    const std::int64_t truth = lrl_dataset_truth_index(data.ptr);
    doc["truth_index"] = truth < 0 ? Json(nullptr) : Json(truth);
    doc["correct"] = truth >= 0 && static_cast<std::size_t>(truth) == index;
  }
  emit(render(doc), c.out);
  return kExitOk;
}

struct ExperimentArgs {
  std::string csv;
  std::string summary;
};

int run_experiment_cmd(const Common& c, const ExperimentArgs& a, const CLI::App& cmd) {
  Json cfg = Json::object();
  if (!c.config.empty()) cfg = parse(read_file(c.config), "config");
  if (!cfg.is_object()) throw Failure{kExitIo, "ParseError", "config must be a JSON object", nullptr};
  if (cmd.count("--seed") > 0) cfg["seed"] = c.seed;
  if (cmd.count("--kappa") > 0) cfg["kappa"] = c.kappa;
  if (cmd.count("--variant") > 0) cfg["variant"] = c.variant;
  if (!a.csv.empty()) cfg["csv_path"] = a.csv;
  if (!c.out.empty()) cfg["csv_path"] = c.out;
  if (!a.summary.empty()) cfg["summary_path"] = a.summary;
  char* summary = nullptr;
  check(lrl_experiment_run(cfg.dump().c_str(), &summary, nullptr));
  const std::string text = take(summary);
  if (!cfg.contains("summary_path") || cfg["summary_path"].get<std::string>().empty())
    std::cout << text;
  return kExitOk;
}

void report_failure(const Failure& f) {
  Json err{{"error", f.kind}, {"message", f.message}, {"exit_code", f.code}};
  if (!f.details.is_null()) err["details"] = f.details;
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank logistic regression: packings, simulation, fitting and lower bounds"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", common.seed, "Random seed (u64)");
    cmd->add_option("--out", common.out, "Output path (default: stdout)");
    cmd->add_option("--config", common.config, "JSON configuration file");
    cmd->add_option("--kappa", common.kappa, "Pairwise separation constant");
    cmd->add_option("--variant", common.variant, "Bound variant: theorem|appendix");
  };

  PackArgs pack;
  auto* pack_cmd = app.add_subcommand("pack", "Build and certify a packing set");
  add_common(pack_cmd);
  pack_cmd->add_option("--m1", pack.m1);
  pack_cmd->add_option("--m2", pack.m2);
  pack_cmd->add_option("--rank,-r", pack.r);
  pack_cmd->add_option("--d", pack.d, "Ball radius");
  pack_cmd->add_option("--epsilon", pack.epsilon, "Packing radius (default: auto)");
  pack_cmd->add_option("--max-attempts", pack.max_attempts);
  pack_cmd->add_option("--count-f", pack.count_f);
  pack_cmd->add_option("--count-p1", pack.count_p1);
  pack_cmd->add_option("--count-p2", pack.count_p2);
  pack_cmd->add_option("--report", pack.report, "Report path (default: report.json next to --out)");

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "Re-verify a packing file");
  add_common(verify_cmd);
  verify_cmd->add_option("packing", verify_path, "Packing JSON")->required();

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate the minimax lower bound");
  add_common(bound_cmd);
  bound_cmd->add_option("--m1", bound.m1)->required();
  bound_cmd->add_option("--m2", bound.m2)->required();
  bound_cmd->add_option("--rank,-r", bound.r)->required();
  bound_cmd->add_option("--n", bound.n)->required();
  bound_cmd->add_option("--sigma", bound.sigma);
  bound_cmd->add_option("--epsilon", bound.epsilon, "Adds the information sandwich");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Draw a logistic dataset");
  add_common(sim_cmd);
  sim_cmd->add_option("--packing", sim.packing);
  sim_cmd->add_option("--index", sim.index);
  sim_cmd->add_option("--truth", sim.truth, "JSON {m1, m2, B: row-major}");
  sim_cmd->add_option("--n", sim.n);
  sim_cmd->add_option("--sigma", sim.sigma);
  sim_cmd->add_flag("--binary", sim.binary, "Write the binary layout to --out");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit an estimator to a dataset");
  add_common(fit_cmd);
  fit_cmd->add_option("--data", fit.data)->required();
  fit_cmd->add_option("--method", fit.method);
  fit_cmd->add_option("--rank,-r", fit.rank);
  fit_cmd->add_option("--max-iters", fit.max_iters);
  fit_cmd->add_option("--tol", fit.tol);
  fit_cmd->add_option("--step", fit.step);
  fit_cmd->add_option("--eta", fit.eta);
  fit_cmd->add_option("--init", fit.init);
  fit_cmd->add_option("--init-scale", fit.init_scale);
  fit_cmd->add_option("--packing", fit.packing);
  fit_cmd->add_option("--init-index", fit.init_index);

  std::string decode_packing, decode_fit, decode_data;
  auto* decode_cmd = app.add_subcommand("decode", "Minimum-distance decode a fitted estimate");
  add_common(decode_cmd);
  decode_cmd->add_option("--packing", decode_packing)->required();
  decode_cmd->add_option("--fit", decode_fit)->required();
  decode_cmd->add_option("--data", decode_data, "Dataset carrying the true index");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a risk-versus-n sweep");
  add_common(exp_cmd);
  exp_cmd->add_option("--csv", exp.csv);
  exp_cmd->add_option("--summary", exp.summary);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_failure({kExitUsage, "InvalidArgument", e.what(), nullptr});
    return kExitUsage;
  }

  try {
    if (*pack_cmd) return run_pack(common, pack, *pack_cmd);
    if (*verify_cmd) return run_verify(common, verify_path);
    if (*bound_cmd) return run_bound(common, bound);
    if (*sim_cmd) return run_simulate(common, sim);
    if (*fit_cmd) return run_fit(common, fit);
    if (*decode_cmd) return run_decode(common, decode_packing, decode_fit, decode_data);
    if (*exp_cmd) return run_experiment_cmd(common, exp, *exp_cmd);
  } catch (const Failure& f) {
    report_failure(f);
    return f.code;
  } catch (const std::exception& e) {
    report_failure({kExitInternal, "InternalError", e.what(), nullptr});
    return kExitInternal;
  }
  return kExitUsage;
}
