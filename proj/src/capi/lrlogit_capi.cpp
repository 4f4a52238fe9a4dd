#include "lrlogit/lrlogit.h"

#include <cstring>
#include <new>
#include <span>
#include <string>

#include "core/bound.hpp"
#include "core/error.hpp"
#include "core/estimator.hpp"
#include "core/experiment.hpp"
#include "core/serialize.hpp"

using namespace lrlogit;

struct lrl_packing {
  PackingSet set;
};

struct lrl_dataset {
  Dataset data;
};

struct lrl_fit {
  FitResult result;
};

namespace {

thread_local std::string g_last_error;

lrl_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return LRL_INVALID_ARGUMENT;
    case ErrorKind::CardinalityTooLarge: return LRL_CARDINALITY_TOO_LARGE;
    case ErrorKind::DegenerateCardinality: return LRL_DEGENERATE_CARDINALITY;
    case ErrorKind::EmptyRange: return LRL_EMPTY_RANGE;
    case ErrorKind::ConstructionFailed: return LRL_CONSTRUCTION_FAILED;
    case ErrorKind::RankDeficient: return LRL_RANK_DEFICIENT;
    case ErrorKind::Io: return LRL_IO_ERROR;
    case ErrorKind::Parse: return LRL_PARSE_ERROR;
  }
  return LRL_INTERNAL_ERROR;
}

template <typename F>
lrl_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LRL_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LRL_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return LRL_INTERNAL_ERROR;
  }
}

lrl_status invalid(const char* message) {
  g_last_error = message;
  return LRL_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void write_matrix(const Matrix& m, double* out) {
  const Vector flat = flatten(m);
  std::memcpy(out, flat.data(), sizeof(double) * static_cast<std::size_t>(flat.size()));
}

Matrix read_matrix(const double* in, std::size_t m1, std::size_t m2) {
  return unflatten(std::span<const double>(in, m1 * m2), m1, m2);
}

BoundVariant variant_of(lrl_variant v) {
  return v == LRL_VARIANT_APPENDIX ? BoundVariant::AppendixL : BoundVariant::Theorem;
}

}  // namespace

extern "C" {

const char* lrl_status_name(lrl_status status) {
  switch (status) {
    case LRL_OK: return "Ok";
    case LRL_INVALID_ARGUMENT: return error_kind_name(ErrorKind::InvalidArgument);
    case LRL_CARDINALITY_TOO_LARGE: return error_kind_name(ErrorKind::CardinalityTooLarge);
    case LRL_DEGENERATE_CARDINALITY: return error_kind_name(ErrorKind::DegenerateCardinality);
    case LRL_EMPTY_RANGE: return error_kind_name(ErrorKind::EmptyRange);
    case LRL_CONSTRUCTION_FAILED: return error_kind_name(ErrorKind::ConstructionFailed);
    case LRL_RANK_DEFICIENT: return error_kind_name(ErrorKind::RankDeficient);
    case LRL_IO_ERROR: return error_kind_name(ErrorKind::Io);
    case LRL_PARSE_ERROR: return error_kind_name(ErrorKind::Parse);
    case LRL_VERIFICATION_FAILED: return "VerificationFailed";
    case LRL_INTERNAL_ERROR: return "InternalError";
  }
  return "Unknown";
}

const char* lrl_last_error(void) { return g_last_error.c_str(); }

const char* lrl_version(void) { return "0.1.0"; }

void lrl_string_free(char* str) { delete[] str; }

// ---- packing

void lrl_packing_params_default(lrl_packing_params* params) {
  if (params == nullptr) return;
  *params = lrl_packing_params{};
  params->m1 = 12;
  params->m2 = 12;
  params->r = 3;
  params->d = 10.0;
  params->epsilon = 0.0;
  params->seed = 0;
  params->kappa = kDefaultKappa;
  params->max_attempts = kDefaultMaxAttempts;
  params->require_certified = 1;
}

lrl_status lrl_packing_build(const lrl_packing_params* params, lrl_packing** out) {
  if (params == nullptr || out == nullptr) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    PackingParams p;
    p.m1 = params->m1;
    p.m2 = params->m2;
    p.r = params->r;
    p.d = params->d;
    if (params->epsilon > 0.0) p.epsilon = params->epsilon;
    p.seed = params->seed;
    p.kappa = params->kappa;
    p.max_attempts = params->max_attempts;
    if (params->count_f != 0) p.count_f = params->count_f;
    if (params->count_p1 != 0) p.count_p1 = params->count_p1;
    if (params->count_p2 != 0) p.count_p2 = params->count_p2;
    p.require_certified = params->require_certified != 0;
    *out = new lrl_packing{assemble_packing(p)};
    return LRL_OK;
  });
}

lrl_status lrl_packing_from_json(const char* text, lrl_packing** out) {
  if (text == nullptr || out == nullptr) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new lrl_packing{packing_from_json(parse_json(text))};
    return LRL_OK;
  });
}

lrl_status lrl_packing_to_json(const lrl_packing* packing, char** out) {
  if (packing == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = dup_string(dump_json(packing_to_json(packing->set)));
    return LRL_OK;
  });
}

lrl_status lrl_packing_report_json(const lrl_packing* packing, char** out) {
  if (packing == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = dup_string(dump_json(report_to_json(packing->set.report)));
    return LRL_OK;
  });
}

lrl_status lrl_packing_verify(const lrl_packing* packing, double kappa, int* passed,
                              char** report_json) {
  if (packing == nullptr) return invalid("null argument");
  return guarded([&] {
    const VerificationReport rep = verify_packing(packing->set, kappa);
    if (passed != nullptr) *passed = rep.passed ? 1 : 0;
    if (report_json != nullptr) *report_json = dup_string(dump_json(report_to_json(rep)));
    return LRL_OK;
  });
}

size_t lrl_packing_size(const lrl_packing* packing) {
  return packing == nullptr ? 0 : packing->set.size();
}

lrl_status lrl_packing_dims(const lrl_packing* packing, size_t* m1, size_t* m2, size_t* r) {
  if (packing == nullptr) return invalid("null argument");
  if (m1 != nullptr) *m1 = packing->set.m1;
  if (m2 != nullptr) *m2 = packing->set.m2;
  if (r != nullptr) *r = packing->set.r;
  return LRL_OK;
}

double lrl_packing_epsilon(const lrl_packing* packing) {
  return packing == nullptr ? 0.0 : packing->set.epsilon;
}

double lrl_packing_min_pairwise_sq(const lrl_packing* packing) {
  return packing == nullptr ? 0.0 : packing->set.min_pairwise_sq;
}

lrl_status lrl_packing_element(const lrl_packing* packing, size_t index, double* out) {
  if (packing == nullptr || out == nullptr) return invalid("null argument");
  if (index >= packing->set.size()) return invalid("packing index out of range");
  return guarded([&] {
    write_matrix(packing->set.dense(index), out);
    return LRL_OK;
  });
}

void lrl_packing_free(lrl_packing* packing) { delete packing; }

// ---- dataset

lrl_status lrl_dataset_simulate(const double* b, size_t m1, size_t m2, size_t n, double sigma,
                                uint64_t seed, lrl_dataset** out) {
  if (b == nullptr || out == nullptr) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new lrl_dataset{sample_dataset(read_matrix(b, m1, m2), n, sigma, seed)};
    return LRL_OK;
  });
}

lrl_status lrl_dataset_simulate_packing(const lrl_packing* packing, size_t index, size_t n,
                                        double sigma, uint64_t seed, lrl_dataset** out) {
  if (packing == nullptr || out == nullptr) return invalid("null argument");
  *out = nullptr;
  if (index >= packing->set.size()) return invalid("packing index out of range");
  return guarded([&] {
    *out = new lrl_dataset{sample_dataset(packing->set.dense(index), n, sigma, seed, index)};
    return LRL_OK;
  });
}

lrl_status lrl_dataset_from_json(const char* text, lrl_dataset** out) {
  if (text == nullptr || out == nullptr) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new lrl_dataset{dataset_from_json(parse_json(text))};
    return LRL_OK;
  });
}

lrl_status lrl_dataset_to_json(const lrl_dataset* data, char** out) {
  if (data == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = dup_string(dump_json(dataset_to_json(data->data)));
    return LRL_OK;
  });
}

lrl_status lrl_dataset_load(const char* path, lrl_dataset** out) {
  if (path == nullptr || out == nullptr) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    const std::string bytes = read_text_file(path);
    const auto first = bytes.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && bytes[first] == '{')
      *out = new lrl_dataset{dataset_from_json(parse_json(bytes))};
    else
      *out = new lrl_dataset{dataset_from_binary(bytes)};
    return LRL_OK;
  });
}

lrl_status lrl_dataset_save(const lrl_dataset* data, const char* path, int binary) {
  if (data == nullptr || path == nullptr) return invalid("null argument");
  return guarded([&] {
    write_text_file(path, binary != 0 ? dataset_to_binary(data->data)
                                      : dump_json(dataset_to_json(data->data)));
    return LRL_OK;
  });
}

size_t lrl_dataset_n(const lrl_dataset* data) { return data == nullptr ? 0 : data->data.n(); }

lrl_status lrl_dataset_dims(const lrl_dataset* data, size_t* m1, size_t* m2) {
  if (data == nullptr) return invalid("null argument");
  if (m1 != nullptr) *m1 = data->data.m1;
  if (m2 != nullptr) *m2 = data->data.m2;
  return LRL_OK;
}

int64_t lrl_dataset_truth_index(const lrl_dataset* data) {
  if (data == nullptr || !data->data.truth_index) return -1;
  return static_cast<int64_t>(*data->data.truth_index);
}

void lrl_dataset_free(lrl_dataset* data) { delete data; }

// ---- fit

void lrl_fit_options_default(lrl_fit_options* opts) {
  if (opts == nullptr) return;
  const FitOptions defaults;
  const Backtracking bt;
  *opts = lrl_fit_options{};
  opts->method = LRL_METHOD_FULL;
  opts->rank = 0;
  opts->max_iters = defaults.max_iters;
  opts->tol_grad = defaults.tol_grad;
  opts->step = LRL_STEP_BACKTRACKING;
  opts->eta = FixedStep{}.eta;
  opts->beta = bt.beta;
  opts->c = bt.c;
  opts->initial_step = bt.initial;
  opts->init = LRL_INIT_ZERO;
  opts->init_scale = GaussianInit{}.scale;
  opts->init_seed = 0;
  opts->init_matrix = nullptr;
}

lrl_status lrl_fit_run(const lrl_dataset* data, const lrl_fit_options* opts, lrl_fit** out) {
  if (data == nullptr || opts == nullptr || out == nullptr) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    const Dataset& ds = data->data;
    Estimator est;
    est.rank = opts->rank;
    est.options.max_iters = opts->max_iters;
    est.options.tol_grad = opts->tol_grad;
    if (opts->step == LRL_STEP_FIXED)
      est.options.step_rule = FixedStep{opts->eta};
    else
      est.options.step_rule = Backtracking{opts->beta, opts->c, opts->initial_step};
    Matrix given;
    if (opts->init_matrix != nullptr) given = read_matrix(opts->init_matrix, ds.m1, ds.m2);
    switch (opts->init) {
      case LRL_INIT_GAUSSIAN: est.options.init = GaussianInit{opts->init_scale, opts->init_seed}; break;
      case LRL_INIT_MATRIX:
        require(opts->init_matrix != nullptr, "matrix initialization requires init_matrix");
        est.options.init = MatrixInit{given};
        break;
      default: est.options.init = ZeroInit{}; break;
    }
    switch (opts->method) {
      case LRL_METHOD_LOWRANK: est.method = FitMethod::LowRank; break;
      case LRL_METHOD_ORACLE:
        require(opts->init_matrix != nullptr, "oracle method requires init_matrix");
        est.method = FitMethod::Oracle;
        break;
      default: est.method = FitMethod::Full; break;
    }
    *out = new lrl_fit{run_estimator(est, ds, given)};
    return LRL_OK;
  });
}

lrl_status lrl_fit_from_json(const char* text, lrl_fit** out) {
  if (text == nullptr || out == nullptr) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new lrl_fit{fit_from_json(parse_json(text))};
    return LRL_OK;
  });
}

lrl_status lrl_fit_to_json(const lrl_fit* fit, char** out) {
  if (fit == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = dup_string(dump_json(fit_to_json(fit->result)));
    return LRL_OK;
  });
}

lrl_status lrl_fit_dims(const lrl_fit* fit, size_t* m1, size_t* m2) {
  if (fit == nullptr) return invalid("null argument");
  if (m1 != nullptr) *m1 = static_cast<size_t>(fit->result.b_hat.rows());
  if (m2 != nullptr) *m2 = static_cast<size_t>(fit->result.b_hat.cols());
  return LRL_OK;
}

lrl_status lrl_fit_estimate(const lrl_fit* fit, double* out) {
  if (fit == nullptr || out == nullptr) return invalid("null argument");
  write_matrix(fit->result.b_hat, out);
  return LRL_OK;
}

int lrl_fit_converged(const lrl_fit* fit) {
  return fit != nullptr && fit->result.converged ? 1 : 0;
}

void lrl_fit_free(lrl_fit* fit) { delete fit; }

// ---- decoding and bounds

lrl_status lrl_decode(const lrl_packing* packing, const double* b_hat, size_t m1, size_t m2,
                      size_t* index, double* distance_sq) {
  if (packing == nullptr || b_hat == nullptr || index == nullptr) return invalid("null argument");
  return guarded([&] {
    require(m1 == packing->set.m1 && m2 == packing->set.m2,
            "estimate shape does not match packing");
    require(packing->set.size() > 0, "packing is empty");
    const Matrix b = read_matrix(b_hat, m1, m2);
    *index = min_distance_decode(b, packing->set);
    if (distance_sq != nullptr) *distance_sq = (b - packing->set.dense(*index)).squaredNorm();
    return LRL_OK;
  });
}

lrl_status lrl_minimax_lower_bound(size_t m1, size_t m2, size_t r, size_t n, double sigma,
                                   lrl_variant variant, double* out) {
  if (out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = minimax_lower_bound({m1, m2, r, n, sigma, variant_of(variant)}).value;
    return LRL_OK;
  });
}

lrl_status lrl_fano_lower_bound(double cardinality, double p_err, double* out) {
  if (out == nullptr) return invalid("null argument");
  return guarded([&] {
    *out = fano_lower_bound(cardinality, p_err);
    return LRL_OK;
  });
}

lrl_status lrl_bound_report(const lrl_bound_args* args, char** out) {
  if (args == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    const BoundVariant variant = variant_of(args->variant);
    const LowerBound lb =
        minimax_lower_bound({args->m1, args->m2, args->r, args->n, args->sigma, variant});
    const BoundConstants k = constants();
    const LogCardinality logl = packing_log_cardinality(args->m1, args->m2, args->r, variant);
    Json doc;
    doc["bound"] = lb.value;
    doc["numerator"] = lb.numerator;
    doc["vacuous"] = lb.vacuous;
    doc["constants"] = {{"c1", k.c1}, {"c2", k.c2}, {"c3", k.c3}};
    doc["inputs"] = {{"m1", args->m1}, {"m2", args->m2}, {"r", args->r}, {"n", args->n},
                     {"sigma", args->sigma},
                     {"variant", variant == BoundVariant::Theorem ? "theorem" : "appendix"}};
    doc["log2_L"] = logl.log2_l;
    doc["log2_L_exponent"] = logl.exponent;
    doc["fano_bits"] = fano_lower_bound_log2(logl.log2_l, decoder_error_bound());
    if (args->epsilon > 0.0) {
      const DeltaEpsilon de = delta_epsilon(args->r, args->epsilon);
      const InformationBound info = cmi_upper_bound(args->epsilon, args->r, args->n, args->sigma);
      doc["epsilon"] = args->epsilon;
      doc["delta"] = de.delta;
      doc["cmi_upper_nats"] = info.nats;
      doc["cmi_upper_bits"] = info.bits;
    }
    *out = dup_string(dump_json(doc));
    return LRL_OK;
  });
}

// ---- experiment

lrl_status lrl_experiment_run(const char* config_json, char** summary_json, char** csv) {
  if (config_json == nullptr) return invalid("null argument");
  return guarded([&] {
    const ExperimentResult result = run_experiment(config_from_json(parse_json(config_json)));
    if (summary_json != nullptr) *summary_json = dup_string(dump_json(result.summary));
    if (csv != nullptr) *csv = dup_string(rows_to_csv(result.rows));
    return LRL_OK;
  });
}

}  // extern "C"
