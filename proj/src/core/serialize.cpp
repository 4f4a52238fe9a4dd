#include "core/serialize.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace lrlogit {

namespace {

Json flat_array(const Matrix& m) {
  Json arr = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  return arr;
}

Matrix matrix_from_flat(const Json& arr, std::size_t rows, std::size_t cols,
                        const char* what) {
  if (!arr.is_array() || arr.size() != rows * cols)
    fail(ErrorKind::Parse, std::string(what) + ": expected an array of " +
                               std::to_string(rows * cols) + " numbers");
  std::vector<double> flat;
  flat.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) fail(ErrorKind::Parse, std::string(what) + ": non-numeric entry");
    flat.push_back(v.get<double>());
  }
  return unflatten(flat, rows, cols);
}

const Json& member(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    fail(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  return doc[key];
}

template <typename T>
T field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    fail(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception& e) {
    fail(ErrorKind::Parse, std::string("field \"") + key + "\": " + e.what());
  }
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const std::string& in, std::size_t& pos) {
  if (pos + 8 > in.size()) fail(ErrorKind::Parse, "binary dataset truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += 8;
  return v;
}

void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(const std::string& in, std::size_t& pos) {
  return std::bit_cast<double>(get_u64(in, pos));
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorKind::Io, "read failed: " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) fail(ErrorKind::Io, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

Json packing_to_json(const PackingSet& set) {
  Json doc;
  doc["m1"] = set.m1;
  doc["m2"] = set.m2;
  doc["r"] = set.r;
  doc["d"] = set.d;
  doc["epsilon"] = set.epsilon;
  doc["kappa"] = set.kappa;
  doc["seed"] = set.seed;
  doc["min_pairwise_sq"] = set.min_pairwise_sq;
  doc["max_pairwise_sq"] = set.max_pairwise_sq;
  Json elements = Json::array();
  for (const auto& e : set.elements) {
    Json el;
    el["f"] = e.index.f;
    el["p1"] = e.index.p1;
    el["p2"] = e.index.p2;
    el["B1"] = flat_array(e.factors.b1);
    el["G_diag"] = std::vector<double>(e.factors.g_diag.data(),
                                       e.factors.g_diag.data() + e.factors.g_diag.size());
    el["B2"] = flat_array(e.factors.b2);
    elements.push_back(std::move(el));
  }
  doc["elements"] = std::move(elements);
  return doc;
}

PackingSet packing_from_json(const Json& doc) {
  PackingSet set;
  set.m1 = field<std::size_t>(doc, "m1");
  set.m2 = field<std::size_t>(doc, "m2");
  set.r = field<std::size_t>(doc, "r");
  set.d = field<double>(doc, "d");
  set.epsilon = field<double>(doc, "epsilon");
  set.kappa = field<double>(doc, "kappa");
  set.seed = field<std::uint64_t>(doc, "seed");
  set.min_pairwise_sq = field<double>(doc, "min_pairwise_sq");
  set.max_pairwise_sq = field<double>(doc, "max_pairwise_sq");
  if (set.m1 == 0 || set.m2 == 0 || set.r == 0) fail(ErrorKind::Parse, "packing dimensions must be positive");
  const Json& elements = member(doc, "elements");
  if (!elements.is_array()) fail(ErrorKind::Parse, "\"elements\" must be an array");
  for (const auto& el : elements) {
    PackingElement e;
    e.index = {field<std::size_t>(el, "f"), field<std::size_t>(el, "p1"),
               field<std::size_t>(el, "p2")};
    e.factors.b1 = matrix_from_flat(member(el, "B1"), set.m1, set.r, "B1");
    e.factors.b2 = matrix_from_flat(member(el, "B2"), set.m2, set.r, "B2");
    const Matrix g = matrix_from_flat(member(el, "G_diag"), set.r, 1, "G_diag");
    e.factors.g_diag = g.col(0);
    set.elements.push_back(std::move(e));
  }
  return set;
}

Json report_to_json(const VerificationReport& rep) {
  auto pair_json = [](const PairDistance& p) {
    return Json{{"a", p.a}, {"b", p.b}, {"distance_sq", p.distance_sq}};
  };
  Json doc;
  doc["passed"] = rep.passed;
  doc["kappa"] = rep.kappa;
  doc["lower_threshold"] = rep.lower_threshold;
  doc["upper_threshold"] = rep.upper_threshold;
  doc["expected_energy"] = rep.expected_energy;
  doc["min_pairwise_sq"] = rep.min_pairwise_sq;
  doc["max_pairwise_sq"] = rep.max_pairwise_sq;
  doc["min_ratio"] = rep.upper_threshold > 0.0 ? rep.min_pairwise_sq / (rep.upper_threshold / 4.0) : 0.0;
  doc["closest_pair"] = pair_json(rep.closest);
  doc["farthest_pair"] = pair_json(rep.farthest);
  doc["max_orthonormality_residual"] = rep.max_orthonormality_residual;
  doc["checks"] = {{"lower_distance", rep.lower_ok},
                   {"upper_distance", rep.upper_ok},
                   {"energy", rep.energy_ok},
                   {"orthonormality", rep.orthonormal_ok},
                   {"distinct_indices", rep.distinct_ok}};
  doc["lower_violations"] = rep.lower_violations;
  doc["upper_violations"] = rep.upper_violations;
  Json worst = Json::array();
  for (const auto& p : rep.worst_pairs) worst.push_back(pair_json(p));
  doc["worst_pairs"] = std::move(worst);
  Json issues = Json::array();
  for (const auto& i : rep.element_issues)
    issues.push_back({{"element", i.index}, {"issue", i.what}, {"value", i.value}});
  doc["element_issues"] = std::move(issues);
  doc["failures"] = rep.failures;
  return doc;
}

Json dataset_to_json(const Dataset& data) {
  Json doc;
  doc["m1"] = data.m1;
  doc["m2"] = data.m2;
  doc["n"] = data.n();
  doc["sigma"] = data.sigma;
  doc["seed"] = data.seed;
  doc["truth_index"] = data.truth_index ? Json(*data.truth_index) : Json(nullptr);
  Json xs = Json::array();
  for (Eigen::Index i = 0; i < data.design.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < data.design.cols(); ++k) row.push_back(data.design(i, k));
    xs.push_back(std::move(row));
  }
  doc["X"] = std::move(xs);
  Json ys = Json::array();
  for (auto y : data.responses) ys.push_back(static_cast<int>(y));
  doc["y"] = std::move(ys);
  return doc;
}

Dataset dataset_from_json(const Json& doc) {
  Dataset data;
  data.m1 = field<std::size_t>(doc, "m1");
  data.m2 = field<std::size_t>(doc, "m2");
  const auto n = field<std::size_t>(doc, "n");
  data.sigma = field<double>(doc, "sigma");
  data.seed = field<std::uint64_t>(doc, "seed");
  if (doc.contains("truth_index") && !member(doc, "truth_index").is_null())
    data.truth_index = field<std::size_t>(doc, "truth_index");
  const Json& xs = member(doc, "X");
  const Json& ys = member(doc, "y");
  if (!xs.is_array() || !ys.is_array() || xs.size() != n || ys.size() != n)
    fail(ErrorKind::Parse, "dataset X/y lengths do not match n");
  if (n == 0) fail(ErrorKind::Parse, "dataset must contain at least one sample");
  const std::size_t p = data.m1 * data.m2;
  data.design.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  data.responses.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix x = matrix_from_flat(xs[i], 1, p, "X");
    data.design.row(static_cast<Eigen::Index>(i)) = x.row(0);
    const Json& y = ys[i];
    if (!y.is_number_integer() || (y.get<int>() != 0 && y.get<int>() != 1))
      fail(ErrorKind::Parse, "responses must be 0 or 1");
    data.responses[i] = static_cast<std::uint8_t>(y.get<int>());
  }
  return data;
}

std::string dataset_to_binary(const Dataset& data) {
  std::string out;
  const std::size_t n = data.n();
  out.reserve(48 + 8 * n * data.m1 * data.m2 + n);
  put_u64(out, data.m1);
  put_u64(out, data.m2);
  put_u64(out, n);
  put_u64(out, data.seed);
  put_u64(out, data.truth_index ? static_cast<std::uint64_t>(*data.truth_index)
                                : static_cast<std::uint64_t>(-1));
  put_f64(out, data.sigma);
  for (Eigen::Index i = 0; i < data.design.rows(); ++i)
    for (Eigen::Index k = 0; k < data.design.cols(); ++k) put_f64(out, data.design(i, k));
  for (auto y : data.responses) out.push_back(static_cast<char>(y));
  return out;
}

Dataset dataset_from_binary(const std::string& bytes) {
  std::size_t pos = 0;
  Dataset data;
  data.m1 = get_u64(bytes, pos);
  data.m2 = get_u64(bytes, pos);
  const std::uint64_t n = get_u64(bytes, pos);
  data.seed = get_u64(bytes, pos);
  const auto truth = static_cast<std::int64_t>(get_u64(bytes, pos));
  if (truth >= 0) data.truth_index = static_cast<std::size_t>(truth);
  data.sigma = get_f64(bytes, pos);
  const std::uint64_t p = data.m1 * data.m2;
  if (data.m1 == 0 || data.m2 == 0 || n == 0 || p > (1u << 24) ||
      bytes.size() != pos + n * p * 8 + n)
    fail(ErrorKind::Parse, "binary dataset size does not match its header");
  data.design.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (Eigen::Index i = 0; i < data.design.rows(); ++i)
    for (Eigen::Index k = 0; k < data.design.cols(); ++k) data.design(i, k) = get_f64(bytes, pos);
  data.responses.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto y = static_cast<unsigned char>(bytes[pos++]);
    if (y > 1) fail(ErrorKind::Parse, "responses must be 0 or 1");
    data.responses[i] = y;
  }
  return data;
}

Json fit_to_json(const FitResult& fit) {
  Json doc;
  doc["m1"] = fit.b_hat.rows();
  doc["m2"] = fit.b_hat.cols();
  doc["B_hat"] = flat_array(fit.b_hat);
  doc["iterations"] = fit.iterations;
  doc["final_grad_norm"] = fit.final_grad_norm;
  doc["converged"] = fit.converged;
  doc["objective_trace"] = fit.objective_trace;
  return doc;
}

FitResult fit_from_json(const Json& doc) {
  FitResult fit;
  const auto m1 = field<std::size_t>(doc, "m1");
  const auto m2 = field<std::size_t>(doc, "m2");
  fit.b_hat = matrix_from_flat(member(doc, "B_hat"), m1, m2, "B_hat");
  fit.iterations = field<std::size_t>(doc, "iterations");
  fit.final_grad_norm = field<double>(doc, "final_grad_norm");
  fit.converged = field<bool>(doc, "converged");
  fit.objective_trace = field<std::vector<double>>(doc, "objective_trace");
  return fit;
}

}  // namespace lrlogit
