#pragma once

// JSON and binary encodings for packings, datasets, fits and reports.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "core/estimator.hpp"
#include "core/glm.hpp"
#include "core/packing.hpp"

namespace lrlogit {

using Json = nlohmann::json;

/// printf("%.17g"): parses back to the identical double.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path& path);
/// Writes atomically (temporary file + rename).
void write_text_file(const std::filesystem::path& path, const std::string& contents);

/// Parses JSON text, mapping syntax errors to ErrorKind::Parse.
Json parse_json(const std::string& text);
/// Canonical rendering used for every file the library writes.
std::string dump_json(const Json& doc);

Json packing_to_json(const PackingSet& set);
/// Restores factors and metadata; the verification report is left empty.
PackingSet packing_from_json(const Json& doc);

Json report_to_json(const VerificationReport& rep);

Json dataset_to_json(const Dataset& data);
Dataset dataset_from_json(const Json& doc);

/// Little-endian layout: int64 m1, m2, n, seed, truth_index (−1 = none),
/// float64 sigma, n·m1·m2 float64 covariates (row-major per sample), n bytes y.
std::string dataset_to_binary(const Dataset& data);
Dataset dataset_from_binary(const std::string& bytes);

Json fit_to_json(const FitResult& fit);
FitResult fit_from_json(const Json& doc);

}  // namespace lrlogit
