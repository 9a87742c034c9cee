#pragma once

#include "isopair/classify.hpp"
#include "isopair/spectral.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace isopair::io {

using json = nlohmann::json;

/// Complex numbers are [re, im]. Matrices are {rows, cols, data} with
/// row-major data, or {rows, cols, entries: [[i, j, re, im], ...]} when at
/// most a quarter of the entries are nonzero. Both forms are accepted.
json to_json(cx z);
json to_json(const CVector& v);
json to_json(const ComplexMatrix& m);
json to_json(const bcl::BCLTriple& t);
json to_json(const models::StructuredPair& p);
json to_json(const classify::PairInput& in);
json to_json(const classify::ClassificationResult& r);

cx complex_from_json(const json& j);
CVector vector_from_json(const json& j);
ComplexMatrix matrix_from_json(const json& j);
bcl::BCLTriple triple_from_json(const json& j);
models::StructuredPair pair_from_json(const json& j);
/// Dispatches on the "type" field.
classify::PairInput input_from_json(const json& j);

/// Two-space indented, keys sorted, trailing newline.
std::string dump(const json& j);

/// Throws InputError when the file is missing or not valid JSON.
json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// index, eigenvalue_re, eigenvalue_im, cluster_label
std::string spectrum_csv(const spectral::SpectralProfile& profile, double cluster_tol);

} // namespace isopair::io
