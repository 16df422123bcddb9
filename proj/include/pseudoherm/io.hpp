#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pseudoherm/cmatrix.hpp"
#include "pseudoherm/operators.hpp"
#include "pseudoherm/spectral.hpp"

namespace pseudoherm::io {

using Json = nlohmann::json;

/// Sorted keys, two-space indent, floats with 17 significant digits. Text
/// produced here parses back to a value that dumps to the same bytes.
std::string dump_canonical(const Json& value);

/// Throws Parse with the parser's position on malformed text.
Json parse_json(std::string_view text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

Json to_json(cplx z);          // [re, im]
cplx cplx_from_json(const Json& j);  // [re, im] or a bare real number

Json matrix_data(const CMatrix& m);  // rows of [re, im] pairs
CMatrix matrix_from_data(const Json& rows);

/// {"n", "data", "antilinear"?, "label"?}; a file may carry extra keys
/// such as an embedded "decomposition".
struct MatrixDocument {
  CMatrix m;
  bool antilinear = false;
  std::optional<std::string> label;
};

Json to_json(const MatrixDocument& doc);
/// Throws Parse on missing fields, non-square data, a row count other than
/// n or non-finite numbers.
MatrixDocument matrix_document_from_json(const Json& j);

/// {"data": [[re, im], ...]} or a bare array of pairs.
Json vector_to_json(std::span<const cplx> v);
CVector vector_from_json(const Json& j);

/// {"groups": [{"eigenvalue", "block_dims", "kind", "pair_id"}], "psi", "phi"}
Json to_json(const SpectralDecomposition& dec);
/// Rebuilds the decomposition and checks phi^dagger psi = I at tolerance.
SpectralDecomposition decomposition_from_json(const Json& j, const Tolerance& tol = {});

/// {"groups": [{"eigenvalue", "block_dims"}], "seed"?, "condition"?, "pseudo_hermitian"?}
Json to_json(const SynthesisSpec& spec);
SynthesisSpec synthesis_spec_from_json(const Json& j);

/// {"signs": [[+-1 per block] per group]} or {"labels": [+-1 ...]}.
Json to_json(const SignSequence& sigma);
SignSequence sign_sequence_from_json(const Json& j, const SpectralDecomposition& dec);

/// Header `t,<names...>`, one row per time, 15 significant digits.
std::string csv_series(const std::vector<double>& times, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns);

}  // namespace pseudoherm::io
