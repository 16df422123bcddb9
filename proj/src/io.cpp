#include "pseudoherm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pseudoherm/error.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm::io {
namespace {

std::string format_number(const Json& v) {
  if (v.is_number_integer()) return v.dump();
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(ErrorCode::Parse, "non-finite number cannot be serialized");
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_flat(const Json& a) {
  for (const auto& e : a)
    if (e.is_array() || e.is_object()) return false;
  return true;
}

void dump_into(const Json& v, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {  // std::map order: sorted keys
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      dump_into(it.value(), out, depth + 1);
    }
    out += "\n" + close + "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    if (is_flat(v)) {
      out += "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        dump_into(v[i], out, depth + 1);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += ",\n";
      out += pad;
      dump_into(v[i], out, depth + 1);
    }
    out += "\n" + close + "]";
  } else if (v.is_number()) {
    out += format_number(v);
  } else {
    out += v.dump();
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

double finite_number(const Json& j) {
  if (!j.is_number()) fail(ErrorCode::Parse, "expected a number, got " + j.dump());
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(ErrorCode::Parse, "numbers must be finite");
  return x;
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(ErrorCode::Parse, std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

GroupKind kind_from_string(const std::string& s) {
  for (GroupKind k : {GroupKind::Real, GroupKind::PlusMember, GroupKind::MinusMember, GroupKind::Unpaired})
    if (to_string(k) == s) return k;
  fail(ErrorCode::Parse, "unknown group kind '" + s + "'");
}

}  // namespace

std::string dump_canonical(const Json& value) {
  std::string out;
  dump_into(value, out, 0);
  out += "\n";
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::InvalidArgument, "write to '" + path + "' failed");
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const Json& j) {
  if (j.is_number()) return finite_number(j);
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::Parse, "complex numbers are [re, im] pairs, got " + j.dump());
  return {finite_number(j[0]), finite_number(j[1])};
}

Json matrix_data(const CMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_data(const Json& rows) {
  if (!rows.is_array()) fail(ErrorCode::Parse, "matrix data must be an array of rows");
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : (rows[0].is_array() ? rows[0].size() : 0);
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) fail(ErrorCode::Parse, "matrix rows must have equal length");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = cplx_from_json(rows[i][k]);
  }
  return m;
}

Json to_json(const MatrixDocument& doc) {
  Json j = Json::object();
  j["n"] = doc.m.rows();
  j["data"] = matrix_data(doc.m);
  if (doc.antilinear) j["antilinear"] = true;
  if (doc.label) j["label"] = *doc.label;
  return j;
}

MatrixDocument matrix_document_from_json(const Json& j) {
  MatrixDocument doc;
  const std::size_t n = count(field(j, "n"), "n");
  doc.m = matrix_from_data(field(j, "data"));
  if (doc.m.rows() != n || doc.m.cols() != n) fail(ErrorCode::Parse, "data must be n x n with n = " + std::to_string(n));
  if (j.contains("antilinear")) {
    if (!j["antilinear"].is_boolean()) fail(ErrorCode::Parse, "antilinear must be a boolean");
    doc.antilinear = j["antilinear"].get<bool>();
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) fail(ErrorCode::Parse, "label must be a string");
    doc.label = j["label"].get<std::string>();
  }
  return doc;
}

Json vector_to_json(std::span<const cplx> v) {
  Json data = Json::array();
  for (const cplx& z : v) data.push_back(to_json(z));
  return Json{{"data", data}};
}

CVector vector_from_json(const Json& j) {
  const Json& data = j.is_object() ? field(j, "data") : j;
  if (!data.is_array()) fail(ErrorCode::Parse, "a vector is an array of [re, im] pairs");
  CVector v;
  for (const auto& e : data) v.push_back(cplx_from_json(e));
  return v;
}

Json to_json(const SpectralDecomposition& dec) {
  Json groups = Json::array();
  for (const auto& g : dec.groups) {
    groups.push_back({{"eigenvalue", to_json(g.spec.eigenvalue)},
                      {"block_dims", g.spec.block_dims},
                      {"kind", std::string(to_string(g.kind))},
                      {"pair_id", g.pair_id}});
  }
  return {{"groups", groups}, {"psi", matrix_data(dec.psi)}, {"phi", matrix_data(dec.phi)}};
}

SpectralDecomposition decomposition_from_json(const Json& j, const Tolerance& tol) {
  std::vector<EigenGroup> groups;
  const Json& gs = field(j, "groups");
  if (!gs.is_array()) fail(ErrorCode::Parse, "groups must be an array");
  for (const auto& gj : gs) {
    EigenGroup g;
    g.spec.eigenvalue = cplx_from_json(field(gj, "eigenvalue"));
    for (const auto& d : field(gj, "block_dims")) g.spec.block_dims.push_back(count(d, "block dimension"));
    const Json& kind = field(gj, "kind");
    if (!kind.is_string()) fail(ErrorCode::Parse, "group kind must be a string");
    g.kind = kind_from_string(kind.get<std::string>());
    if (gj.contains("pair_id")) {
      if (!gj["pair_id"].is_number_integer()) fail(ErrorCode::Parse, "pair_id must be an integer");
      g.pair_id = gj["pair_id"].get<int>();
    }
    groups.push_back(std::move(g));
  }
  const CMatrix psi = matrix_from_data(field(j, "psi"));
  SpectralDecomposition dec = make_decomposition(std::move(groups), psi, Tolerance{1e-300, 0.0});
  if (j.contains("phi")) {
    const CMatrix phi = matrix_from_data(j["phi"]);
    if (phi.rows() != dec.n || phi.cols() != dec.n) fail(ErrorCode::Parse, "phi does not match psi");
    dec.phi = phi;
  } else {
    dec.phi = inverse(psi, tol).adjoint();
  }
  const BiorthonormalReport rep = check_biorthonormal(dec);
  const double scale = dec.psi.frobenius_norm() * dec.phi.frobenius_norm();
  if (rep.gram > tol.threshold(dec.n, scale))
    fail(ErrorCode::SingularBasis, "decomposition is not biorthonormal at tolerance");
  return dec;
}

Json to_json(const SynthesisSpec& spec) {
  Json groups = Json::array();
  for (const auto& g : spec.groups) groups.push_back({{"eigenvalue", to_json(g.eigenvalue)}, {"block_dims", g.block_dims}});
  Json j{{"groups", groups}, {"seed", spec.seed}, {"condition", spec.condition}, {"pseudo_hermitian", spec.pseudo_hermitian}};
  if (spec.basis) j["basis"] = matrix_data(*spec.basis);
  return j;
}

SynthesisSpec synthesis_spec_from_json(const Json& j) {
  SynthesisSpec spec;
  const Json& gs = field(j, "groups");
  if (!gs.is_array()) fail(ErrorCode::Parse, "groups must be an array");
  for (const auto& gj : gs) {
    JordanBlockSpec g;
    g.eigenvalue = cplx_from_json(field(gj, "eigenvalue"));
    const Json& dims = gj.contains("block_dims") ? gj["block_dims"] : field(gj, "dims");
    if (!dims.is_array()) fail(ErrorCode::Parse, "block_dims must be an array");
    for (const auto& d : dims) g.block_dims.push_back(count(d, "block dimension"));
    spec.groups.push_back(std::move(g));
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail(ErrorCode::Parse, "seed must be a non-negative integer");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("condition")) spec.condition = finite_number(j["condition"]);
  if (j.contains("pseudo_hermitian")) {
    if (!j["pseudo_hermitian"].is_boolean()) fail(ErrorCode::Parse, "pseudo_hermitian must be a boolean");
    spec.pseudo_hermitian = j["pseudo_hermitian"].get<bool>();
  }
  if (j.contains("basis")) spec.basis = matrix_from_data(j["basis"]);
  return spec;
}

Json to_json(const SignSequence& sigma) { return {{"signs", sigma.signs}}; }

SignSequence sign_sequence_from_json(const Json& j, const SpectralDecomposition& dec) {
  auto ints = [](const Json& a) {
    if (!a.is_array()) fail(ErrorCode::Parse, "signs must be arrays of integers");
    std::vector<int> out;
    for (const auto& e : a) {
      if (!e.is_number_integer()) fail(ErrorCode::Parse, "signs must be +1 or -1");
      out.push_back(e.get<int>());
    }
    return out;
  };
  SignSequence sigma;
  if (j.is_object() && j.contains("labels")) {
    sigma = SignSequence::from_labels(dec, ints(j["labels"]));
  } else {
    const Json& s = field(j, "signs");
    if (!s.is_array()) fail(ErrorCode::Parse, "signs must be an array per group");
    for (const auto& row : s) sigma.signs.push_back(ints(row));
  }
  sigma.validate(dec);
  return sigma;
}

std::string csv_series(const std::vector<double>& times, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns) {
  if (names.size() != columns.size()) fail(ErrorCode::InvalidArgument, "one name per column expected");
  for (const auto& c : columns)
    if (c.size() != times.size()) fail(ErrorCode::DimensionMismatch, "column length differs from the time grid");
  std::string out = "t";
  for (const auto& n : names) out += "," + n;
  out += "\n";
  char buf[40];
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.15g", times[k]);
    out += buf;
    for (const auto& c : columns) {
      std::snprintf(buf, sizeof buf, ",%.15g", c[k]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace pseudoherm::io
