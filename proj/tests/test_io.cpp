#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <functional>
#include <limits>

#include "pseudoherm/error.hpp"
#include "pseudoherm/evolution.hpp"
#include "pseudoherm/io.hpp"
#include "test_support.hpp"

using namespace pseudoherm;
using io::Json;
using testsupport::Gen;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (!same_bits(a(i, k).real(), b(i, k).real()) || !same_bits(a(i, k).imag(), b(i, k).imag())) return false;
  return true;
}

double wild(Gen& g) {
  switch (g.integer(0, 4)) {
    case 0: return g.normal();
    case 1: return g.normal() * std::pow(10.0, g.integer(-300, 300));
    case 2: return static_cast<double>(g.integer(-1000, 1000));
    case 3: return std::nextafter(1.0, 2.0) * g.normal();
    default: return g.coin() ? std::numeric_limits<double>::min() : std::numeric_limits<double>::max();
  }
}

}  // namespace

TEST_CASE("canonical JSON sorts keys and prints 17 significant digits") {
  const Json j = io::parse_json(R"({"b": 0.1, "a": [1, 2.5], "c": {"z": true, "y": null, "x": "s\"q"}})");
  const std::string text = io::dump_canonical(j);
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(text.find("\"b\"") < text.find("\"c\""));
  CHECK(text.find("\"x\"") < text.find("\"y\""));
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("[1, 2.5]") != std::string::npos);
  CHECK(text.find(R"("s\"q")") != std::string::npos);
  CHECK(io::dump_canonical(io::parse_json(text)) == text);

  CHECK(code_of([] { io::parse_json("{\"a\": }"); }) == ErrorCode::Parse);
  CHECK(code_of([] { io::parse_json("[NaN]"); }) == ErrorCode::Parse);
  CHECK(code_of([] { io::read_json_file("/nonexistent/file.json"); }) == ErrorCode::Parse);
}

TEST_CASE("property: canonical documents survive parse and write byte for byte") {
  Gen g(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(g.integer(0, 5));
    CMatrix m(n);
    for (auto& z : m.values()) z = cplx(wild(g), wild(g));
    io::MatrixDocument doc{m, g.coin(), std::nullopt};
    if (g.coin()) doc.label = "label " + std::to_string(trial);
    const std::string text = io::dump_canonical(io::to_json(doc));
    const Json back = io::parse_json(text);
    CAPTURE(trial);
    CHECK(io::dump_canonical(back) == text);
    const io::MatrixDocument parsed = io::matrix_document_from_json(back);
    // -0.0 is written as 0, everything else keeps its bits
    for (auto& z : m.values()) z = cplx(z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag());
    CHECK(same_bits(parsed.m, m));
    CHECK(parsed.antilinear == doc.antilinear);
    CHECK(parsed.label == doc.label);
  }
}

TEST_CASE("matrix documents reject malformed input") {
  auto parse = [](const char* text) { io::matrix_document_from_json(io::parse_json(text)); };
  CHECK(code_of([&] { parse(R"({"data": [[[1, 0]]]})"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse(R"({"n": 2, "data": [[[1, 0]]]})"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse(R"({"n": 1, "data": [[[1, 0, 3]]]})"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse(R"({"n": 2, "data": [[[1, 0], [0, 0]], [[1, 0]]]})"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse(R"({"n": 1, "data": [[["a", 0]]]})"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse(R"({"n": 1, "data": [[[1, 0]]], "antilinear": 1})"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse(R"({"n": -1, "data": []})"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse(R"({"n": 1, "data": [[[1e999, 0]]]})"); }) == ErrorCode::Parse);

  // a bare real is accepted as a complex entry
  const auto doc = io::matrix_document_from_json(io::parse_json(R"({"n": 1, "data": [[2.5]]})"));
  CHECK(doc.m(0, 0) == cplx(2.5, 0.0));
  const auto empty = io::matrix_document_from_json(io::parse_json(R"({"n": 0, "data": []})"));
  CHECK(empty.m.rows() == 0);
}

TEST_CASE("vector documents") {
  const CVector v{cplx(1.0, -2.0), cplx(0.25, 0.0)};
  const CVector back = io::vector_from_json(io::parse_json(io::dump_canonical(io::vector_to_json(v))));
  CHECK(back == v);
  CHECK(io::vector_from_json(io::parse_json("[[0, 1], 3]")) == CVector{cplx(0.0, 1.0), cplx(3.0, 0.0)});
  CHECK(code_of([] { io::vector_from_json(io::parse_json(R"({"values": []})")); }) == ErrorCode::Parse);
}

TEST_CASE("decomposition documents round-trip") {
  Gen g(19);
  for (int trial = 0; trial < 30; ++trial) {
    const auto syn = synthesize(testsupport::random_spec(g, 7, 3, 1e2));
    const std::string text = io::dump_canonical(io::to_json(syn.dec));
    const SpectralDecomposition back = io::decomposition_from_json(io::parse_json(text));
    CHECK(same_bits(back.psi, syn.dec.psi));
    CHECK(same_bits(back.phi, syn.dec.phi));
    REQUIRE(back.groups.size() == syn.dec.groups.size());
    for (std::size_t k = 0; k < back.groups.size(); ++k) {
      CHECK(back.groups[k].kind == syn.dec.groups[k].kind);
      CHECK(back.groups[k].pair_id == syn.dec.groups[k].pair_id);
      CHECK(back.groups[k].offset == syn.dec.groups[k].offset);
      CHECK(back.groups[k].spec.block_dims == syn.dec.groups[k].spec.block_dims);
    }
  }
  // ill-conditioned model bases keep their closed-form duals
  const auto mp = mashhoon_papini({1.0, 1.0, 1e-14});
  const auto back = io::decomposition_from_json(io::to_json(mp.dec));
  CHECK(same_bits(back.phi, mp.dec.phi));

  Json bad = io::to_json(mp.dec);
  bad["phi"] = io::matrix_data(CMatrix::identity(2));
  CHECK(code_of([&] { io::decomposition_from_json(bad); }) == ErrorCode::SingularBasis);
  bad = io::to_json(mp.dec);
  bad["groups"][0]["kind"] = "sideways";
  CHECK(code_of([&] { io::decomposition_from_json(bad); }) == ErrorCode::Parse);
}

TEST_CASE("synthesis specs") {
  const Json j = io::parse_json(R"({"groups": [{"eigenvalue": 0, "block_dims": [1]},
                                               {"eigenvalue": [1, 2], "dims": [2]},
                                               {"eigenvalue": [1, -2], "dims": [2]}],
                                    "seed": 42, "condition": 5.5})");
  const SynthesisSpec spec = io::synthesis_spec_from_json(j);
  REQUIRE(spec.groups.size() == 3);
  CHECK(spec.groups[1].eigenvalue == cplx(1.0, 2.0));
  CHECK(spec.groups[2].block_dims == std::vector<std::size_t>{2});
  CHECK(spec.seed == 42);
  CHECK(spec.condition == 5.5);
  CHECK(spec.pseudo_hermitian);
  const SynthesisSpec again = io::synthesis_spec_from_json(io::parse_json(io::dump_canonical(io::to_json(spec))));
  CHECK(io::dump_canonical(io::to_json(again)) == io::dump_canonical(io::to_json(spec)));

  CHECK(code_of([] { io::synthesis_spec_from_json(io::parse_json(R"({"groups": [{"eigenvalue": 0}]})")); }) ==
        ErrorCode::Parse);
  CHECK(code_of([] { io::synthesis_spec_from_json(io::parse_json(R"({"groups": [], "seed": -3})")); }) == ErrorCode::Parse);
}

TEST_CASE("sign sequence documents") {
  SynthesisSpec spec;
  spec.groups = {{0.0, {2, 1}}, {cplx(1.0, 1.0), {1}}, {cplx(1.0, -1.0), {1}}};
  const auto syn = synthesize(spec);
  const SignSequence canonical = canonical_sign_sequence(syn.dec);
  const SignSequence back = io::sign_sequence_from_json(io::to_json(canonical), syn.dec);
  CHECK(back.signs == canonical.signs);
  const SignSequence from_labels = io::sign_sequence_from_json(io::parse_json(R"({"labels": [-1, 1, -1]})"), syn.dec);
  CHECK(from_labels.labels(syn.dec) == std::vector<int>{-1, 1, -1});
  CHECK(code_of([&] { io::sign_sequence_from_json(io::parse_json(R"({"labels": [2, 1, 1]})"), syn.dec); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { io::sign_sequence_from_json(io::parse_json(R"({"signs": [[1]]})"), syn.dec); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { io::sign_sequence_from_json(io::parse_json(R"({"signs": [[1.5]]})"), syn.dec); }) ==
        ErrorCode::Parse);
}

TEST_CASE("CSV series") {
  const std::string csv = io::csv_series({0.0, 0.5}, {"a", "b"}, {{1.0 / 3.0, 2.0}, {-1e-20, 0.1}});
  CHECK(csv == "t,a,b\n0,0.333333333333333,-1e-20\n0.5,2,0.1\n");
  CHECK(code_of([] { io::csv_series({0.0}, {"a"}, {{1.0, 2.0}}); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] { io::csv_series({0.0}, {"a", "b"}, {{1.0}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("files") {
  const auto path = (std::filesystem::temp_directory_path() / "pseudoherm_io_test.json").string();
  const std::string text = io::dump_canonical(io::to_json(io::MatrixDocument{CMatrix::identity(2), false, "I"}));
  io::write_text_file(path, text);
  CHECK(io::dump_canonical(io::read_json_file(path)) == text);
  std::filesystem::remove(path);
  CHECK(code_of([&] { io::write_text_file("/nonexistent/dir/x.json", text); }) == ErrorCode::InvalidArgument);
}
