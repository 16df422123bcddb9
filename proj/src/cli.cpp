#include "pseudoherm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pseudoherm/evolution.hpp"
#include "pseudoherm/io.hpp"
#include "pseudoherm/krein.hpp"
#include "pseudoherm/linalg.hpp"
#include "pseudoherm/operators.hpp"
#include "pseudoherm/spectral.hpp"

namespace pseudoherm::cli {
namespace {

using io::Json;

const std::vector<std::string> kOperatorNames{"P", "C", "T", "TP", "CTP", "Pplus", "R", "Tfrak", "Ppaired"};

struct Common {
  std::string tol_text;
  std::string out_path;

  Tolerance tolerance() const { return tol_text.empty() ? default_tolerance() : parse_tolerance(tol_text); }
};

Json tolerance_json(const Tolerance& tol) { return {{"abs", tol.abs}, {"rel", tol.rel}}; }

Json report(const std::string& command, const Tolerance& tol) {
  return {{"command", command}, {"tolerance", tolerance_json(tol)}, {"warnings", Json::array()}};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    io::write_text_file(path, text);
}

void emit(const Json& doc, const std::string& path, std::ostream& out) { emit(io::dump_canonical(doc), path, out); }

struct Hamiltonian {
  CMatrix h;
  SpectralDecomposition dec;
  bool embedded = false;
};

// Uses the decomposition stored next to the matrix when present (model and
// synthesize write one), so that operators follow its basis conventions.
Hamiltonian load_hamiltonian(const std::string& path, const Tolerance& tol, double cluster_radius = 0.0) {
  const Json j = io::read_json_file(path);
  const io::MatrixDocument doc = io::matrix_document_from_json(j);
  if (doc.antilinear) fail(ErrorCode::Parse, "the Hamiltonian must be a linear operator");
  Hamiltonian out;
  out.h = doc.m;
  if (j.contains("decomposition")) {
    out.dec = io::decomposition_from_json(j["decomposition"], tol);
    const double scale = out.dec.psi.frobenius_norm() * out.dec.phi.frobenius_norm() * std::max(1.0, out.h.frobenius_norm());
    if (out.dec.n != out.h.rows() || distance(out.dec.reconstruct(), out.h) > tol.threshold(out.h.rows(), scale))
      fail(ErrorCode::Parse, "embedded decomposition does not reproduce the matrix");
    out.embedded = true;
  } else {
    AnalyzeOptions opts;
    opts.cluster_radius = cluster_radius;
    out.dec = analyze(out.h, tol, opts);
  }
  return out;
}

SignSequence load_sigma(const std::string& spec, const SpectralDecomposition& dec) {
  if (spec.empty() || spec == "canonical") return canonical_sign_sequence(dec);
  return io::sign_sequence_from_json(io::read_json_file(spec), dec);
}

Json groups_json(const SpectralDecomposition& dec) {
  Json groups = Json::array();
  for (const auto& g : dec.groups) {
    groups.push_back({{"eigenvalue", io::to_json(g.spec.eigenvalue)},
                      {"block_dims", g.spec.block_dims},
                      {"kind", std::string(to_string(g.kind))},
                      {"pair_id", g.pair_id},
                      {"real", g.kind == GroupKind::Real}});
  }
  return groups;
}

Json residual(double value, double threshold) {
  return {{"value", value}, {"threshold", threshold}, {"pass", value <= threshold}};
}

Json decomposition_document(const CMatrix& h, const SpectralDecomposition& dec, const std::string& label) {
  Json doc = io::to_json(io::MatrixDocument{h, false, label});
  doc["decomposition"] = io::to_json(dec);
  return doc;
}

// ---- analyze -------------------------------------------------------------

int cmd_analyze(const std::string& input, double cluster_radius, const std::string& dec_out, const Common& c,
                std::ostream& out) {
  const Tolerance tol = c.tolerance();
  const io::MatrixDocument doc = io::matrix_document_from_json(io::read_json_file(input));
  AnalyzeOptions opts;
  opts.cluster_radius = cluster_radius;
  const SpectralDecomposition dec = analyze(doc.m, tol, opts);
  const std::size_t n = dec.n;
  const BiorthonormalReport bio = check_biorthonormal(dec);
  const double basis_scale = dec.psi.frobenius_norm() * dec.phi.frobenius_norm();
  const double thr = tol.threshold(n, 1.0);

  Json r = report("analyze", tol);
  r["n"] = n;
  r["groups"] = groups_json(dec);
  r["diagonalizable"] = dec.diagonalizable();
  r["real_spectrum"] = dec.all_real();
  r["residuals"] = {
      {"gram", residual(bio.gram / std::max(1.0, basis_scale), thr)},
      {"completeness", residual(bio.completeness / std::max(1.0, basis_scale), thr)},
      {"chain", residual(chain_residual(dec, doc.m) / std::max(1.0, doc.m.frobenius_norm() * dec.psi.frobenius_norm()), thr)}};
  for (const auto& w : dec.warnings) r["warnings"].push_back(w);
  if (!dec_out.empty()) emit(decomposition_document(doc.m, dec, doc.label.value_or("analyzed")), dec_out, out);
  emit(r, c.out_path, out);
  return kOk;
}

// ---- construct -----------------------------------------------------------

std::vector<std::string> split_list(const std::string& list) {
  std::vector<std::string> items;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) items.push_back(item);
  return items;
}

io::MatrixDocument build_named(const std::string& name, const SpectralDecomposition& dec, const SignSequence& sigma,
                               const SignSequence& sigma_prime) {
  if (name == "P") return {build_parity(dec, sigma), false, name};
  if (name == "C") return {build_charge(dec, sigma), false, name};
  if (name == "T") return {build_time_reversal(dec).m, true, name};
  if (name == "TP") return {build_tp(dec, sigma).m, true, name};
  if (name == "CTP") return {build_ctp(dec, sigma, sigma_prime).m, true, name};
  if (name == "Pplus") return {build_positive_metric(dec), false, name};
  if (name == "R") return {build_reflecting(dec).r, false, name};
  if (name == "Ppaired") return {build_reflecting(dec).metric, false, name};
  if (name == "Tfrak") return {build_quaternionic_T(dec).m, true, name};
  fail(ErrorCode::InvalidArgument, "unknown operator '" + name + "'");
}

int cmd_construct(const std::string& input, const std::string& ops, const std::string& sigma_spec,
                  const std::string& sigma_prime_spec, const std::string& out_dir, const Common& c, std::ostream& out) {
  const Tolerance tol = c.tolerance();
  const Hamiltonian ham = load_hamiltonian(input, tol);
  const SignSequence sigma = load_sigma(sigma_spec, ham.dec);
  const SignSequence sigma_prime = sigma_prime_spec.empty() ? sigma : load_sigma(sigma_prime_spec, ham.dec);
  const auto names = split_list(ops);
  if (names.empty()) fail(ErrorCode::InvalidArgument, "--ops lists no operators");
  for (const auto& name : names)
    if (std::find(kOperatorNames.begin(), kOperatorNames.end(), name) == kOperatorNames.end())
      fail(ErrorCode::InvalidArgument, "unknown operator '" + name + "'");

  Json r = report("construct", tol);
  r["sigma"] = io::to_json(sigma);
  r["sigma_prime"] = io::to_json(sigma_prime);
  r["basis"] = ham.embedded ? "embedded" : "analyzed";
  r["operators"] = Json::object();
  for (const auto& name : names) {
    const io::MatrixDocument doc = build_named(name, ham.dec, sigma, sigma_prime);
    r["operators"][name] = io::to_json(doc);
    if (!out_dir.empty())
      io::write_text_file((std::filesystem::path(out_dir) / (name + ".json")).string(), io::dump_canonical(io::to_json(doc)));
  }
  emit(r, c.out_path, out);
  return kOk;
}

// ---- classify ------------------------------------------------------------

int cmd_classify(const std::string& metric_path, const std::string& op_path, const Common& c, std::ostream& out) {
  const Tolerance tol = c.tolerance();
  const io::MatrixDocument metric = io::matrix_document_from_json(io::read_json_file(metric_path));
  const io::MatrixDocument op = io::matrix_document_from_json(io::read_json_file(op_path));
  if (metric.antilinear) fail(ErrorCode::Parse, "the metric must be a linear operator");
  const Classification cls = classify({op.m, op.antilinear}, metric.m, tol);
  auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  Json r = report("classify", tol);
  r["class"] = std::string(to_string(cls.cls));
  r["antilinear"] = op.antilinear;
  r["threshold"] = cls.threshold;
  r["residuals"] = {{"unitary", opt(cls.unitary)},
                    {"antiunitary", opt(cls.antiunitary)},
                    {"pseudounitary", opt(cls.pseudounitary)},
                    {"pseudoantiunitary", opt(cls.pseudoantiunitary)}};
  emit(r, c.out_path, out);
  return kOk;
}

// ---- check ---------------------------------------------------------------

struct Checker {
  Tolerance tol;
  std::size_t n = 0;
  Json rows = Json::array();
  bool ok = true;

  void add(const std::string& name, const CMatrix& lhs, const CMatrix& rhs, double scale) {
    const double value = distance(lhs, rhs) / std::max(scale, 1e-300);
    const double thr = tol.threshold(n, 1.0);
    ok = ok && value <= thr;
    rows.push_back({{"name", name}, {"residual", value}, {"threshold", thr}, {"pass", value <= thr}});
  }

  void flag(const std::string& name, bool pass, const std::string& note) {
    ok = ok && pass;
    rows.push_back({{"name", name}, {"pass", pass}, {"note", note}});
  }
};

double fro(const CMatrix& m) { return m.frobenius_norm(); }

void check_antilinear(Checker& ch, const std::string& name, const CMatrix& m, const CMatrix& h, double square_sign) {
  const CMatrix id = CMatrix::identity(h.rows());
  ch.add(name + "^2 = " + (square_sign > 0 ? "I" : "-I"), m * m.conj(), cplx(square_sign) * id, fro(m) * fro(m));
  ch.add("[" + name + ", H] = 0", m * h.conj(), h * m, fro(m) * fro(h));
}

std::string table(const Json& rows, const Json& decisions = Json::object()) {
  std::string outs;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-34s %-6s %-12s %s\n", "relation", "result", "residual", "threshold");
  outs += buf;
  for (const auto& row : rows) {
    const std::string name = row["name"].get<std::string>();
    const char* res = row["pass"].get<bool>() ? "pass" : "FAIL";
    if (row.contains("residual"))
      std::snprintf(buf, sizeof buf, "%-34s %-6s %-12.3e %.3e\n", name.c_str(), res, row["residual"].get<double>(),
                    row["threshold"].get<double>());
    else
      std::snprintf(buf, sizeof buf, "%-34s %-6s %s\n", name.c_str(), res, row["note"].get<std::string>().c_str());
    outs += buf;
  }
  for (auto it = decisions.begin(); it != decisions.end(); ++it) {
    const Json& d = it.value();
    if (!d.contains("exists")) continue;
    outs += it.key() + " (" + d["result"].get<std::string>() + "): " + (d["exists"].get<bool>() ? "exists" : "does not exist");
    if (d.contains("reason")) outs += "; " + d["reason"].get<std::string>();
    outs += "\n";
  }
  return outs;
}

int cmd_check(const std::string& input, const std::string& sigma_spec, const std::string& format, const Common& c,
              std::ostream& out) {
  const Tolerance tol = c.tolerance();
  Json r = report("check", tol);
  Checker ch{tol};

  Hamiltonian ham;
  try {
    ham = load_hamiltonian(input, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotPaired) throw;
    ch.flag("conjugate pairing of the spectrum", false, std::string("NotPaired: ") + e.what());
    r["checks"] = ch.rows;
    r["pass"] = false;
    emit(format == "json" ? io::dump_canonical(r) : table(ch.rows), c.out_path, out);
    return kRefused;
  }
  const CMatrix& h = ham.h;
  const SpectralDecomposition& dec = ham.dec;
  ch.n = dec.n;
  const CMatrix id = CMatrix::identity(dec.n);
  const SignSequence sigma = load_sigma(sigma_spec, dec);
  const bool canonical = sigma_spec.empty() || sigma_spec == "canonical";
  for (const auto& w : dec.warnings) r["warnings"].push_back(w);

  const double basis = fro(dec.psi) * fro(dec.phi);
  ch.add("phi^dagger psi = I", dec.phi.adjoint() * dec.psi, id, basis);
  ch.add("psi phi^dagger = I", dec.psi * dec.phi.adjoint(), id, basis);
  ch.add("H psi = psi J", h * dec.psi, dec.psi * dec.jordan_matrix(), std::max(1.0, fro(h)) * fro(dec.psi));

  const CMatrix p = build_parity(dec, sigma);
  ch.add("P^dagger = P", p.adjoint(), p, fro(p));
  ch.add("P H = H^dagger P", p * h, h.adjoint() * p, fro(p) * std::max(1.0, fro(h)));
  const CMatrix cc = build_charge(dec, sigma);
  ch.add("C^2 = I", cc * cc, id, fro(cc) * fro(cc));
  ch.add("[C, H] = 0", cc * h, h * cc, fro(cc) * std::max(1.0, fro(h)));
  const CMatrix t = build_time_reversal(dec).m;
  ch.add("T^dagger = T", t.transpose(), t, fro(t));
  ch.add("T H^dagger = H T", t * h.adjoint().conj(), h * t, fro(t) * std::max(1.0, fro(h)));
  const CMatrix tp = build_tp(dec, sigma).m;
  check_antilinear(ch, "TP", tp, h, 1.0);
  const CMatrix ctp = build_ctp(dec, sigma, sigma).m;
  check_antilinear(ch, "CTP", ctp, h, 1.0);
  ch.add("[C, TP] = 0", cc * tp, tp * cc.conj(), fro(cc) * fro(tp));

  const CongruenceResult cong = congruence_to_involutory(dec, sigma, std::nullopt, tol);
  ch.add("P~^2 = I", cong.p_tilde * cong.p_tilde, id, 1.0);
  const double trace = cong.p_tilde.trace().real();
  if (canonical)
    ch.flag("trace P~ in {0, 1}", std::abs(trace - std::round(trace)) <= tol.threshold(dec.n, 1.0) &&
                                      (std::round(trace) == 0.0 || std::round(trace) == 1.0),
            "trace " + std::to_string(trace));

  Json decisions = Json::object();
  try {
    const CMatrix pplus = build_positive_metric(dec);
    decisions["positive_metric"] = {{"exists", true}, {"result", "Theorem 1"}};
    ch.flag("P+ positive definite", is_positive_definite(pplus, tol), "Theorem 1");
    ch.add("P+ H = H^dagger P+", pplus * h, h.adjoint() * pplus, fro(pplus) * std::max(1.0, fro(h)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotDiagonalizableReal) throw;
    decisions["positive_metric"] = {{"exists", false}, {"result", "Theorem 1"}, {"reason", e.what()}};
  }
  const PseudounitaryDecision pu = pseudounitary_symmetries_exist(dec);
  decisions["pseudounitary_symmetries"] = {{"exists", pu.exists}, {"result", "Proposition 4, Theorem 2"}};
  if (pu.exists) {
    const CMatrix& rr = pu.reflecting->r;
    const CMatrix& pm = pu.reflecting->metric;
    ch.add("R^2 = I", rr * rr, id, fro(rr) * fro(rr));
    ch.add("[R, H] = 0", rr * h, h * rr, fro(rr) * std::max(1.0, fro(h)));
    ch.add("R^dagger P R = -P", rr.adjoint() * pm * rr, cplx(-1.0) * pm, fro(rr) * fro(rr) * fro(pm));
    check_antilinear(ch, "Tfrak", pu.quaternionic_t->m, h, -1.0);
  }
  decisions["involutory_symmetry"] = {{"exists", involutory_symmetry_exists(dec)}, {"result", "Proposition 1"}};
  const InvolutionSplit split = canonical_involution(cc, tol);
  decisions["charge_multiplicities"] = {{"plus", split.plus}, {"minus", split.minus}};

  r["n"] = dec.n;
  r["basis"] = ham.embedded ? "embedded" : "analyzed";
  r["groups"] = groups_json(dec);
  r["sigma"] = io::to_json(sigma);
  r["canonical_trace"] = trace;
  r["decisions"] = decisions;
  r["checks"] = ch.rows;
  r["pass"] = ch.ok;
  emit(format == "json" ? io::dump_canonical(r) : table(ch.rows, decisions), c.out_path, out);
  return ch.ok ? kOk : kRefused;
}

// ---- evolve --------------------------------------------------------------

int cmd_evolve(const std::string& input, const std::string& metric_spec, const std::string& initial_path,
               const std::string& final_path, double t0, double t1, std::size_t steps, const Common& c,
               std::ostream& out) {
  const Tolerance tol = c.tolerance();
  const Json hj = io::read_json_file(input);
  EvolutionRequest req;
  std::optional<Hamiltonian> ham;
  if (metric_spec == "pplus" || metric_spec == "parity") {
    ham = load_hamiltonian(input, tol);
    req.h = ham->h;
    req.metric = metric_spec == "pplus" ? build_positive_metric(ham->dec) : build_parity(ham->dec);
  } else {
    const io::MatrixDocument doc = io::matrix_document_from_json(hj);
    req.h = doc.m;
    const io::MatrixDocument m = io::matrix_document_from_json(io::read_json_file(metric_spec));
    if (m.antilinear) fail(ErrorCode::Parse, "the metric must be a linear operator");
    req.metric = m.m;
  }
  req.initial = io::vector_from_json(io::read_json_file(initial_path));
  req.times = time_grid(t0, t1, steps);

  std::string csv;
  if (!final_path.empty()) {
    const CVector fin = io::vector_from_json(io::read_json_file(final_path));
    csv = io::csv_series(req.times, {"probability"}, {transition_probability(req, fin, tol)});
  } else {
    csv = io::csv_series(req.times, {"krein_norm", "euclidean_norm"},
                         {krein_norm_series(req, tol), euclidean_norm_series(req)});
  }
  emit(csv, c.out_path, out);
  return kOk;
}

// ---- model / synthesize --------------------------------------------------

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_model(const MashhoonPapiniParams& p, const Common& c, std::ostream& out) {
  const MashhoonPapini mp = mashhoon_papini(p);
  const std::string label = "mashhoon E=" + format_real(p.e) + " r=" + format_real(p.r) + " s=" + format_real(p.s);
  Json doc = decomposition_document(mp.h, mp.dec, label);
  doc["regime"] = std::string(to_string(mp.regime));
  doc["parameters"] = {{"E", p.e}, {"r", p.r}, {"s", p.s}};
  emit(doc, c.out_path, out);
  return kOk;
}

int cmd_synthesize(const std::string& spec_path, std::optional<std::uint64_t> seed, const Common& c,
                   std::ostream& out) {
  const Tolerance tol = c.tolerance();
  SynthesisSpec spec = io::synthesis_spec_from_json(io::read_json_file(spec_path));
  if (seed) spec.seed = *seed;
  const Synthesis syn = synthesize(spec, tol);
  Json doc = decomposition_document(syn.h, syn.dec, "synthesized seed=" + std::to_string(spec.seed));
  doc["seed"] = spec.seed;
  doc["spec"] = io::to_json(spec);
  emit(doc, c.out_path, out);
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool with_tol = true) {
  if (with_tol) sub->add_option("--tol", c.tol_text, "tolerance 'x' or 'abs,rel' (default: PSEUDOHERM_TOL or 1e-10)");
  sub->add_option("--out", c.out_path, "write the result here instead of standard output");
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
      return kUsage;
    case ErrorCode::ClusterAmbiguity:
    case ErrorCode::NonConvergence:
    case ErrorCode::Overflow:
      return kAmbiguous;
    default:
      return kRefused;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral analysis and symmetry operators of pseudo-Hermitian matrices", "pseudoherm"};
  app.require_subcommand(1);
  Common common;

  std::string input, ops, sigma, sigma_prime, out_dir, metric, op, initial, final_state, spec_path, dec_out;
  std::string format = "table";
  double cluster_radius = 0.0, t0 = 0.0, t1 = 0.0;
  std::size_t steps = 1;
  MashhoonPapiniParams mp;
  std::optional<std::uint64_t> seed;

  auto* analyze_cmd = app.add_subcommand("analyze", "eigenvalue groups, Jordan blocks and biorthonormal residuals");
  analyze_cmd->add_option("--input", input, "MatrixDocument file")->required();
  analyze_cmd->add_option("--cluster-radius", cluster_radius, "merge eigenvalues closer than this");
  analyze_cmd->add_option("--decomposition-out", dec_out, "also write the matrix with its decomposition");
  add_common(analyze_cmd, common);

  auto* construct_cmd = app.add_subcommand("construct", "build symmetry operators");
  construct_cmd->add_option("--input", input, "MatrixDocument file")->required();
  construct_cmd->add_option("--ops", ops, "comma list of P,C,T,TP,CTP,Pplus,R,Tfrak,Ppaired")->required();
  construct_cmd->add_option("--sigma", sigma, "'canonical' or a sign file")->default_str("canonical");
  construct_cmd->add_option("--sigma-prime", sigma_prime, "signs of the parity inside CTP (default: --sigma)");
  construct_cmd->add_option("--out-dir", out_dir, "also write one MatrixDocument per operator here");
  add_common(construct_cmd, common);

  auto* classify_cmd = app.add_subcommand("classify", "symmetry class of an operator in a metric");
  classify_cmd->add_option("--metric", metric, "MatrixDocument of the metric")->required();
  classify_cmd->add_option("--op", op, "MatrixDocument of the operator")->required();
  add_common(classify_cmd, common);

  auto* check_cmd = app.add_subcommand("check", "run the invariant battery");
  check_cmd->add_option("--input", input, "MatrixDocument file")->required();
  check_cmd->add_option("--sigma", sigma, "'canonical' or a sign file")->default_str("canonical");
  check_cmd->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
  add_common(check_cmd, common);

  auto* evolve_cmd = app.add_subcommand("evolve", "transition probabilities or Krein norms over a time grid");
  evolve_cmd->add_option("--input", input, "MatrixDocument file")->required();
  evolve_cmd->add_option("--metric", metric, "metric file, 'pplus' or 'parity'")->required();
  evolve_cmd->add_option("--initial", initial, "initial state file")->required();
  evolve_cmd->add_option("--final", final_state, "final state file (probability mode)");
  evolve_cmd->add_option("--t0", t0, "first time")->required();
  evolve_cmd->add_option("--t1", t1, "last time")->required();
  evolve_cmd->add_option("--steps", steps, "number of grid points")->required();
  add_common(evolve_cmd, common);

  auto* model_cmd = app.add_subcommand("model", "model Hamiltonians");
  model_cmd->require_subcommand(1);
  auto* mashhoon_cmd = model_cmd->add_subcommand("mashhoon", "[[E, i r], [-i s, E]]");
  mashhoon_cmd->add_option("--E", mp.e, "diagonal energy")->required();
  mashhoon_cmd->add_option("--r", mp.r, "upper coupling")->required();
  mashhoon_cmd->add_option("--s", mp.s, "lower coupling")->required();
  add_common(mashhoon_cmd, common, false);

  auto* synth_cmd = app.add_subcommand("synthesize", "matrix with a prescribed Jordan structure");
  synth_cmd->add_option("--spec", spec_path, "synthesis spec file")->required();
  synth_cmd->add_option("--seed", seed, "override the seed in the spec");
  add_common(synth_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
    out << target->help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(input, cluster_radius, dec_out, common, out);
    if (construct_cmd->parsed()) return cmd_construct(input, ops, sigma, sigma_prime, out_dir, common, out);
    if (classify_cmd->parsed()) return cmd_classify(metric, op, common, out);
    if (check_cmd->parsed()) return cmd_check(input, sigma, format, common, out);
    if (evolve_cmd->parsed()) return cmd_evolve(input, metric, initial, final_state, t0, t1, steps, common, out);
    if (mashhoon_cmd->parsed()) return cmd_model(mp, common, out);
    if (synth_cmd->parsed()) return cmd_synthesize(spec_path, seed, common, out);
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    err << (code == kRefused ? "refused" : "error") << " (" << to_string(e.code()) << "): " << e.what() << "\n";
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "no command given\n";
  return kUsage;
}

}  // namespace pseudoherm::cli
