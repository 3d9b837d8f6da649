#pragma once
// The gks command line: one subcommand per computation, JSON (or a flat
// aligned table) on stdout, diagnostics on stderr.
//
// Exit codes: 0 ok, 2 bad input, 3 precision starvation, 4 invariant failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dwork_frobenius.hpp"
#include "gkz_ode.hpp"
#include "lfunction.hpp"
#include "newton_hodge.hpp"
#include "reduction.hpp"

namespace gks::cli {

using json = nlohmann::json;  // std::map underneath, so keys come out sorted

inline constexpr const char* kVersion = "1.0.0";

inline json module_versions() {
  return {{"cli", kVersion},          {"cyclotomic", "1.0.0"}, {"dwork-frobenius", "1.0.0"},
          {"exact-core", "1.0.0"},    {"finite-field", "1.0.0"}, {"gkz-ode", "1.0.0"},
          {"lfunction", "1.0.0"},     {"newton-hodge", "1.0.0"}, {"reduction", "1.0.0"}};
}

enum Exit { kOk = 0, kPrecondition = 2, kPrecision = 3, kInvariant = 4 };

// ----------------------------------------------------------------------------
// Encoding. Rationals are "n/d" strings; integers stay JSON numbers while they
// fit in 64 bits and fall back to decimal strings past that.

inline json enc(const ExactInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}
inline json enc(const ExactRat& x) { return to_string(x); }
inline json enc(LatticePoint v) { return json::array({v.v1, v.v2}); }

inline json enc(const CycloInt& x) {
  json c = json::array();
  for (auto& v : x.coeffs()) c.push_back(enc(v));
  return {{"coeffs", c}, {"zeta_p", x.p()}};
}

inline json enc(const PiAdicScalar& x) {
  return {{"digits", x.digits()}, {"p", x.p()}, {"pi_relation", "pi^(p-1)=-p"}, {"precision", x.precision()}};
}

inline json enc(const RationalPolygon& P) {
  json v = json::array(), s = json::array();
  for (auto& pt : P.vertices) v.push_back(json::array({enc(pt.x), enc(pt.y)}));
  for (auto& [slope, len] : P.slopes())
    s.push_back(json::array({enc(slope), len.get_den() == 1 ? enc(ExactInt(len.get_num())) : enc(len)}));
  return {{"slopes", s}, {"vertices", v}};
}

inline json enc(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(enc(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

inline json enc(const RFMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
    rows.push_back(r);
  }
  return rows;
}

// Nonzero entries only; `shift` says the stored values are π^shift·U.
inline json enc(const FrobMatrix& U) {
  json entries = json::array();
  for (long i = 0; i < U.N; ++i)
    for (long j = 0; j < U.N; ++j)
      for (long x = U.low; x < U.L; ++x) {
        auto& v = U.at(i, j, x);
        if (v.is_zero()) continue;
        entries.push_back({{"col", j}, {"lambda_exp", x}, {"row", i}, {"value", enc(v)}});
      }
  return {{"N", U.N}, {"entries", entries}, {"lambda_range", json::array({U.low, U.L})}, {"pi_precision", U.M},
          {"shift", U.shift}};
}

// ----------------------------------------------------------------------------
// Table output: one "path  value" row per leaf, paths in key order.

inline void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows) {
  auto nested = [](const json& x) {
    for (auto& e : x)
      if (e.is_object() || (e.is_array() && !e.empty() && (e[0].is_object() || e[0].is_array()))) return true;
    return false;
  };
  if (j.is_object() && !j.empty()) {
    for (auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, rows);
  } else if (j.is_array() && nested(j)) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

inline std::string render(const json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  std::size_t w = 0;
  for (auto& r : rows) w = std::max(w, r.first.size());
  std::ostringstream os;
  for (auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(w + 2)) << k << v << "\n";
  return os.str();
}

// ----------------------------------------------------------------------------
// Job spec: every input of a run, keyed by flag name, so a document can be re-run.

struct JobSpec {
  std::string subcommand;
  long a = 0, b = 0, c = 0, d = 0;
  long p = 0;
  std::vector<long> lambda;
  long k = 0;
  long M = 8, W_max = 0, L_max = 0;
  long order = 0;
  long target = 0, residual_L = 0;
  long v1 = 0, v2 = 0;
  std::string ring = "rational";
  unsigned workers = 1;
  std::string format = "json";

  FamilyParams params() const { return FamilyParams(a, b, c, d); }
};

// Which fields each subcommand takes (beyond a, b, c, d and format).
inline const std::map<std::string, std::vector<std::string>>& command_fields() {
  static const std::map<std::string, std::vector<std::string>> t{
      {"basis", {}},
      {"hodge", {}},
      {"ordinary", {"p"}},
      {"sums", {"p", "lambda", "k", "workers"}},
      {"lpoly", {"p", "lambda", "workers"}},
      {"newton", {"p", "lambda"}},
      {"compare-polygons", {"p", "lambda"}},
      {"reduce", {"v1", "v2", "ring", "p", "lambda"}},
      {"connection", {}},
      {"gkz", {}},
      {"ode-solve", {"order"}},
      {"frobenius", {"p", "M", "W_max", "L_max"}},
      {"frobenius-check", {"p", "lambda", "M", "W_max", "L_max", "target", "residual_L"}},
  };
  return t;
}

inline json job_json(const JobSpec& j) {
  json o{{"a", j.a}, {"b", j.b}, {"c", j.c}, {"d", j.d}, {"format", j.format}, {"subcommand", j.subcommand}};
  for (auto& f : command_fields().at(j.subcommand)) {
    if (f == "p") o[f] = j.p;
    else if (f == "lambda") o[f] = j.lambda;
    else if (f == "k") o[f] = j.k;
    else if (f == "workers") o[f] = j.workers;
    else if (f == "M") o[f] = j.M;
    else if (f == "W_max") o[f] = j.W_max;
    else if (f == "L_max") o[f] = j.L_max;
    else if (f == "order") o[f] = j.order;
    else if (f == "target") o[f] = j.target;
    else if (f == "residual_L") o[f] = j.residual_L;
    else if (f == "v1") o[f] = j.v1;
    else if (f == "v2") o[f] = j.v2;
    else if (f == "ring") o[f] = j.ring;
  }
  return o;
}

// Inverse of job_json: the argument list that reproduces the job.
inline std::vector<std::string> job_argv(const json& job) {
  require(job.is_object() && job.contains("subcommand"), "rerun: document has no job spec");
  std::vector<std::string> argv{job.at("subcommand").get<std::string>()};
  for (auto& [k, v] : job.items()) {
    if (k == "subcommand") continue;
    if (v.is_array()) {
      if (v.empty()) continue;
      argv.push_back("--" + k);
      for (auto& x : v) argv.push_back(x.dump());
    } else {
      argv.push_back("--" + k);
      argv.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
  return argv;
}

// ----------------------------------------------------------------------------
// Subcommands. Each fills `doc` and may flag an invariant failure it found
// while still producing its report.

struct Outcome {
  json doc;
  json precisions = {{"arithmetic", "exact"}};
  bool invariant_ok = true;
};

inline void require_p(const JobSpec& j) { require(j.p != 0, "--p is required"); }
inline void require_lambda(const JobSpec& j) { require(!j.lambda.empty(), "--lambda is required"); }

inline json basis_doc(const FamilyParams& f) {
  auto B = basis_set(f);
  json pts = json::array();
  for (auto& v : B.points) pts.push_back({{"m", enc(m_of(f, v))}, {"point", enc(v)}, {"weight", enc(weight_of(f, v))}});
  return pts;
}

inline json profile_doc(const WeightProfile& w) {
  json buckets = json::array();
  for (auto& [k, n] : w.buckets) buckets.push_back(json::array({enc(rat(k, w.denominator)), n}));
  return buckets;
}

inline Outcome cmd_basis(const JobSpec& j) {
  auto f = j.params();
  Outcome o;
  auto B = basis_set(f);
  o.doc["N"] = f.N();
  o.doc["basis"] = basis_doc(f);
  o.doc["cardinality_matches"] = static_cast<long>(B.points.size()) == f.N();
  o.doc["lambda_weight"] = enc(lambda_weight(f));
  o.doc["weight_profile"] = profile_doc(weight_profile(f));
  o.invariant_ok = o.doc["cardinality_matches"];
  return o;
}

inline Outcome cmd_hodge(const JobSpec& j) {
  auto f = j.params();
  Outcome o;
  auto H = hodge_polygon(f);
  json e = enc(H);
  o.doc["N"] = f.N();
  o.doc["slopes"] = e["slopes"];
  o.doc["vertices"] = e["vertices"];
  o.doc["hodge_numbers"] = profile_doc(hodge_numbers(f));
  o.doc["basis_weights"] = profile_doc(weight_profile(f));
  o.doc["basis_weights_give_hodge"] = basis_weight_polygon(f) == H;
  return o;
}

inline Outcome cmd_ordinary(const JobSpec& j) {
  require_p(j);
  auto r = ordinarity_report(j.params(), j.p);
  Outcome o;
  json faces = json::array();
  for (auto& fc : r.faces) {
    json inv = json::array();
    for (auto& x : fc.invariant_factors) inv.push_back(enc(x));
    faces.push_back({{"abs_det", enc(fc.abs_det)}, {"invariant_factors", inv}, {"matrix", enc(fc.matrix)},
                     {"nondegenerate", fc.nondegenerate}, {"ordinary_sufficient", fc.ordinary_sufficient}});
  }
  o.doc = {{"congruence", r.congruence}, {"criterion", r.criterion()}, {"faces", faces},
           {"gcd_ad_is_one", r.gcd_ad_is_one}, {"p_coprime_to_abcd", r.p_coprime_to_abcd}};
  return o;
}

inline json sums_doc(const ExpSumSeries& s) {
  json a = json::array();
  for (auto& x : s.sums) a.push_back(enc(x));
  return a;
}

inline Outcome cmd_sums(const JobSpec& j) {
  require_p(j);
  require_lambda(j);
  require(j.k >= 1, "--k must be at least 1");
  Outcome o;
  json cases = json::array();
  for (long lam : j.lambda) {
    auto s = exp_sums(j.params(), j.p, lam, static_cast<unsigned>(j.k), j.workers);
    cases.push_back({{"k_range", json::array({1, j.k})}, {"lambda", lam}, {"sums", sums_doc(s)}});
  }
  o.doc["cases"] = cases;
  return o;
}

inline LPolynomial lpoly_for(const JobSpec& j, long lam, unsigned workers, ExpSumSeries* keep = nullptr) {
  auto f = j.params();
  auto s = exp_sums(f, j.p, lam, static_cast<unsigned>(f.N()), workers);
  if (keep) *keep = s;
  return l_polynomial(s);
}

inline Outcome cmd_lpoly(const JobSpec& j) {
  require_p(j);
  require_lambda(j);
  Outcome o;
  json cases = json::array();
  for (long lam : j.lambda) {
    ExpSumSeries s;
    auto P = lpoly_for(j, lam, j.workers, &s);
    json c = json::array();
    for (auto& x : P.coeffs) c.push_back(enc(x));
    cases.push_back({{"coeffs", c}, {"degree", P.degree()}, {"lambda", lam}, {"sums", sums_doc(s)}});
  }
  o.doc["cases"] = cases;
  return o;
}

inline json ord_list(const LPolynomial& P) {
  json a = json::array();
  for (auto& x : P.coeffs) {
    auto q = ord_q(x);
    a.push_back(q ? enc(*q) : json(nullptr));
  }
  return a;
}

inline Outcome cmd_newton(const JobSpec& j) {
  require_p(j);
  require_lambda(j);
  Outcome o;
  json cases = json::array();
  for (long lam : j.lambda) {
    auto P = lpoly_for(j, lam, 1);
    json e = enc(newton_polygon(P));
    cases.push_back({{"coeff_ord_q", ord_list(P)}, {"lambda", lam}, {"slopes", e["slopes"]}, {"vertices", e["vertices"]}});
  }
  o.doc["cases"] = cases;
  return o;
}

inline Outcome cmd_compare(const JobSpec& j) {
  require_p(j);
  require_lambda(j);
  Outcome o;
  auto H = hodge_polygon(j.params());
  bool all_equal = true;
  json cases = json::array();
  for (long lam : j.lambda) {
    auto NP = newton_polygon(lpoly_for(j, lam, 1));
    bool eq = NP == H, above = polygon_above(NP, H);
    all_equal = all_equal && eq;
    o.invariant_ok = o.invariant_ok && above;
    cases.push_back({{"equal", eq}, {"lambda", lam}, {"newton", enc(NP)}, {"newton_above_hodge", above}});
  }
  o.doc = {{"cases", cases}, {"equal", all_equal}, {"hodge", enc(H)}};
  return o;
}

template <class Ring>
Outcome reduce_with(const JobSpec& j, const Ring& ring) {
  auto f = j.params();
  Reducer<Ring> red(f, ring);
  const LatticePoint v{j.v1, j.v2};
  CohomClass<typename Ring::Scalar> h{{v, ring.one()}};
  auto cert = red.reduce_to_basis(h);
  Outcome o;
  json coords = json::array();
  for (auto& [u, c] : cert.coords) coords.push_back({{"point", enc(u)}, {"value", ring.str(c)}});
  bool ok = verify_certificate(cert, h, f, ring);
  o.doc = {{"certificate", {{"h1_terms", cert.h1.size()}, {"h2_terms", cert.h2.size()}, {"verified", ok}}},
           {"coords", coords},
           {"monomial", enc(v)},
           {"ring", ring.name()}};
  o.invariant_ok = ok;
  return o;
}

inline Outcome cmd_reduce(const JobSpec& j) {
  if (j.ring == "rational") return reduce_with(j, RationalFunctionScalars{});
  require(j.ring == "prime", "--ring must be 'rational' or 'prime'");
  require_p(j);
  require(j.lambda.size() == 1, "--ring prime takes exactly one --lambda");
  return reduce_with(j, PrimeFieldScalars(j.p, j.lambda[0]));
}

inline Outcome cmd_connection(const JobSpec& j) {
  auto f = j.params();
  auto G = connection_on_flag_basis(f);
  auto C = companion_matrix(picard_fuchs_operator(f));
  Outcome o;
  bool same = G.rows() == C.rows();
  for (std::size_t r = 0; same && r < G.rows(); ++r)
    for (std::size_t c = 0; same && c < G.cols(); ++c) same = G(r, c) == C(r, c);
  o.doc = {{"N", f.N()}, {"matches_companion", same}, {"matrix", enc(G)}};
  o.invariant_ok = same;
  return o;
}

inline Outcome cmd_gkz(const JobSpec& j) {
  auto f = j.params();
  auto g = gkz_operators(f);
  auto op = picard_fuchs_operator(f);
  Outcome o;
  json lat = json::array(), box = json::array(), coeffs = json::array(), roots = json::array();
  for (auto& x : g.lattice) lat.push_back(enc(x));
  for (auto& x : g.box_exponents) box.push_back(enc(x));
  for (auto& q : op.coeffs) coeffs.push_back(to_string(q));
  for (auto& r : indicial_roots(op, f)) roots.push_back(enc(r));
  o.doc = {{"box_exponents", box},
           {"d1_over_dlambda", enc(g.d1_over_dlambda)},
           {"d2_over_dlambda", enc(g.d2_over_dlambda)},
           {"indicial_roots", roots},
           {"lattice", lat},
           {"operator", {{"coeffs_in_theta", coeffs}, {"order", op.order()}}}};
  return o;
}

inline Outcome cmd_ode(const JobSpec& j) {
  require(j.order >= 1, "--order must be at least 1");
  auto f = j.params();
  auto op = picard_fuchs_operator(f);
  auto sols = formal_solutions(op, j.order, f);
  Outcome o;
  json out = json::array();
  for (auto& s : sols) {
    bool zero = true;
    for (auto& row : apply_operator(op, s).c)
      for (auto& x : row) zero = zero && x == 0;
    o.invariant_ok = o.invariant_ok && zero;
    json c = json::array();
    for (auto& row : s.c) {
      json r = json::array();
      for (auto& x : row) r.push_back(enc(x));
      c.push_back(r);
    }
    out.push_back({{"coeffs", c}, {"log_degree", s.log_degree()}, {"residual_zero", zero}, {"rho", enc(s.rho)}});
  }
  bool indep = solutions_independent(sols);
  o.invariant_ok = o.invariant_ok && indep && static_cast<long>(sols.size()) == f.N();
  o.doc = {{"independent", indep}, {"solutions", out}};
  o.precisions = {{"arithmetic", "exact"}, {"series_order", j.order}};
  return o;
}

inline FrobeniusResult frobenius_for(const JobSpec& j) {
  require_p(j);
  return alpha0_matrix(j.params(), j.p, {j.M, j.W_max, j.L_max});
}

inline json frob_precisions(const FrobeniusResult& fr) {
  return {{"L_max", fr.L_max}, {"M", fr.M}, {"W_max", fr.W_max}, {"arithmetic", "pi-adic"},
          {"omitted_bound", enc(fr.omitted_bound)}, {"reduction_loss", enc(fr.loss)}};
}

inline Outcome cmd_frobenius(const JobSpec& j) {
  auto fr = frobenius_for(j);
  Outcome o;
  o.doc = {{"U", enc(fr.U)},
           {"min_ord", fr.min_ord},
           {"targets_reduced", fr.targets_reduced},
           {"terms_skipped", fr.terms_skipped},
           {"terms_used", fr.terms_used}};
  o.precisions = frob_precisions(fr);
  return o;
}

inline Outcome cmd_frobenius_check(const JobSpec& j) {
  auto fr = frobenius_for(j);
  const long target = j.target > 0 ? j.target : fr.M / 2;
  const long L = j.residual_L > 0 ? j.residual_L : fr.L_max;
  auto G = padic_connection(j.params(), j.p, fr.U.M, L);
  auto rep = horizontality_residual(fr.U, G, target, L);
  Outcome o;
  o.doc["horizontality"] = {{"L", rep.L},
                            {"min_ord", rep.min_ord},
                            {"precision", rep.precision},
                            {"target", rep.target},
                            {"vanishes", rep.vanishes},
                            {"vanishing_variants", rep.vanishing_variants}};
  o.invariant_ok = rep.vanishes;
  json spec = json::array();
  for (long lam : j.lambda) {
    auto s = specialize_det_compare(fr, lam, lpoly_for(j, lam, 1), target);
    json det = json::array(), lc = json::array();
    for (auto& x : s.det_coeffs) det.push_back(enc(x));
    for (auto& x : s.l_coeffs) lc.push_back(enc(x));
    spec.push_back({{"agree", s.agree}, {"det_coeffs", det}, {"diff_ord", s.diff_ord}, {"l_coeffs", lc},
                    {"lambda", lam}, {"target", s.target}, {"teichmuller", enc(s.teichmuller)}});
    o.invariant_ok = o.invariant_ok && s.agree;
  }
  o.doc["specialization"] = spec;
  o.precisions = frob_precisions(fr);
  o.precisions["check_target"] = target;
  o.precisions["residual_L"] = L;
  return o;
}

inline Outcome dispatch(const JobSpec& j) {
  using F = std::function<Outcome(const JobSpec&)>;
  static const std::map<std::string, F> table{
      {"basis", cmd_basis},         {"hodge", cmd_hodge},
      {"ordinary", cmd_ordinary},   {"sums", cmd_sums},
      {"lpoly", cmd_lpoly},         {"newton", cmd_newton},
      {"compare-polygons", cmd_compare}, {"reduce", cmd_reduce},
      {"connection", cmd_connection}, {"gkz", cmd_gkz},
      {"ode-solve", cmd_ode},       {"frobenius", cmd_frobenius},
      {"frobenius-check", cmd_frobenius_check},
  };
  return table.at(j.subcommand)(j);
}

// ----------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

// Runs `body`, mapping the error taxonomy onto exit codes.
template <class F>
int guarded(F&& body, std::ostream& err) {
  try {
    return body();
  } catch (const PreconditionError& e) {
    err << "gks: precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const PrecisionError& e) {
    err << "gks: precision: " << e.what() << "\n";
    return kPrecision;
  } catch (const InvariantError& e) {
    err << "gks: invariant: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    err << "gks: internal error: " << e.what() << "\n";
    return kInvariant;
  }
}

inline int run_job(const JobSpec& j, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        require(j.format == "json" || j.format == "table", "--format must be 'json' or 'table'");
        require(j.workers >= 1, "--workers must be at least 1");
        Outcome o = dispatch(j);
        json doc = o.doc;
        doc["job"] = job_json(j);
        doc["provenance"] = {{"modules", module_versions()}, {"precisions", o.precisions}, {"program", "gks"},
                             {"version", kVersion}};
        out << render(doc, j.format);
        if (!o.invariant_ok) {
          err << "gks: invariant check failed (see report)\n";
          return static_cast<int>(kInvariant);
        }
        return static_cast<int>(kOk);
      },
      err);
}

inline int rerun_file(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "gks: cannot read " << path << "\n";
    return kPrecondition;
  }
  json doc;
  try {
    doc = json::parse(in);
    return run(job_argv(doc.at("job")), out, err);
  } catch (const std::exception& e) {
    err << "gks: rerun: " << e.what() << "\n";
    return kPrecondition;
  }
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for the family x1^a + x2^b + L/(x1^c x2^d)", "gks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  JobSpec j;
  std::string rerun_path;
  std::map<std::string, std::string> help{
      {"basis", "cohomology basis B with weights"},
      {"hodge", "Hodge polygon and weight profile"},
      {"ordinary", "ordinarity criterion at p (face determinants, Smith forms)"},
      {"sums", "exponential sums S_1..S_k by enumeration"},
      {"lpoly", "L-polynomial from S_1..S_N"},
      {"newton", "Newton polygon of the L-polynomial"},
      {"compare-polygons", "Newton polygon against Hodge polygon"},
      {"reduce", "reduce x^(v1,v2) onto the basis with a certificate"},
      {"connection", "connection matrix on the flag basis"},
      {"gkz", "relation lattice and Picard-Fuchs operator"},
      {"ode-solve", "formal solutions of the Picard-Fuchs operator"},
      {"frobenius", "truncated Frobenius matrix U(L) on the flag basis"},
      {"frobenius-check", "horizontality residual and specialization of U"},
  };
  for (auto& [name, fields] : command_fields()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->callback([&j, n = name] { j.subcommand = n; });
    sub->add_option("--a", j.a, "exponent of x1")->required();
    sub->add_option("--b", j.b, "exponent of x2")->required();
    sub->add_option("--c", j.c, "x1 exponent in the deformation term")->required();
    sub->add_option("--d", j.d, "x2 exponent in the deformation term")->required();
    sub->add_option("--format", j.format, "json or table")->capture_default_str();
    for (auto& f : fields) {
      if (f == "p") sub->add_option("--p", j.p, "odd prime");
      else if (f == "lambda") sub->add_option("--lambda", j.lambda, "value(s) of lambda in F_p")->expected(1, -1);
      else if (f == "k") sub->add_option("--k", j.k, "compute S_1..S_k")->required();
      else if (f == "workers") sub->add_option("--workers", j.workers, "threads for torus enumeration")->capture_default_str();
      else if (f == "M") sub->add_option("--M", j.M, "pi-precision of U")->capture_default_str();
      else if (f == "W_max") sub->add_option("--W_max,--W-max", j.W_max, "weight cutoff (0 = certified minimum)")->capture_default_str();
      else if (f == "L_max") sub->add_option("--L_max,--L-max", j.L_max, "lambda-degree cutoff (0 = 2p*ab+10)")->capture_default_str();
      else if (f == "order") sub->add_option("--order", j.order, "series truncation order")->required();
      else if (f == "target") sub->add_option("--target", j.target, "required pi-valuation (0 = M/2)")->capture_default_str();
      else if (f == "residual_L") sub->add_option("--residual_L,--residual-L", j.residual_L, "lambda-truncation of the residual (0 = L_max)")->capture_default_str();
      else if (f == "v1") sub->add_option("--v1", j.v1, "first exponent of the monomial")->required();
      else if (f == "v2") sub->add_option("--v2", j.v2, "second exponent of the monomial")->required();
      else if (f == "ring") sub->add_option("--ring", j.ring, "rational or prime")->capture_default_str();
    }
  }
  auto* rr = app.add_subcommand("rerun", "re-run the job embedded in a gks JSON document");
  rr->add_option("file", rerun_path, "document written by gks")->required();

  std::vector<const char*> argv{"gks"};
  for (auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gks: " << e.what() << "\n\n";
    auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kPrecondition;
  }
  if (rr->parsed()) return rerun_file(rerun_path, out, err);
  return run_job(j, out, err);
}

}  // namespace gks::cli
