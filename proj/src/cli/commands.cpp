#include "tms/cli/commands.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tms/cli/json_writer.hpp"
#include "tms/cli/problem_file.hpp"
#include "tms/rigidity.hpp"
#include "tms/spectrum.hpp"

#ifndef TMS_VERSION
#define TMS_VERSION "0.0.0"
#endif

namespace tms::cli {

namespace {

struct Options {
  std::string input;
  std::string other;
  std::string word;
  std::string values;
  std::string table = "spectrum_curve.csv";
  double qmin = -3.0;
  double qmax = 3.0;
  int steps = 25;
  double tol = 1e-10;
  int samples = 1000;
  std::uint64_t seed = 0;
};

struct Outcome {
  Json doc;
  int code = kExitOk;
};

// Tolerances shared by the checks and echoed in reports.
constexpr double kCharPolyTolerance = 1e-10;
constexpr double kPerronTolerance = 1e-14;
constexpr double kCohomologyTolerance = 1e-10;

std::string word_text(std::span<const Symbol> w, int n) { return format_word(w, n); }
std::string edge_text(const Edge& e, int n) { return format_word(Word{e.from, e.to}, n); }

Json one_based(std::span<const Symbol> symbols) {
  Json out = Json::array();
  for (const Symbol s : symbols) out.push_back(s + 1);
  return out;
}

Json edge_pair(const std::optional<std::pair<Edge, Edge>>& pair, int n) {
  if (!pair) return nullptr;
  return Json::array({edge_text(pair->first, n), edge_text(pair->second, n)});
}

Json rational_edge_array(const TransitionMatrix& a, const RationalMatrix& q) {
  Json rows = Json::array();
  for (int i = 0; i < a.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < a.size(); ++j) row.push_back(a(i, j) ? Json(to_string(q(i, j))) : Json(nullptr));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Json rationals(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

const char* mode(const ProblemFile& p) { return p.rational() ? "exact" : "numerical"; }

GibbsChain chain_of(const ProblemFile& p) {
  return p.rational() ? p.exact_chain().to_chain() : normalize(p.potential()).chain;
}

ProblemFile load(const std::string& path, const char* flag) {
  if (path.empty()) throw InputError(std::string(flag) + " is required");
  return read_problem(path);
}

void require_same_base(const ProblemFile& f, const ProblemFile& g) {
  if (!(f.matrix == g.matrix)) throw PreconditionError("--input and --other must share the transition matrix");
}

std::string sha256_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  const std::string bytes = text.str();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < length; ++k) {
    out += hex[digest[k] >> 4];
    out += hex[digest[k] & 15];
  }
  return out;
}

Matrix as_real(const TransitionMatrix& a) {
  Matrix m = Matrix::Zero(a.size(), a.size());
  for (const Edge& e : a.edges()) m(e.from, e.to) = 1.0;
  return m;
}

// ---- shift ----

Outcome shift_info(const Options& o) {
  const auto p = load(o.input, "--input");
  const auto& a = p.matrix;
  const int n = a.size();
  const auto s = structure(a);
  RationalMatrix exact(n);
  for (const Edge& e : a.edges()) exact(e.from, e.to) = 1;

  Json doc;
  doc["command"] = "shift info";
  doc["n"] = n;
  doc["edge_count"] = a.edges().size();
  const bool primitive = is_primitive(a);
  doc["primitive"] = primitive;
  doc["primitivity_exponent"] = primitive ? Json(primitivity_exponent(a)) : Json(nullptr);
  doc["in_degree"] = s.in_degree;
  doc["v0"] = one_based(s.v0);
  Json e0 = Json::array();
  for (const Edge& e : s.e0) e0.push_back(edge_text(e, n));
  doc["e0"] = e0;
  Json coefficients = Json::array();
  for (const auto& c : char_poly(exact)) coefficients.push_back(static_cast<long long>(numerator(c)));
  doc["char_poly"] = coefficients;
  if (primitive) {
    const double lambda = perron(as_real(a), {kPerronTolerance}).lambda;
    doc["lambda"] = lambda;
    doc["topological_entropy"] = std::log(lambda);
  } else {
    doc["lambda"] = nullptr;
    doc["topological_entropy"] = nullptr;
  }
  return {doc};
}

Outcome shift_cycles(const Options& o) {
  const auto p = load(o.input, "--input");
  const int n = p.matrix.size();
  Json cycles = Json::array();
  for (const auto& c : simple_cycles(p.matrix)) cycles.push_back(word_text(c, n));
  const auto overlap = check_cycle_overlap_condition(p.matrix);
  Json violations = Json::array();
  for (const auto& [x, y] : overlap.violations) violations.push_back({word_text(x, n), word_text(y, n)});

  Json doc;
  doc["command"] = "shift cycles";
  doc["simple_cycles"] = cycles;
  doc["cycle_overlap_condition"] = {{"holds", overlap.holds}, {"violations", violations}};
  return {doc};
}

Outcome shift_amalgamate(const Options& o) {
  const auto p = load(o.input, "--input");
  const auto am = total_amalgamation(p.matrix);
  Json doc;
  doc["command"] = "shift amalgamate";
  doc["is_identity"] = am.is_identity();
  doc["matrix"] = {{"n", am.matrix.size()}, {"rows", am.matrix.rows()}};
  doc["class_of"] = one_based(am.class_of);
  return {doc};
}

Outcome shift_autos(const Options& o) {
  const auto p = load(o.input, "--input");
  const auto r = automorphisms(p.matrix);
  Json group = Json::array();
  for (const auto& perm : r.graph_group) group.push_back(one_based(perm));
  Json doc;
  doc["command"] = "shift autos";
  doc["verdict"] = to_string(r.verdict);
  doc["amalgamation_is_identity"] = r.amalgamation_is_identity;
  doc["graph_group"] = group;
  return {doc};
}

// ---- gibbs ----

Outcome gibbs_normalize(const Options& o) {
  const auto p = load(o.input, "--input");
  const auto norm = normalize(p.potential());
  const auto chain = chain_of(p);
  const auto& a = p.matrix;
  Matrix fhat = Matrix::Zero(a.size(), a.size());
  for (const Edge& e : a.edges()) fhat(e.from, e.to) = chain.fhat(e.from, e.to);

  Json doc;
  doc["command"] = "gibbs normalize";
  doc["mode"] = mode(p);
  doc["lambda"] = norm.perron.lambda;
  doc["pressure"] = norm.pressure;
  doc["left_eigenvector"] = vector_json(norm.perron.left);
  doc["right_eigenvector"] = vector_json(norm.perron.right);
  doc["q_matrix"] = edge_array(a, chain.q());
  if (p.rational()) doc["q_matrix_exact"] = rational_edge_array(a, *p.q_matrix);
  doc["pi"] = vector_json(chain.pi());
  doc["fhat"] = edge_array(a, fhat);
  return {doc};
}

Outcome gibbs_measure(const Options& o) {
  const auto p = load(o.input, "--input");
  if (o.word.empty()) throw PreconditionError("--word is required");
  const Word w = parse_word(o.word, p.matrix.size());
  const auto chain = chain_of(p);
  Json doc;
  doc["command"] = "gibbs measure";
  doc["word"] = word_text(w, p.matrix.size());
  doc["admissible"] = is_admissible(p.matrix, w);
  doc["measure"] = cylinder_measure(chain, w);
  return {doc};
}

Outcome gibbs_entropy(const Options& o) {
  const auto p = load(o.input, "--input");
  const auto norm = normalize(p.potential());
  const auto chain = chain_of(p);
  Json doc;
  doc["command"] = "gibbs entropy";
  doc["pressure"] = norm.pressure;
  doc["entropy"] = ks_entropy(chain);
  doc["topological_entropy"] = std::log(perron(as_real(p.matrix), {kPerronTolerance}).lambda);
  return {doc};
}

Outcome gibbs_cohomology(const Options& o) {
  const auto f = load(o.input, "--input");
  const auto g = load(o.other, "--other");
  require_same_base(f, g);
  const auto r = cohomologous_with_constant(chain_of(f), chain_of(g));
  Json doc;
  doc["command"] = "gibbs cohomology";
  doc["cohomologous"] = r.cohomologous;
  doc["witness"] = r.witness ? Json(word_text(*r.witness, f.matrix.size())) : Json(nullptr);
  doc["difference"] = r.difference;
  doc["tolerance"] = kCohomologyTolerance;
  return {doc};
}

// ---- spectrum ----

Outcome spectrum_curve_cmd(const Options& o) {
  const auto p = load(o.input, "--input");
  const auto curve = spectrum_curve(chain_of(p), o.qmin, o.qmax, o.steps);

  std::ofstream table(o.table, std::ios::binary);
  if (!table) throw PreconditionError("cannot write " + o.table);
  table << "q,alpha,entropy\n";
  Json samples = Json::array();
  for (const auto& s : curve.samples) {
    table << format_real(s.q) << ',' << format_real(s.alpha) << ',' << format_real(s.entropy) << '\n';
    samples.push_back({{"q", s.q}, {"alpha", s.alpha}, {"entropy", s.entropy}});
  }
  table.close();
  if (!table) throw PreconditionError("cannot write " + o.table);

  Json doc;
  doc["command"] = "spectrum curve";
  doc["table"] = o.table;
  doc["samples"] = samples;
  return {doc};
}

Outcome spectrum_compare(const Options& o) {
  const auto f = load(o.input, "--input");
  const auto g = load(o.other, "--other");
  if (f.matrix.size() != g.matrix.size()) throw PreconditionError("--input and --other must have the same alphabet size");
  Json doc;
  doc["command"] = "spectrum compare";
  if (f.rational() && g.rational()) {
    doc["mode"] = "exact";
    doc["equal"] = char_poly_family(f.exact_chain()) == char_poly_family(g.exact_chain());
    return {doc};
  }
  const auto grid = q_grid(o.qmin, o.qmax, o.steps);
  const auto r = char_poly_family_equal(chain_of(f), chain_of(g), grid, o.tol);
  doc["mode"] = "numerical";
  doc["equal"] = r.equal;
  doc["max_deviation"] = r.max_deviation;
  doc["worst_q"] = r.worst_q;
  doc["tolerance"] = o.tol;
  doc["grid"] = {{"qmin", o.qmin}, {"qmax", o.qmax}, {"steps", o.steps}};
  return {doc};
}

// ---- rigidity ----

Outcome rigidity_check_g(const Options& o) {
  const auto p = load(o.input, "--input");
  const int n = p.matrix.size();
  Json doc;
  doc["command"] = "rigidity check-g";
  doc["mode"] = mode(p);
  if (p.rational()) {
    const auto r = exact_in_G(p.exact_chain());
    doc["in_g"] = r.in_g;
    doc["collision"] = edge_pair(r.collision, n);
  } else {
    const auto r = in_G(chain_of(p));
    doc["in_g"] = r.in_g;
    doc["collision"] = edge_pair(r.collision, n);
    doc["tolerance"] = kValueTolerance;
  }
  return {doc};
}

Outcome rigidity_sample_g(const Options& o) {
  const auto p = load(o.input, "--input");
  Json doc;
  doc["command"] = "rigidity sample-g";
  doc["samples"] = o.samples;
  doc["seed"] = o.seed;
  doc["fraction"] = sample_G(p.matrix, o.samples, o.seed);
  doc["tolerance"] = kValueTolerance;
  return {doc};
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) values.push_back(to_double(parse_rational(token)));
  if (values.empty()) throw PreconditionError("--values needs at least one value");
  return values;
}

Outcome rigidity_reconstruct(const Options& o) {
  const auto p = load(o.input, "--input");
  const auto values = parse_values(o.values);
  Json doc;
  doc["command"] = "rigidity reconstruct";
  doc["values"] = values;
  doc["word"] = word_text(reconstruct_word(chain_of(p), values), p.matrix.size());
  return {doc};
}

Outcome obstruction(Json only_in_f, Json only_in_g) {
  Json doc;
  doc["command"] = "rigidity conjugacy";
  doc["result"] = "value_set_mismatch";
  doc["only_in_f"] = std::move(only_in_f);
  doc["only_in_g"] = std::move(only_in_g);
  return {doc, kExitObstruction};
}

Outcome rigidity_conjugacy(const Options& o) {
  const auto f = load(o.input, "--input");
  const auto g = load(o.other, "--other");
  if (f.rational() && g.rational()) {
    const auto fe = f.exact_chain();
    const auto ge = g.exact_chain();
    if (structure(f.matrix).e0.size() == structure(g.matrix).e0.size() && exact_in_G(fe).in_g) {
      const auto sets = compare_e0_value_sets(fe, ge);
      if (sets.differ) return obstruction(rationals(sets.only_in_first), rationals(sets.only_in_second));
    }
  }
  const auto result = induce_conjugacy(chain_of(f), chain_of(g));
  if (const auto* obs = std::get_if<ValueSetObstruction>(&result)) {
    return obstruction(obs->values.only_in_first, obs->values.only_in_second);
  }
  const auto& code = std::get<BlockCode>(result);
  const int n = f.matrix.size();
  const int m = g.matrix.size();

  // A code whose output depends only on the first symbol is a relabeling.
  std::vector<Symbol> perm(static_cast<std::size_t>(n), -1);
  bool relabeling = true;
  for (const auto& [window, symbol] : code.table()) {
    auto& slot = perm[static_cast<std::size_t>(window[0])];
    if (slot >= 0 && slot != symbol) relabeling = false;
    slot = symbol;
  }
  Json table = Json::object();
  for (const auto& [window, symbol] : code.table()) table[word_text(window, n)] = word_text(Word{symbol}, m);

  Json doc;
  doc["command"] = "rigidity conjugacy";
  doc["result"] = "block_code";
  doc["window"] = code.window();
  doc["identity"] = code.is_identity();
  doc["relabeling"] = relabeling ? one_based(perm) : Json(nullptr);
  doc["table"] = table;
  return {doc};
}

Outcome rigidity_counterexample(const Options& o) {
  const auto p = load(o.input, "--input");
  ProblemFile g;
  g.matrix = p.matrix;
  if (p.rational()) {
    g.q_matrix = counterexample_pair(p.exact_chain()).q();
  } else {
    g.log_values = counterexample_pair(p.potential()).values();
  }
  return {to_json(g)};
}

Outcome rigidity_certificate(const Options& o) {
  const auto p = load(o.input, "--input");
  const int n = p.matrix.size();

  std::optional<ExactChain> fe, ge;
  if (p.rational()) {
    fe = p.exact_chain();
    ge = counterexample_pair(*fe);
  }
  SNRCertificate cert = snr_certificate(p.rational() ? fe->to_chain().fhat_potential() : p.potential());
  const auto aut = automorphisms(p.matrix);
  const auto gchain = normalize(cert.g).chain;

  Json sets;
  if (p.rational()) {
    const auto membership = exact_in_G(*fe);
    cert.f_in_G = membership.in_g;
    cert.f_collision = membership.collision;
    cert.spectra_equal = char_poly_family(*fe) == char_poly_family(*ge);
    const auto exact_sets = compare_e0_value_sets(*fe, *ge);
    cert.e0_value_sets_differ = exact_sets.differ;
    sets = {{"only_in_f", rationals(exact_sets.only_in_first)}, {"only_in_g", rationals(exact_sets.only_in_second)}};
  } else {
    sets = {{"only_in_f", cert.value_sets.only_in_first}, {"only_in_g", cert.value_sets.only_in_second}};
  }

  Json checks;
  checks["f_in_G"] = {{"value", cert.f_in_G}, {"collision", edge_pair(cert.f_collision, n)}};
  checks["spectra_equal"] = {{"value", cert.spectra_equal},
                             {"method", p.rational() ? "exponential_sum" : "sampled_grid"},
                             {"max_deviation", cert.spectra_max_deviation}};
  checks["not_cohomologous"] = {{"value", cert.not_cohomologous},
                                {"witness", cert.witness ? Json(word_text(*cert.witness, n)) : Json(nullptr)},
                                {"difference", cert.witness_difference}};
  checks["aut_trivial"] = {{"value", cert.aut_trivial},
                           {"automorphism_result", to_string(aut.verdict)},
                           {"amalgamation_is_identity", aut.amalgamation_is_identity},
                           {"graph_group_order", aut.graph_group.size()}};
  checks["e0_value_sets_differ"] = {{"value", cert.e0_value_sets_differ}};
  for (auto& [key, value] : sets.items()) checks["e0_value_sets_differ"][key] = value;

  Json g;
  g["q_matrix"] = edge_array(p.matrix, gchain.q());
  if (ge) g["q_matrix_exact"] = rational_edge_array(p.matrix, ge->q());
  g["log_values"] = edge_array(p.matrix, cert.g.values());

  const auto grid = default_q_grid();
  Json doc;
  doc["command"] = "rigidity certificate";
  doc["tool"] = {{"name", "tms"}, {"version", TMS_VERSION}};
  doc["input_digest"] = "sha256:" + sha256_hex(o.input);
  doc["mode"] = mode(p);
  doc["tolerances"] = {{"value_match", kValueTolerance},
                       {"char_poly", kCharPolyTolerance},
                       {"cohomology", kCohomologyTolerance},
                       {"perron", kPerronTolerance},
                       {"q_grid", {{"qmin", grid.front()}, {"qmax", grid.back()}, {"steps", grid.size()}}}};
  doc["f"] = {{"q_matrix", edge_array(p.matrix, chain_of(p).q())}};
  doc["g"] = g;
  doc["checks"] = checks;
  doc["verdict"] = cert.verdict();
  return {doc};
}

int rigidity_exit_code(RigidityErrorKind kind) {
  return kind == RigidityErrorKind::not_invertible ? kExitObstruction : kExitPrecondition;
}

int report_error(std::ostream& out, std::ostream& err, const std::string& kind, const std::string& message, int code) {
  Json doc;
  doc["error"] = {{"kind", kind}, {"message", message}};
  out << write_json(doc);
  err << "tms: " << message << '\n';
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gibbs measures of 2-locally constant potentials on topological Markov shifts", "tms"};
  app.set_version_flag("--version", TMS_VERSION);
  app.require_subcommand(1);

  Options o;
  std::function<Outcome()> action;

  auto leaf = [&](CLI::App* group, const char* name, const char* about, Outcome (*handler)(const Options&)) {
    auto* sub = group->add_subcommand(name, about);
    sub->add_option("--input", o.input, "problem file (JSON)");
    sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
    sub->callback([&action, &o, handler] { action = [&o, handler] { return handler(o); }; });
    return sub;
  };

  auto* shift = app.add_subcommand("shift", "combinatorics of the transition matrix")->require_subcommand(1);
  leaf(shift, "info", "in-degrees, V0, E0, Perron root", shift_info);
  leaf(shift, "cycles", "simple cycles and the cycle overlap condition", shift_cycles);
  leaf(shift, "amalgamate", "total amalgamation", shift_amalgamate);
  leaf(shift, "autos", "automorphism verdict", shift_autos);

  auto* gibbs = app.add_subcommand("gibbs", "Gibbs measure of the potential")->require_subcommand(1);
  leaf(gibbs, "normalize", "Perron data, Q(f), pi and the normalized potential", gibbs_normalize);
  leaf(gibbs, "measure", "cylinder measure of a word", gibbs_measure)->add_option("--word", o.word, "word such as 132");
  leaf(gibbs, "entropy", "Kolmogorov-Sinai entropy", gibbs_entropy);
  leaf(gibbs, "cohomology", "cohomology with a constant", gibbs_cohomology)
      ->add_option("--other", o.other, "second problem file");

  auto* spectrum = app.add_subcommand("spectrum", "entropy spectrum")->require_subcommand(1);
  auto* curve = leaf(spectrum, "curve", "sample (q, alpha, entropy) and write a CSV table", spectrum_curve_cmd);
  curve->add_option("--qmin", o.qmin)->capture_default_str();
  curve->add_option("--qmax", o.qmax)->capture_default_str();
  curve->add_option("--steps", o.steps)->capture_default_str();
  curve->add_option("--table", o.table, "CSV output path")->capture_default_str();
  auto* compare = leaf(spectrum, "compare", "compare characteristic-polynomial families", spectrum_compare);
  compare->add_option("--other", o.other, "second problem file");
  compare->add_option("--qmin", o.qmin)->capture_default_str();
  compare->add_option("--qmax", o.qmax)->capture_default_str();
  compare->add_option("--steps", o.steps)->capture_default_str();
  compare->add_option("--tol", o.tol)->capture_default_str();

  auto* rigidity = app.add_subcommand("rigidity", "rigidity tests and the non-rigidity certificate")->require_subcommand(1);
  leaf(rigidity, "check-g", "pairwise distinct E0 values", rigidity_check_g);
  leaf(rigidity, "sample-g", "Monte Carlo fraction of potentials in G", rigidity_sample_g)
      ->add_option("--samples", o.samples)
      ->capture_default_str();
  leaf(rigidity, "reconstruct", "word from its Q-value sequence", rigidity_reconstruct)
      ->add_option("--values", o.values, "comma-separated values");
  leaf(rigidity, "conjugacy", "induced block code or value-set obstruction", rigidity_conjugacy)
      ->add_option("--other", o.other, "second problem file");
  leaf(rigidity, "counterexample", "companion potential g as a problem file", rigidity_counterexample);
  leaf(rigidity, "certificate", "strong non-rigidity certificate", rigidity_certificate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  try {
    const Outcome r = action();
    out << write_json(r.doc);
    return r.code;
  } catch (const InputError& e) {
    return report_error(out, err, "malformed_input", e.what(), kExitPrecondition);
  } catch (const RigidityError& e) {
    return report_error(out, err, to_string(e.kind()), e.what(), rigidity_exit_code(e.kind()));
  } catch (const PreconditionError& e) {
    return report_error(out, err, "precondition", e.what(), kExitPrecondition);
  } catch (const NumericalError& e) {
    return report_error(out, err, "numerical", e.what(), kExitNumerical);
  } catch (const std::exception& e) {
    return report_error(out, err, "precondition", e.what(), kExitPrecondition);
  }
}

}  // namespace tms::cli
