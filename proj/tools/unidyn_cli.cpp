// unidyn: command-line front end for the unicritical-dynamics library.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "unidyn/unidyn.hpp"

using json = nlohmann::ordered_json;
using namespace unidyn;

namespace {

struct RunConfig {
  std::string field = "Q";
  std::string format = "json";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  unsigned genus = 0;
  std::string nf_constants;  // "C3=0,D3=14,..." enables number-field thresholds
  long factor_budget = 0;    // 0 = library default
};

FieldContext make_context(const RunConfig& cfg) {
  FieldContext ctx;
  if (cfg.field == "Q") {
    ctx = FieldContext::Q();
  } else if (cfg.field == "Qt") {
    ctx = FieldContext::Qt();
    if (cfg.genus > 0) {
      ctx.genus = cfg.genus;
      ctx.constants = EffectiveConstants::function_field(cfg.genus);
    }
  } else if (cfg.field.rfind("zeta", 0) == 0) {
    std::string rest = cfg.field.substr(4);
    if (!rest.empty() && rest[0] == ':') rest = rest.substr(1);
    unsigned long n = std::stoul(rest);
    if (n < 1) throw CLI::ValidationError("--field", "cyclotomic order must be >= 1");
    ctx = FieldContext::Qzeta(n);
  } else {
    throw CLI::ValidationError("--field", "expected Q, Qt, or zeta:<n>");
  }
  if (!cfg.nf_constants.empty()) {
    if (ctx.kind == FieldKind::FunctionField)
      throw CLI::ValidationError("--nf-constants",
                                 "function-field constants are fixed by formula");
    std::stringstream ss(cfg.nf_constants);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw CLI::ValidationError("--nf-constants", "expected key=value pairs");
      std::string key = item.substr(0, eq);
      double val = std::stod(item.substr(eq + 1));
      auto& k = ctx.constants;
      if (key == "B1") k.B1 = val;
      else if (key == "B2") k.B2 = val;
      else if (key == "C1") k.C1 = val;
      else if (key == "C3") k.C3 = val;
      else if (key == "C4") k.C4 = val;
      else if (key == "D1") k.D1 = val;
      else if (key == "D3") k.D3 = val;
      else if (key == "D4") k.D4 = val;
      else if (key == "D6") k.D6 = val;
      else if (key == "D8") k.D8 = val;
      else if (key == "N_power") k.N_power = static_cast<unsigned>(val);
      else throw CLI::ValidationError("--nf-constants", "unknown constant " + key);
    }
    ctx.constants.configured = true;
  }
  return ctx;
}

FactorEffort make_effort(const RunConfig& cfg) {
  FactorEffort e;
  if (cfg.factor_budget > 0) e.rho_iterations = cfg.factor_budget;
  return e;
}

// "d:c" comma-separated list -> maps over the given field
std::vector<UnicriticalMap> parse_set_spec(const std::string& spec, const FieldContext& ctx) {
  std::vector<UnicriticalMap> maps;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("--set-spec", "expected comma-separated d:c entries");
    unsigned d = static_cast<unsigned>(std::stoul(item.substr(0, colon)));
    FieldElement c = parse_element(item.substr(colon + 1), ctx);
    maps.emplace_back(d, c, ctx);
  }
  if (maps.empty()) throw CLI::ValidationError("--set-spec", "no maps given");
  return maps;
}

json height_json(const HeightValue& h) {
  json j;
  switch (h.tag) {
    case HeightValue::Tag::ExactInteger:
      j["exactness"] = "exact-integer";
      j["degree"] = h.exact.convert_to<long long>();
      break;
    case HeightValue::Tag::ExactLogRational:
      j["exactness"] = "exact-log-of-integer";
      j["argument"] = h.exact.str();
      break;
    case HeightValue::Tag::Interval:
      j["exactness"] = "certified-interval";
      break;
  }
  j["lo"] = h.lo;
  j["hi"] = h.hi;
  j["value"] = h.value();
  return j;
}

json witness_json(const UnitPowerWitness& w) {
  return json{{"r", w.r.str()}, {"m", w.m}, {"y", w.y.str()}};
}

void emit(const json& j, const RunConfig& cfg) {
  if (cfg.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {  // text: flat key: value dump
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << ": " << it.value().dump() << "\n";
  }
}

int run_heights(const RunConfig& cfg, const std::string& input) {
  FieldContext ctx = make_context(cfg);
  FactorEffort effort = make_effort(cfg);
  std::istream* in = &std::cin;
  std::ifstream file;
  if (!input.empty()) {
    file.open(input);
    if (!file) throw CLI::ValidationError("--input", "cannot open " + input);
    in = &file;
  }
  json results = json::array();
  std::string line;
  while (std::getline(*in, line)) {
    if (line.empty()) continue;
    FieldElement e = parse_element(line, ctx);
    json r;
    r["element"] = e.str();
    r["height"] = height_json(height(e));
    if (!e.is_zero() && ctx.kind != FieldKind::Cyclotomic) r["radical"] = radical(e, effort);
    results.push_back(std::move(r));
  }
  json out;
  out["field"] = ctx.name();
  out["results"] = std::move(results);
  out["provenance"] = {{"height", "logarithmic Weil height from the place decomposition; "
                                  "cyclotomic values are certified Mahler-measure intervals"}};
  emit(out, cfg);
  return 0;
}

int run_orbit(const RunConfig& cfg, unsigned d, const std::string& c_str,
              const std::string& alpha_str, long max_steps) {
  FieldContext ctx = make_context(cfg);
  UnicriticalMap phi(d, parse_element(c_str, ctx), ctx);
  OrbitResult r = orbit(phi, parse_element(alpha_str, ctx), max_steps);
  json out;
  out["field"] = ctx.name();
  out["map"] = phi.str();
  out["classification"] = r.preperiodic() ? "preperiodic" : "escaping";
  if (r.preperiodic()) {
    out["tail"] = r.tail;
    out["period"] = r.period;
  } else {
    out["escape_index"] = r.escape_index;
  }
  json orb = json::array();
  for (const auto& x : r.orbit) orb.push_back(x.str());
  out["orbit"] = std::move(orb);
  out["provenance"] = {{"escape", "height growth beyond the canonical-height comparison window "
                                  "certifies divergence"}};
  emit(out, cfg);
  return 0;
}

int run_preper(const RunConfig& cfg, unsigned d, const std::string& c_str) {
  FieldContext ctx = make_context(cfg);
  FactorEffort effort = make_effort(cfg);
  FieldElement c = parse_element(c_str, ctx);
  PreperSet ps;
  switch (ctx.kind) {
    case FieldKind::Rationals: ps = enumerate_preperiodic_Q(d, c.rat(), effort); break;
    case FieldKind::FunctionField: ps = classify_function_field(d, c.rf(), effort); break;
    case FieldKind::Cyclotomic: ps = enumerate_height_zero(d, c.cyc()); break;
  }
  json out;
  out["field"] = ctx.name();
  out["map"] = UnicriticalMap(d, c, ctx).str();
  json pts = json::array();
  for (const auto& p : ps.points) pts.push_back(p.str());
  out["points"] = std::move(pts);
  switch (ps.completeness) {
    case PreperSet::Completeness::Complete: out["completeness"] = "complete"; break;
    case PreperSet::Completeness::HeightZeroOnly: out["completeness"] = "height-zero-only"; break;
    case PreperSet::Completeness::StructuralOnly: out["completeness"] = "structural-only"; break;
  }
  if (ctx.kind == FieldKind::Rationals) {
    json box;
    box["denominator"] = ps.box.b.str();
    box["numerator_bound"] = ps.box.A.str();
    if (ps.box.empty_reason) box["empty_reason"] = *ps.box.empty_reason;
    out["box"] = std::move(box);
  }
  if (ps.non_unique_source) out["non_unique_source"] = true;
  out["provenance"] = {{"box", "denominator valuations forced prime-by-prime; numerator bounded "
                               "through the escape-radius root rho_d"},
                       {"completeness", "exhaustive orbit check of every candidate in the box"}};
  emit(out, cfg);
  return 0;
}

int run_portrait(const RunConfig& cfg, unsigned d, const std::string& c_str, bool predict) {
  FieldContext ctx = make_context(cfg);
  FactorEffort effort = make_effort(cfg);
  FieldElement c = parse_element(c_str, ctx);
  UnicriticalMap phi(d, c, ctx);
  PreperSet ps;
  switch (ctx.kind) {
    case FieldKind::Rationals: ps = enumerate_preperiodic_Q(d, c.rat(), effort); break;
    case FieldKind::FunctionField: ps = classify_function_field(d, c.rf(), effort); break;
    case FieldKind::Cyclotomic: ps = enumerate_height_zero(d, c.cyc()); break;
  }
  Portrait P = build_portrait(phi, ps);
  Skeleton S = skeletonize(P, phi);
  SkeletonLabel label = classify_skeleton(S);
  if (cfg.format == "dot") {
    std::cout << portrait_to_dot(P) << skeleton_to_dot(S);
    return 0;
  }
  json out;
  out["field"] = ctx.name();
  out["map"] = phi.str();
  json verts = json::array();
  for (const auto& v : P.vertices) verts.push_back(v.str());
  out["vertices"] = std::move(verts);
  json edges = json::array();
  for (auto [a, b] : P.edges) edges.push_back(json::array({a, b}));
  out["edges"] = std::move(edges);
  out["skeleton_label"] = skeleton_label_name(label);
  if (predict) {
    if (ctx.kind == FieldKind::FunctionField)
      throw UnsupportedField();
    SkeletonPrediction pred = predicted_skeleton(d, c, ctx, {}, effort);
    json cert;
    cert["predicted_label"] = skeleton_label_name(pred.label);
    cert["conditions"] = pred.conditions;
    cert["agrees_with_enumeration"] = pred.label == label;
    out["certificate"] = std::move(cert);
  }
  out["provenance"] = {{"skeleton", "kept vertices have a rational preimage; isomorphism "
                                    "against the finite catalogue of admissible graphs"},
                       {"prediction", "root-of-unity case analysis of the fixed and two-cycle "
                                      "structure of c"}};
  emit(out, cfg);
  return 0;
}

int run_stability(const RunConfig& cfg, unsigned d, const std::string& c_str, unsigned N) {
  FieldContext ctx = make_context(cfg);
  UnicriticalMap phi(d, parse_element(c_str, ctx), ctx);
  StabilityResult st = stability_certificate(phi, N);
  json out;
  out["field"] = ctx.name();
  out["map"] = phi.str();
  switch (st.kind) {
    case StabilityResult::Kind::BaseReducible: out["kind"] = "BaseReducible"; break;
    case StabilityResult::Kind::PowerAtIterate: out["kind"] = "PowerAtIterate"; break;
    case StabilityResult::Kind::StableUpTo: out["kind"] = "StableUpTo"; break;
    case StabilityResult::Kind::StableInfinity: out["kind"] = "StableInfinity"; break;
  }
  out["n"] = st.n;
  out["certified_iterates"] = st.certified_iterates;
  if (st.witness) out["witness"] = witness_json(*st.witness);
  out["provenance"] = {{"certificate", "binomial irreducibility of the base map plus absence of "
                                       "unit-power values along the critical orbit"}};
  emit(out, cfg);
  // a power witness leaves stability of higher iterates unknown
  return st.kind == StabilityResult::Kind::PowerAtIterate ? 2 : 0;
}

int run_semigroup_scan(const RunConfig& cfg, const std::string& set_spec, const std::string& bound,
                       const std::string& method) {
  FieldContext ctx = make_context(cfg);
  FactorEffort effort = make_effort(cfg);
  GeneratingSet S(parse_set_spec(set_spec, ctx));
  std::vector<unsigned> degrees;
  for (const auto& m : S.maps) degrees.push_back(m.d);
  GrowthExponent rho = semigroup_growth_exponent(degrees);
  Int B(bound);
  ProportionMethod pm =
      method == "factor" ? ProportionMethod::FactorFallback : ProportionMethod::CertifyOnly;
  ProportionReport rep = irreducible_proportion(S, B, pm, effort);
  json out;
  out["field"] = ctx.name();
  json maps = json::array();
  for (const auto& m : S.maps) maps.push_back(m.str());
  out["maps"] = std::move(maps);
  out["bound"] = B.str();
  out["growth_exponent"] = {{"lo", rho.lo}, {"hi", rho.hi}, {"degenerate", rho.degenerate}};
  out["words"] = rep.total;
  out["certified_irreducible"] = rep.certified_irreducible;
  out["certified_reducible"] = rep.certified_reducible;
  out["inconclusive"] = rep.inconclusive;
  out["provenance"] = {{"growth_exponent", "unique solution of sum d_i^(-rho) = 1 by certified "
                                           "bisection"},
                       {"certificates", "binomial criterion at the leaves, composition criterion "
                                        "along prefixes"}};
  emit(out, cfg);
  return 0;
}

int run_guard(const RunConfig& cfg, const std::string& set_spec, unsigned n_power) {
  FieldContext ctx = make_context(cfg);
  FactorEffort effort = make_effort(cfg);
  GeneratingSet S(parse_set_spec(set_spec, ctx));
  unsigned N = n_power > 0 ? n_power : ctx.constants.N_power;
  GuardResult g = guard_prefix(S, N, {}, effort);
  json out;
  out["field"] = ctx.name();
  json maps = json::array();
  for (const auto& m : S.maps) maps.push_back(m.str());
  out["maps"] = std::move(maps);
  if (g.guard) {
    out["guard"] = *g.guard;
    out["rationale"] = g.rationale;
  }
  out["exceptional_family"] = g.exceptional_family;
  if (g.exceptional_family) out["shape_report"] = g.shape_report;
  out["provenance"] = {{"guard", "iterated-power prefix whose composites with the whole semigroup "
                                 "stay irreducible, via fixed-point power obstructions"}};
  emit(out, cfg);
  return 0;
}

int run_galois_sim(const RunConfig& cfg, const std::string& set_spec, const std::string& weights,
                   long trials, unsigned horizon, long min_maximal) {
  FieldContext ctx = make_context(cfg);
  FactorEffort effort = make_effort(cfg);
  GeneratingSet S(parse_set_spec(set_spec, ctx));
  std::vector<double> w;
  if (weights.empty()) {
    w.assign(S.maps.size(), 1.0);
  } else {
    std::stringstream ss(weights);
    std::string item;
    while (std::getline(ss, item, ',')) w.push_back(std::stod(item));
  }
  MonteCarloReport rep =
      monte_carlo_big_galois(S, w, trials, horizon, cfg.seed, min_maximal, cfg.jobs, effort);
  json out;
  out["field"] = ctx.name();
  out["trials"] = rep.trials;
  out["horizon"] = horizon;
  out["seed"] = cfg.seed;
  out["stable_count"] = rep.stable_count;
  out["success_count"] = rep.success_count;
  out["success_fraction"] = rep.success_fraction;
  json per = json::array();
  for (const auto& t : rep.per_trial) {
    per.push_back(json{{"sequence", t.sequence},
                       {"stable", t.stable},
                       {"maximal_levels", t.maximal_levels}});
  }
  out["per_trial"] = std::move(per);
  out["provenance"] = {{"note", "finite-horizon empirical proxy; each counted level carries an "
                                "instance certificate, no asymptotic claim"}};
  emit(out, cfg);
  return 0;
}

int run_galois_certify(const RunConfig& cfg, const std::string& sequence, std::size_t n,
                       bool ramified) {
  FieldContext ctx = make_context(cfg);
  FactorEffort effort = make_effort(cfg);
  SequencePrefix gamma = make_sequence(parse_set_spec(sequence, ctx));
  json out;
  out["field"] = ctx.name();
  out["level"] = n;
  json crit = json::array();
  for (const auto& v : gamma.crit) crit.push_back(v.str());
  out["critical_values"] = std::move(crit);
  auto primes = good_primitive_primes(gamma, n, PrimitiveMode::GcdCoprime, effort);
  json pj = json::array();
  for (const auto& p : primes) {
    json e;
    e["prime"] = p.place.kind == Place::Kind::FinitePrime ? p.place.p.str()
                                                          : poly_to_string(p.place.pi, "t");
    e["valuation"] = p.valuation_n;
    e["conditions"] = p.conditions;
    pj.push_back(std::move(e));
  }
  out["good_primitive_primes"] = std::move(pj);
  auto cert = maximality_certificate(gamma, n, effort);
  if (cert) {
    json cj;
    cj["prime"] = cert->prime.kind == Place::Kind::FinitePrime ? cert->prime.p.str()
                                                               : poly_to_string(cert->prime.pi, "t");
    cj["irreducibility"] = cert->irreducibility_evidence;
    out["maximality_certificate"] = std::move(cj);
  }
  if (ramified) {
    json rj = json::array();
    for (const auto& r : new_ramified_prime(gamma, n, effort)) {
      rj.push_back(json{{"prime", r.place.p.str()},
                        {"segment_width", r.ell},
                        {"polygon_certified", r.polygon_certified}});
    }
    out["new_ramified_primes"] = std::move(rj);
  }
  out["provenance"] = {
      {"good_primes", "integrality of coefficients, unit degrees, and a primitive valuation "
                      "coprime to the degree at the target level"},
      {"ramification", "Newton-polygon first segment of width > 1 from a simple zero of the "
                       "constant term"}};
  emit(out, cfg);
  return cert ? 0 : 2;
}

int run_fc_check(const RunConfig& cfg, const std::string& a_s, const std::string& b_s, unsigned m,
                 unsigned n, const std::string& x_s, const std::string& y_s) {
  FieldContext ctx = make_context(cfg);
  FieldElement a = parse_element(a_s, ctx), b = parse_element(b_s, ctx);
  FieldElement x = parse_element(x_s, ctx), y = parse_element(y_s, ctx);
  FermatCatalanReport r = check_fermat_catalan_bound(a, b, m, n, x, y, ctx.constants, ctx.genus);
  json out;
  out["field"] = ctx.name();
  out["lhs"] = r.lhs;
  out["bound"] = r.bound;
  out["pass"] = r.pass;
  out["trivial_exempt"] = r.trivial_exempt;
  out["silverman_lhs"] = r.silverman_lhs;
  out["silverman_rhs"] = r.silverman_rhs;
  out["provenance"] = {{"bound", "uniform height bound for superelliptic unit equations over the "
                                 "function field"}};
  emit(out, cfg);
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unidyn: exact arithmetic dynamics of unicritical polynomials x^d + c"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--field", cfg.field, "base field: Q, Qt, or zeta:<n>")->capture_default_str();
  app.add_option("--format", cfg.format, "output format: json, text, dot")->capture_default_str();
  app.add_option("--seed", cfg.seed, "RNG seed for sampling commands")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "worker threads (output is schedule-independent)")
      ->capture_default_str();
  app.add_option("--genus", cfg.genus, "genus of the function field (default 0)");
  app.add_option("--nf-constants", cfg.nf_constants,
                 "number-field effective-constant overrides, e.g. C3=0,D3=14");
  app.add_option("--factor-budget", cfg.factor_budget, "Pollard-rho iteration budget");

  unsigned d = 2, N = 4, horizon = 5, n_power = 0, fc_m = 2, fc_n = 5;
  std::size_t level = 1;
  long max_steps = 1000000, trials = 16, min_maximal = 1;
  bool predict = false, ramified = false;
  std::string c_str, alpha_str, input, set_spec, weights, bound = "64", method = "certify";
  std::string fc_a, fc_b, fc_x, fc_y, sequence;

  auto* heights_cmd = app.add_subcommand("heights", "height evaluation");
  auto* heights_eval = heights_cmd->add_subcommand("eval", "one element per input line");
  heights_eval->add_option("--input", input, "input file (default: stdin)");

  auto* orbit_cmd = app.add_subcommand("orbit", "classify the forward orbit of a point");
  orbit_cmd->add_option("--d", d, "degree")->required();
  orbit_cmd->add_option("--c", c_str, "constant term")->required();
  orbit_cmd->add_option("--alpha", alpha_str, "starting point")->required();
  orbit_cmd->add_option("--max-steps", max_steps, "iteration budget");

  auto* preper_cmd = app.add_subcommand("preper", "preperiodic points of x^d + c");
  preper_cmd->add_option("--d", d, "degree")->required();
  preper_cmd->add_option("--c", c_str, "constant term")->required();

  auto* portrait_cmd = app.add_subcommand("portrait", "preperiodic portrait and skeleton");
  portrait_cmd->add_option("--d", d, "degree")->required();
  portrait_cmd->add_option("--c", c_str, "constant term")->required();
  portrait_cmd->add_flag("--predict", predict, "include the predicted skeleton certificate");

  auto* stab_cmd = app.add_subcommand("stability", "iterate-irreducibility certificate");
  stab_cmd->add_option("--d", d, "degree")->required();
  stab_cmd->add_option("--c", c_str, "constant term")->required();
  stab_cmd->add_option("--N", N, "certification depth")->required();

  auto* semi_cmd = app.add_subcommand("semigroup", "semigroup word statistics");
  auto* semi_scan = semi_cmd->add_subcommand("scan", "enumerate and certify words");
  semi_scan->add_option("--set-spec", set_spec, "comma-separated d:c generators")->required();
  semi_scan->add_option("--bound", bound, "degree bound B");
  semi_scan->add_option("--method", method, "certify | factor");

  auto* guard_cmd = app.add_subcommand("guard", "guard prefix for a generating set");
  guard_cmd->add_option("--set-spec", set_spec, "comma-separated d:c generators")->required();
  guard_cmd->add_option("--N-power", n_power, "power of the guarding generator");

  auto* galois_cmd = app.add_subcommand("galois", "dynamical Galois certificates");
  auto* galois_sim = galois_cmd->add_subcommand("sim", "Monte-Carlo sequence sampling");
  galois_sim->add_option("--set-spec", set_spec, "comma-separated d:c generators")->required();
  galois_sim->add_option("--weights", weights, "comma-separated sampling weights");
  galois_sim->add_option("--trials", trials, "number of sampled sequences");
  galois_sim->add_option("--horizon", horizon, "sequence length");
  galois_sim->add_option("--min-maximal", min_maximal, "levels required for success");
  auto* galois_certify = galois_cmd->add_subcommand("certify", "level-n maximality certificate");
  galois_certify->add_option("--sequence", sequence, "comma-separated d:c prefix")->required();
  galois_certify->add_option("--n", level, "target level")->required();
  galois_certify->add_flag("--ramified", ramified, "also search for newly ramified primes");

  auto* fc_cmd = app.add_subcommand("fc-check", "Fermat-Catalan height-bound check");
  fc_cmd->add_option("--a", fc_a, "coefficient a")->required();
  fc_cmd->add_option("--b", fc_b, "coefficient b")->required();
  fc_cmd->add_option("--m", fc_m, "exponent m")->required();
  fc_cmd->add_option("--n", fc_n, "exponent n")->required();
  fc_cmd->add_option("--x", fc_x, "solution x")->required();
  fc_cmd->add_option("--y", fc_y, "solution y")->required();

  // global options may appear after the subcommand name
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1
  }

  try {
    if (heights_eval->parsed()) return run_heights(cfg, input);
    if (orbit_cmd->parsed()) return run_orbit(cfg, d, c_str, alpha_str, max_steps);
    if (preper_cmd->parsed()) return run_preper(cfg, d, c_str);
    if (portrait_cmd->parsed()) return run_portrait(cfg, d, c_str, predict);
    if (stab_cmd->parsed()) return run_stability(cfg, d, c_str, N);
    if (semi_scan->parsed()) return run_semigroup_scan(cfg, set_spec, bound, method);
    if (guard_cmd->parsed()) return run_guard(cfg, set_spec, n_power);
    if (galois_sim->parsed()) return run_galois_sim(cfg, set_spec, weights, trials, horizon,
                                                    min_maximal);
    if (galois_certify->parsed()) return run_galois_certify(cfg, sequence, level, ramified);
    if (fc_cmd->parsed()) return run_fc_check(cfg, fc_a, fc_b, fc_m, fc_n, fc_x, fc_y);
    std::cerr << "error: missing subcommand\n";
    return 1;
  } catch (const FactorizationTimeout& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return 2;
  } catch (const StepBudgetExhausted& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return 2;
  } catch (const ThresholdsNotMet& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return 2;
  } catch (const ExpansionTooLarge& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
