#include "knotconc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "knotconc/blanchfield.hpp"
#include "knotconc/catalog.hpp"
#include "knotconc/errors.hpp"
#include "knotconc/infection.hpp"
#include "knotconc/obstruction.hpp"

namespace knotconc::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kDefaultTol = "1e-9";

struct Command {
  std::string name;
  std::string target;  // knot, template or expression name
  std::string theorem;
  int multiple = 1;
  std::vector<std::string> ledgers;
  std::string ledger_target;
  std::string report_path;
};

struct Inputs {
  Command command;
  std::string catalog;
  std::string assign;
  std::string tol;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReplayMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Rational parse_tol(const std::string& s) {
  Rational t;
  try {
    t = parse_rational(s);
  } catch (const std::invalid_argument&) {
    throw UsageError("malformed tolerance '" + s + "'");
  }
  if (sgn(t) <= 0) throw UsageError("tolerance must be positive");
  return t;
}

Json command_json(const Command& c) {
  Json j;
  j["name"] = c.name;
  if (c.name == "independence") {
    j["ledgers"] = c.ledgers;
    j["target"] = c.ledger_target;
    return j;
  }
  j["target"] = c.target;
  if (c.name == "obstruct") {
    j["theorem"] = c.theorem;
    if (c.theorem == "torsion") j["multiple"] = c.multiple;
  }
  return j;
}

Command command_from_json(const Json& j) {
  Command c;
  c.name = j.at("name").get<std::string>();
  if (c.name == "independence") {
    c.ledgers = j.at("ledgers").get<std::vector<std::string>>();
    c.ledger_target = j.at("target").get<std::string>();
    return c;
  }
  c.target = j.at("target").get<std::string>();
  if (c.name == "obstruct") {
    c.theorem = j.at("theorem").get<std::string>();
    if (j.contains("multiple")) c.multiple = j.at("multiple").get<int>();
  }
  return c;
}

Json inputs_json(const Inputs& in) {
  Json j;
  j["command"] = command_json(in.command);
  j["catalog"] = in.catalog;
  j["assign"] = in.assign;
  j["tol"] = in.tol;
  return j;
}

Json rational_json(const Rational& q) { return to_string(q); }

Json interval_json(const Interval& i) {
  Json j;
  j["lo"] = to_string(i.lo);
  j["hi"] = to_string(i.hi);
  return j;
}

Interval interval_from_json(const Json& j) {
  return Interval::make(parse_rational(j.at("lo").get<std::string>()), parse_rational(j.at("hi").get<std::string>()));
}

Json ledger_json(const RhoLedger& l) {
  Json j;
  j["symbolic"] = to_string(l);
  j["ascii"] = to_string(l, true);
  return j;
}

Json assignment_json(const Assignment& a) {
  Json atoms = Json::object();
  for (const auto& [atom, v] : a.atoms()) atoms[to_ascii(atom)] = interval_json(v);
  Json constants = Json::object();
  for (const auto& [name, v] : a.constants()) constants[name] = interval_json(v);
  Json j;
  j["atoms"] = atoms;
  j["constants"] = constants;
  return j;
}

Assignment assignment_from_json(const Json& j) {
  Assignment a;
  for (const auto& [key, v] : j.at("atoms").items()) a.set(parse_atom(key), interval_from_json(v));
  for (const auto& [key, v] : j.at("constants").items()) a.set_constant(key, interval_from_json(v));
  return a;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["theorem"] = v.theorem;
  j["conclusion"] = v.conclusion;
  j["conditions"] = v.conditions;
  j["notes"] = v.notes;
  j["assignment"] = assignment_json(v.assignment);
  Json steps = Json::array();
  for (const auto& s : v.certificate) {
    Json step;
    step["kind"] = to_string(s.kind);
    step["ledger"] = ledger_json(s.ledger);
    if (s.kind == CertificateStep::Kind::AbsGreater || s.kind == CertificateStep::Kind::AbsAtMost) {
      step["bound"] = interval_json(s.bound);
    }
    if (s.kind == CertificateStep::Kind::OddProduct) {
      step["multiple"] = s.multiple.get_str(10);
      step["value"] = s.value.get_str(10);
    }
    step["expected"] = s.expected;
    step["description"] = s.description;
    steps.push_back(std::move(step));
  }
  j["certificate"] = steps;
  j["replay"] = replay(v);
  return j;
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  const std::string status = j.at("status").get<std::string>();
  if (status == "OBSTRUCTED") v.status = VerdictStatus::Obstructed;
  else if (status == "CONSISTENT") v.status = VerdictStatus::Consistent;
  else if (status == "CONDITIONAL") v.status = VerdictStatus::Conditional;
  else throw ReplayMismatch("unknown status '" + status + "'");
  v.theorem = j.at("theorem").get<std::string>();
  v.conclusion = j.at("conclusion").get<std::string>();
  v.conditions = j.at("conditions").get<std::vector<std::string>>();
  v.notes = j.at("notes").get<std::vector<std::string>>();
  v.assignment = assignment_from_json(j.at("assignment"));
  for (const auto& sj : j.at("certificate")) {
    CertificateStep s;
    s.kind = parse_step_kind(sj.at("kind").get<std::string>());
    s.ledger = parse_ledger(sj.at("ledger").at("ascii").get<std::string>());
    if (sj.contains("bound")) s.bound = interval_from_json(sj.at("bound"));
    if (sj.contains("multiple")) s.multiple = Integer(sj.at("multiple").get<std::string>(), 10);
    if (sj.contains("value")) s.value = Integer(sj.at("value").get<std::string>(), 10);
    s.expected = sj.at("expected").get<bool>();
    s.description = sj.at("description").get<std::string>();
    v.certificate.push_back(std::move(s));
  }
  return v;
}

Json rho0_json(const Rho0Result& r, const std::string& tol) {
  Json j;
  j["value"] = rational_json(r.value);
  j["decimal"] = to_decimal(r.value);
  j["error_bound"] = rational_json(r.error_bound);
  j["exact"] = sgn(r.error_bound) == 0;
  j["tol"] = tol;
  return j;
}

Json profile_json(const SignatureProfile& p) {
  Json jumps = Json::array();
  for (const auto& iv : p.jumps) {
    Json k;
    k["cos_lo"] = rational_json(iv.lo);
    k["cos_hi"] = rational_json(iv.hi);
    k["poly"] = to_string(iv.poly, "x");
    jumps.push_back(std::move(k));
  }
  Json arcs = Json::array();
  for (const auto& a : p.arcs) {
    Json k;
    k["cos_lo"] = rational_json(a.cos_lo);
    k["cos_hi"] = rational_json(a.cos_hi);
    k["signature"] = a.value;
    arcs.push_back(std::move(k));
  }
  Json j;
  j["jumps"] = jumps;
  j["arcs"] = arcs;
  j["at_minus_one"] = p.value_at_minus_one;
  return j;
}

Json matrix_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json element_json(const ModuleElement& x) {
  Json j = Json::array();
  for (const auto& c : x) j.push_back(to_string(c));
  return j;
}

Json module_json(const AlexanderModule& m) {
  Json j;
  j["alexander"] = to_string(alexander_polynomial(m.seifert()));
  j["order"] = to_string(m.order(), "t");
  Json factors = Json::array();
  for (const auto& f : m.invariant_factors()) factors.push_back(to_string(f, "t"));
  j["invariant_factors"] = factors;
  Json pres = Json::array();
  for (size_t r = 0; r < m.presentation().rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.presentation().cols(); ++c) row.push_back(to_string(m.presentation()(r, c)));
    pres.push_back(std::move(row));
  }
  j["presentation"] = pres;
  j["cyclic"] = m.is_cyclic();
  j["square_free"] = m.is_squarefree();
  if (m.is_cyclic() && m.is_squarefree()) {
    if (!m.is_trivial()) {
      j["generator"] = element_json(m.generator());
      j["generator_self_pairing"] = to_string(m.pair(m.generator(), m.generator()));
    }
    Json lattice = Json::array();
    for (const auto& p : submodule_lattice(m)) {
      Json s;
      s["submodule"] = to_string(p);
      s["isotropic"] = is_isotropic(m, p);
      s["metabolizer"] = is_metabolizer(m, p);
      lattice.push_back(std::move(s));
    }
    j["lattice"] = lattice;
  }
  return j;
}

struct Context {
  Catalog catalog;
  Assignment assignment;
  Rational tol;
  std::string tol_text;
};

Json cmd_invariants(const Context& ctx, const std::string& name) {
  const ExprPtr e = ctx.catalog.expr(name);
  const SeifertMatrix v = seifert_of(*e);
  Json j;
  j["name"] = name;
  j["expression"] = to_string(*e);
  j["genus"] = v.genus();
  j["seifert_matrix"] = matrix_json(v.entries());
  j["alexander"] = to_string(alexander_polynomial(v));
  j["fox_milnor"] = fox_milnor_test(alexander_polynomial(v));
  j["arf"] = arf(v);
  const Rho0Result r = rho0(v, ctx.tol);
  j["signature_function"] = profile_json(r.profile);
  j["rho0"] = rho0_json(r, ctx.tol_text);
  j["solvability"] = to_string(solvability_lower_bound(*e));
  return j;
}

Json cmd_rho0(const Context& ctx, const std::string& name) {
  const ExprPtr e = ctx.catalog.expr(name);
  Json j;
  j["name"] = name;
  j["rho0"] = rho0_json(rho0_of(*e, ctx.tol), ctx.tol_text);
  return j;
}

Json cmd_module(const Context& ctx, const std::string& name) {
  Json j;
  j["name"] = name;
  if (ctx.catalog.kind_of(name) == Catalog::Kind::Template) {
    const TemplatePtr t = ctx.catalog.templ(name);
    const AlexanderModule& m = t->module();
    j["module"] = module_json(m);
    Json sites = Json::array();
    for (const auto& s : t->sites()) {
      Json sj;
      sj["site"] = s.name;
      sj["class"] = element_json(s.cls);
      sj["seifert_disjoint"] = s.seifert_disjoint;
      Json pairs = Json::object();
      for (const auto& o : t->sites()) pairs[o.name] = to_string(m.pair(s.cls, o.cls));
      sj["pairing"] = pairs;
      sites.push_back(std::move(sj));
    }
    j["sites"] = sites;
    Json ribbon = Json::array();
    for (const auto& d : t->ribbon_divisors()) ribbon.push_back(to_string(d, "t"));
    j["ribbon_divisors"] = ribbon;
    j["slice"] = t->is_slice();
    j["amphichiral"] = t->is_amphichiral();
    return j;
  }
  const ExprPtr e = ctx.catalog.expr(name);
  j["module"] = module_json(AlexanderModule(seifert_of(*e)));
  return j;
}

Json cmd_fos(const Context& ctx, const std::string& name) {
  const ExprPtr e = ctx.catalog.expr(name);
  const FirstOrderSignatureSet s = fos(e);
  Assignment a = ctx.assignment;
  a.merge(auto_assign_rho0(s, ctx.tol));
  Json entries = Json::array();
  for (const auto& entry : s.entries) {
    Json ej;
    ej["submodule"] = entry.label;
    ej["divisor"] = to_string(entry.submodule.divisor, "t");
    ej["ledger"] = ledger_json(entry.ledger);
    ej["evaluated"] = to_string(evaluate(entry.ledger, a));
    entries.push_back(std::move(ej));
  }
  Json sources = Json::object();
  for (const auto& [atom, src] : s.rho0_sources) sources[to_ascii(atom)] = to_string(*src);
  Json j;
  j["name"] = name;
  j["knot"] = s.knot;
  j["entries"] = entries;
  j["rho0_sources"] = sources;
  j["assignment"] = assignment_json(a);
  return j;
}

Json cmd_solvable(const Context& ctx, const std::string& name) {
  const ExprPtr e = ctx.catalog.expr(name);
  Json j;
  j["name"] = name;
  j["expression"] = to_string(*e);
  j["level"] = to_string(solvability_lower_bound(*e));
  j["cphi_bound"] = cphi_bound(*e).get_str(10);
  try {
    j["arf"] = arf_of(*e);
  } catch (const SiteNotSeifertDisjoint&) {
    j["arf"] = nullptr;
  }
  return j;
}

Json cmd_obstruct(const Context& ctx, const Command& c) {
  const ExprPtr e = ctx.catalog.expr(c.target);
  Verdict v;
  if (c.theorem == "fos") v = check_fos(e, ctx.assignment, ctx.tol);
  else if (c.theorem == "j2") v = check_j2(e, ctx.assignment, ctx.tol);
  else if (c.theorem == "main") v = check_main(e, ctx.assignment, ctx.tol);
  else if (c.theorem == "main3") v = check_main3(e, ctx.assignment, ctx.tol);
  else if (c.theorem == "torsion") v = check_torsion(e, c.multiple, ctx.assignment, ctx.tol);
  else throw UsageError("unknown theorem '" + c.theorem + "'");
  Json j;
  j["name"] = c.target;
  j["expression"] = to_string(*e);
  j["verdict"] = verdict_json(v);
  return j;
}

RhoLedger resolve_ledger(const Context& ctx, const std::string& s) {
  const auto k = ctx.catalog.kind_of(s);
  if (k && *k != Catalog::Kind::Template) return RhoLedger::atom(RhoAtom::rho0(s));
  try {
    return parse_ledger(s);
  } catch (const std::invalid_argument& err) {
    throw ParseError(1, 1, "in ledger '" + s + "': " + err.what());
  }
}

Json cmd_independence(const Context& ctx, const Command& c) {
  std::vector<RhoLedger> ledgers;
  Json lj = Json::array();
  for (const auto& s : c.ledgers) {
    ledgers.push_back(resolve_ledger(ctx, s));
    lj.push_back(ledger_json(ledgers.back()));
  }
  const RhoLedger target = resolve_ledger(ctx, c.ledger_target);
  const IndependenceResult r = independence_check(ledgers, target);
  Json j;
  j["ledgers"] = lj;
  j["target"] = ledger_json(target);
  j["rank"] = r.rank;
  j["hits_target"] = r.hits_target;
  return j;
}

Json execute(const Inputs& in) {
  Context ctx{Catalog::parse(in.catalog), parse_assignment(in.assign), parse_tol(in.tol), in.tol};
  ctx.assignment.merge(ctx.catalog.assignment());
  const Command& c = in.command;
  Json result;
  if (c.name == "invariants") result = cmd_invariants(ctx, c.target);
  else if (c.name == "rho0") result = cmd_rho0(ctx, c.target);
  else if (c.name == "module") result = cmd_module(ctx, c.target);
  else if (c.name == "fos") result = cmd_fos(ctx, c.target);
  else if (c.name == "solvable") result = cmd_solvable(ctx, c.target);
  else if (c.name == "obstruct") result = cmd_obstruct(ctx, c);
  else if (c.name == "independence") result = cmd_independence(ctx, c);
  else throw UsageError("unknown command '" + c.name + "'");
  Json report;
  report["inputs"] = inputs_json(in);
  report["command"] = c.name;
  report["result"] = result;
  return report;
}

std::string serialize(const Json& j) { return j.dump(2) + "\n"; }

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void render_text(const Json& j, int indent, std::ostream& out) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) {
      if (is_scalar(v)) {
        out << pad << key << ": " << scalar_text(v) << "\n";
      } else if (v.empty()) {
        out << pad << key << ": " << (v.is_array() ? "[]" : "{}") << "\n";
      } else {
        out << pad << key << ":\n";
        render_text(v, indent + 2, out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_scalar(v)) {
        out << pad << "- " << scalar_text(v) << "\n";
      } else if (v.is_array() && std::all_of(v.begin(), v.end(), is_scalar)) {
        out << pad << "- [";
        for (size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
        out << "]\n";
      } else {
        out << pad << "-\n";
        render_text(v, indent + 2, out);
      }
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

Json replay_report(const std::string& path) {
  const std::string original = read_file(path);
  Json report;
  try {
    report = Json::parse(original);
  } catch (const Json::parse_error& err) {
    throw ReplayMismatch(std::string("not a JSON report: ") + err.what());
  }
  Inputs in;
  try {
    const Json& ij = report.at("inputs");
    in.command = command_from_json(ij.at("command"));
    in.catalog = ij.at("catalog").get<std::string>();
    in.assign = ij.at("assign").get<std::string>();
    in.tol = ij.at("tol").get<std::string>();
  } catch (const Json::exception& err) {
    throw ReplayMismatch(std::string("malformed inputs: ") + err.what());
  }
  const Json again = execute(in);
  const bool identical = serialize(again) == original;
  Json j;
  j["report"] = path;
  j["command"] = in.command.name;
  j["identical"] = identical;
  if (again.at("result").contains("verdict")) {
    bool certificate = false;
    try {
      certificate = replay(verdict_from_json(report.at("result").at("verdict")));
    } catch (const std::exception&) {
      certificate = false;
    }
    j["certificate_replay"] = certificate;
    if (!certificate) throw ReplayMismatch("certificate does not replay");
  }
  if (!identical) throw ReplayMismatch("report differs from a fresh run");
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knot concordance invariants and obstructions", "knotconc"};
  app.require_subcommand(1, 1);
  std::string catalog_path, assign_path, tol, format = "text";
  app.add_option("--catalog", catalog_path, "Catalog file")->check(CLI::ExistingFile);
  app.add_option("--assign", assign_path, "Atom and constant values")->check(CLI::ExistingFile);
  app.add_option("--tol", tol, std::string("rho0 tolerance (default ") + kDefaultTol + ", env " + kTolEnv + ")");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

  Command c;
  auto named = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    s->add_option("name", c.target, "Catalog name")->required();
    return s;
  };
  named("invariants", "Seifert invariants of a knot or expression");
  named("rho0", "Certified rho0");
  named("module", "Alexander module, lattice and template sites");
  named("fos", "First-order signature set");
  named("solvable", "Solvability lower bound");
  CLI::App* ob = named("obstruct", "Run an obstruction theorem");
  ob->add_option("--theorem", c.theorem)->required()->check(CLI::IsMember({"fos", "j2", "main", "main3", "torsion"}));
  ob->add_option("--multiple", c.multiple, "Multiple for torsion")->check(CLI::NonNegativeNumber);
  CLI::App* ind = app.add_subcommand("independence", "Rank and target test over the atom basis");
  ind->fallthrough();
  ind->add_option("ledgers", c.ledgers, "Ledgers or catalog names")->required();
  ind->add_option("--target", c.ledger_target, "Target ledger")->required();
  CLI::App* rp = app.add_subcommand("replay", "Re-run a JSON report from its inputs");
  rp->fallthrough();
  rp->add_option("report", c.report_path, "Report file")->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  c.name = app.get_subcommands().front()->get_name();

  try {
    Json report;
    if (c.name == "replay") {
      report = replay_report(c.report_path);
    } else {
      Inputs in;
      in.command = c;
      if (!catalog_path.empty()) in.catalog = read_file(catalog_path);
      if (!assign_path.empty()) in.assign = read_file(assign_path);
      if (!tol.empty()) in.tol = tol;
      else if (const char* env = std::getenv(kTolEnv); env && *env) in.tol = env;
      else in.tol = kDefaultTol;
      parse_tol(in.tol);
      report = execute(in);
    }
    if (format == "json") out << serialize(report);
    else render_text(report.contains("result") ? report.at("result") : report, 0, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ReplayMismatch& e) {
    err << "replay mismatch: " << e.what() << "\n";
    return kReplayMismatch;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kParseError;
  } catch (const ValidationError& e) {
    err << e.what() << "\n";
    return kValidationError;
  } catch (const HypothesisFailed& e) {
    err << e.what() << "\n";
    return kHypothesisFailed;
  } catch (const Error& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace knotconc::cli
