// nsd: command-line front end.
//
// Exit codes: 0 success, 1 verdict Fail, 2 usage or input error,
// 3 fuel exhausted or verdict Unknown.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "nsd/checker.hpp"
#include "nsd/dialectica.hpp"
#include "nsd/error.hpp"
#include "nsd/formula_parse.hpp"
#include "nsd/machine.hpp"
#include "nsd/pa2.hpp"
#include "nsd/parse.hpp"
#include "nsd/realizer.hpp"
#include "nsd/schema.hpp"
#include "nsd/table.hpp"

using namespace nsd;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kResource = 3 };

const Type N = Type::nat();

struct Options {
  std::uint64_t fuel = kDefaultFuel;
  std::uint64_t cap = kDefaultCap;
  std::uint64_t seed = 0;
  bool json = false;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string dir_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? "" : path.substr(0, slash + 1);
}

Json var_list(const VarList& vs) {
  Json a = Json::array();
  for (const auto& [x, t] : vs) a.push_back({{"name", x}, {"type", t.str()}});
  return a;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Pass:
    case Verdict::BoundedPass: return kOk;
    case Verdict::Fail: return kFail;
    case Verdict::Unknown: return kResource;
  }
  return kResource;
}

// Rows x cols with roughly 40% true entries, from the seed. A row left
// empty gets one entry so that every row has a witness.
FiniteRelationTable seeded_table(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(seed);
  std::vector<bool> cells(rows * cols);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = rng() % 100 < 40;
  FiniteRelationTable r(rows, cols, cells);
  for (std::size_t n = 0; n < rows; ++n)
    if (!r.least_witness(n)) r.set(n, rng() % cols, true);
  return r;
}

FiniteRelationTable load_table(const std::string& path, const Options& o, std::size_t rows, std::size_t cols) {
  return path.empty() ? seeded_table(o.seed, rows, cols) : FiniteRelationTable::parse(read_file(path));
}

Term numerals(const std::vector<std::uint64_t>& xs) {
  std::vector<Term> ts;
  for (auto x : xs) ts.push_back(Term::numeral(x));
  return Term::seq_literal(N, ts);
}

// \n:N. get(<v0, ..., vk>, n, 0) for every v in cols^rows.
std::vector<Term> table_functions(std::size_t rows, std::size_t cols) {
  std::vector<Term> out;
  std::vector<std::uint64_t> v(rows, 0);
  for (;;) {
    out.push_back(Term::lam("n", N, Term::get(numerals(v), Term::var("n"), Term::zero())));
    std::size_t i = rows;
    while (i > 0 && ++v[i - 1] == cols) v[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

// All sequences over 0..rows-1 of length <= len.
std::vector<Term> small_sequences(std::size_t rows, std::size_t len) {
  std::vector<Term> out;
  std::vector<std::uint64_t> s;
  auto go = [&](auto&& self) -> void {
    out.push_back(numerals(s));
    if (s.size() == len) return;
    for (std::uint64_t a = 0; a < rows; ++a) {
      s.push_back(a);
      self(self);
      s.pop_back();
    }
  };
  go(go);
  return out;
}

// ---------------------------------------------------------------------------

int cmd_tc(const Options& o, const std::string& path) {
  Term t = parse_term(read_file(path));
  Type ty = infer_type({}, t);
  if (o.json)
    std::cout << Json{{"term", t.str()}, {"type", ty.str()}}.dump(2) << "\n";
  else
    std::cout << t << " : " << ty << "\n";
  return kOk;
}

int cmd_eval(const Options& o, const std::string& path) {
  Term t = parse_term(read_file(path));
  Type ty = infer_type({}, t);
  Term nf = normalize(t, o.fuel);
  if (o.json)
    std::cout << Json{{"normal_form", nf.str()}, {"type", ty.str()}}.dump(2) << "\n";
  else
    std::cout << nf << "\n";
  return kOk;
}

int cmd_translate(const Options& o, const std::string& path) {
  FormulaFile ff = parse_formula_file(read_file(path));
  NormalForm nf = dst(ff.formula, ff.ctx);
  if (o.json)
    std::cout << Json{{"evars", var_list(nf.evars)}, {"uvars", var_list(nf.uvars)}, {"matrix", nf.matrix.str()}}.dump(2)
              << "\n";
  else
    std::cout << nf.str() << "\n";
  return kOk;
}

int cmd_embed(const Options& o, const std::string& path) {
  pa2::Formula2 f = pa2::parse_formula2(read_file(path));
  Formula g = pa2::embed(f);
  if (o.json)
    std::cout << Json{{"input", f.str()}, {"embedded", g.str()}}.dump(2) << "\n";
  else
    std::cout << g << "\n";
  return kOk;
}

struct AxiomArgs {
  std::string schema, phi, x = "x", y = "y", n = "n", sigma = "N", tau = "N", term;
  std::vector<std::string> params, preds;
};

int cmd_axiom(const Options& o, const AxiomArgs& a) {
  SchemaParams p;
  p.x = a.x;
  p.y = a.y;
  p.n = a.n;
  p.sigma = parse_type(a.sigma);
  p.tau = parse_type(a.tau);
  p.params = a.params;
  Signature sig = Signature::standard();
  for (const auto& r : a.preds) sig.add({r, {N, N}, [](std::span<const std::uint64_t>) { return false; }});
  if (!a.phi.empty()) {
    TypingContext ctx{{a.n, N}, {a.x, p.sigma}, {a.y, p.tau}};
    for (const auto& q : a.params) ctx.declare(q, N);
    p.phi = parse_formula(a.phi, sig, ctx);
  }
  if (!a.term.empty()) p.term = parse_term(a.term);
  Formula f = axiom_instance(a.schema, p);
  if (o.json)
    std::cout << Json{{"schema", a.schema}, {"formula", f.str()}}.dump(2) << "\n";
  else
    std::cout << f << "\n";
  return kOk;
}

int cmd_check(const Options& o, const std::string& fml, const std::string& bundle, const std::string& cfg,
              bool cap_set, bool fuel_set) {
  FormulaFile ff = parse_formula_file(read_file(fml));
  NormalForm nf = dst(ff.formula, ff.ctx);
  RealizerBundle r;
  std::istringstream lines(read_file(bundle));
  std::string line;
  while (std::getline(lines, line)) {
    std::string body = line.substr(0, line.find('#'));
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    r.push_back(parse_term(body));
  }
  const std::string base = dir_of(cfg);
  Instance inst = parse_instance(read_file(cfg), [&](const std::string& p) { return read_file(base + p); });
  for (const auto& d : ff.sig.decls())
    if (!inst.sig.contains(d.name)) throw InstanceError("no table for predicate " + d.name);
  if (cap_set) inst.cap = o.cap;
  if (fuel_set) inst.fuel = o.fuel;
  Report rep = check_realizer(nf, r, inst, ff.ctx);
  std::cout << (o.json ? rep.json() + "\n" : rep.str());
  return exit_for(rep.verdict);
}

// ---------------------------------------------------------------------------
// Demos.

int demo_fac(const Options& o, const std::string& table, const std::string& seq) {
  FiniteRelationTable r = load_table(table, o, 5, 8);
  Term s = seq.empty() ? numerals({0, 1, 2, 1, 4}) : parse_term(seq);
  FacResult res = fac_choice_traced(s, WitnessFinder::from_table(r), o.fuel);
  Machine m(o.fuel);
  Json steps = Json::array();
  bool holds = true;
  Json values = Json::object();
  for (const auto& st : res.steps) {
    Json j{{"entry", st.entry.str()}, {"duplicate", st.duplicate}};
    if (st.witness) j["witness"] = st.witness->str();
    steps.push_back(j);
    std::uint64_t n = *as_numeral(st.entry);
    std::uint64_t fx = m.eval_nat(Term::app(res.f, st.entry));
    values[std::to_string(n)] = fx;
    holds = holds && r(n, fx);
  }
  if (o.json) {
    std::cout << Json{{"table", r.str()}, {"s", s.str()}, {"steps", steps}, {"f", values}, {"postcondition", holds}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "table:\n" << r.str() << "s = " << s << "\n";
    for (std::size_t i = 0; i < res.steps.size(); ++i) {
      const auto& st = res.steps[i];
      std::cout << "step " << i + 1 << ": entry " << st.entry;
      if (st.duplicate)
        std::cout << ", duplicate, f unchanged\n";
      else
        std::cout << ", witness " << *st.witness << "\n";
    }
    for (const auto& [n, v] : values.items()) std::cout << "f(" << n << ") = " << v << "\n";
    std::cout << "postcondition: " << (holds ? "holds" : "FAILS") << "\n";
  }
  return holds ? kOk : kFail;
}

int demo_csat(const Options& o, const std::string& sigma, const std::string& table) {
  if (parse_type(sigma) != N) throw UnsupportedType("the csat demo supports sigma = N only");
  FiniteRelationTable r = load_table(table, o, 3, 3);
  if (r.rows() > 4 || r.cols() > 4) throw InstanceError("the csat demo enumerates all table functions; use at most 4 x 4");
  Signature sig = Signature::standard();
  sig.add(r.predicate("R"));
  TypingContext ctx{{"n", N}, {"x", N}};
  Formula phi = parse_formula("R(n, x)", sig, ctx);
  SchemaParams p;
  p.phi = phi;
  Formula inst_f = axiom_instance("csat", p);
  NormalForm nf = dst(inst_f);
  RealizerBundle bundle = csat_realizers(dst(phi, ctx));
  Formula vc = simplify(instantiate(nf, bundle), o.fuel);
  bool fac_shape = match_fac(vc).has_value();

  Instance inst;
  inst.sig = sig;
  inst.cap = o.cap;
  inst.fuel = o.fuel;
  for (const auto& [y, t] : nf.uvars) inst.generators[y] = small_sequences(r.rows(), 3);
  inst.generators["f"] = table_functions(r.rows(), r.cols());
  Report rep = check_realizer(nf, bundle, inst);

  if (o.json) {
    Json b = Json::array();
    for (const auto& t : bundle) b.push_back(t.str());
    std::cout << Json{{"instance", inst_f.str()},
                      {"normal_form", nf.str()},
                      {"realizers", b},
                      {"verification_condition", vc.str()},
                      {"finite_choice_instance", fac_shape},
                      {"report", Json::parse(rep.json())}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "table:\n" << r.str();
    std::cout << "instance: " << inst_f << "\n";
    std::cout << "normal form: " << nf.str() << "\n";
    for (std::size_t i = 0; i < bundle.size(); ++i) std::cout << nf.evars[i].first << " := " << bundle[i] << "\n";
    std::cout << "verification condition: " << vc << "\n";
    std::cout << "finite choice instance: " << (fac_shape ? "yes" : "no") << "\n";
    std::cout << rep.str();
  }
  if (!fac_shape) return kFail;
  return exit_for(rep.verdict);
}

int demo_barrec(const Options& o, const std::string& table, std::int64_t k) {
  FiniteRelationTable r = load_table(table, o, 4, 4);
  std::uint64_t kk = k < 0 ? r.rows() - 1 : static_cast<std::uint64_t>(k);
  BarRecDemo d = br_countable_choice(r, kk, o.fuel);
  Machine m(o.fuel);
  bool least = true;
  Json values = Json::array();
  for (std::uint64_t n = 0; n <= kk; ++n) {
    std::uint64_t v = m.eval_nat(Term::app(d.f, Term::numeral(n)));
    values.push_back(v);
    least = least && r.least_witness(n) == v;
  }
  if (o.json) {
    std::cout << Json{{"table", r.str()}, {"k", kk}, {"prefix", d.prefix.str()}, {"f", values},
                      {"least_witness", least}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "table:\n" << r.str() << "k = " << kk << "\n";
    std::cout << "br(Y; G; H; <>) = " << d.prefix << "\n";
    for (std::uint64_t n = 0; n <= kk; ++n) std::cout << "f(" << n << ") = " << values[n] << "\n";
    std::cout << "least witness function: " << (least ? "yes" : "NO") << "\n";
  }
  return least ? kOk : kFail;
}

int demo_comprehension(const Options& o, const std::string& phi_src, std::uint64_t k) {
  pa2::Formula2 phi = pa2::parse_formula2(phi_src);
  pa2::Formula2 ci = pa2::comprehension_instance(phi, "n");
  pa2::ComprehensionAtBound c = pa2::comprehension_at_bound(phi, "n", k, o.fuel);
  Instance inst;
  inst.fuel = o.fuel;
  bool all = true;
  Json rows = Json::array();
  for (std::uint64_t n = 0; n <= k; ++n) {
    EvalResult e = eval_internal(c.biconditional, {{"n", Term::numeral(n)}, {c.set_var, c.s}}, inst);
    bool ok = e.value == Truth::True;
    all = all && ok;
    rows.push_back(ok);
  }
  if (o.json) {
    std::cout << Json{{"phi", phi.str()},
                      {"instance", ci.str()},
                      {"embedded", pa2::embed(ci).str()},
                      {"s", c.s.str()},
                      {"biconditional", c.biconditional.str()},
                      {"holds", rows}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "instance: " << ci.str() << "\n";
    std::cout << "embedded: " << pa2::embed(ci) << "\n";
    std::cout << c.set_var << " := " << c.s << "\n";
    std::cout << "check " << c.biconditional << " for n <= " << k << ": " << (all ? "holds" : "FAILS") << "\n";
  }
  return all ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonstandard Dialectica toolkit: terms, translation, realizers and checking"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--fuel", o.fuel, "Evaluation step budget")->default_val(kDefaultFuel);
  app.add_option("--cap", o.cap, "Range 0..cap for unbounded Nat quantifiers")->default_val(kDefaultCap);
  app.add_option("--seed", o.seed, "Seed for generated demo tables")->default_val(0);
  app.add_flag("--json", o.json, "Machine-readable output");

  std::string path;
  auto* tc = app.add_subcommand("tc", "Type-check a term (.trm)");
  tc->add_option("file", path, "Term file, - for stdin")->required();
  auto* ev = app.add_subcommand("eval", "Normalize a closed term (.trm)");
  ev->add_option("file", path, "Term file, - for stdin")->required();
  auto* tr = app.add_subcommand("translate", "Print the normal form of a formula file (.fml)");
  tr->add_option("file", path, "Formula file, - for stdin")->required();
  auto* em = app.add_subcommand("embed", "Embed a second-order arithmetic formula");
  em->add_option("file", path, "Formula file, - for stdin")->required();

  AxiomArgs ax;
  auto* axc = app.add_subcommand("axiom", "Print an axiom instance");
  axc->add_option("schema", ax.schema, "Schema name")->required()->check(CLI::IsMember(schema_names()));
  axc->add_option("--phi", ax.phi, "Matrix formula");
  axc->add_option("--x", ax.x, "Name of x")->default_val("x");
  axc->add_option("--y", ax.y, "Name of y")->default_val("y");
  axc->add_option("--n", ax.n, "Name of n")->default_val("n");
  axc->add_option("--sigma", ax.sigma, "Type of x")->default_val("N");
  axc->add_option("--tau", ax.tau, "Type of y")->default_val("N");
  axc->add_option("--param", ax.params, "Numerical parameter (repeatable)");
  axc->add_option("--pred", ax.preds, "Declare a predicate R(N, N) (repeatable)");
  axc->add_option("--term", ax.term, "Closed term");

  std::string fml, bundle, cfg;
  auto* ck = app.add_subcommand("check", "Check a realizer bundle against a formula's normal form");
  ck->add_option("formula", fml, "Formula file (.fml)")->required();
  ck->add_option("bundle", bundle, "Realizer terms (.trm), one per line")->required();
  ck->add_option("instance", cfg, "Instance (.cfg)")->required();

  auto* demo = app.add_subcommand("demo", "Demonstrations");
  demo->require_subcommand(1);
  demo->fallthrough();
  std::string table, seq, sigma = "N", phi = "n = 0 | n = 2 * 2";
  std::int64_t k = -1;
  std::uint64_t ck_bound = 8;
  auto* dfac = demo->add_subcommand("fac", "Finite choice on a relation table");
  dfac->add_option("--table", table, "Table (.tbl); default: generated from --seed");
  dfac->add_option("--seq", seq, "Sequence term; default <0, 1, 2, 1, 4>");
  auto* dcsat = demo->add_subcommand("csat", "Countable saturation realizers for R(n, x)");
  dcsat->add_option("--sigma", sigma, "Type of x (N only)")->default_val("N");
  dcsat->add_option("--table", table, "Table (.tbl), at most 4 x 4; default: generated from --seed");
  auto* dbr = demo->add_subcommand("barrec", "Countable choice by bar recursion");
  dbr->add_option("--table", table, "Table (.tbl); default: generated from --seed");
  dbr->add_option("--k", k, "Last row; default: all rows");
  auto* dcomp = demo->add_subcommand("comprehension", "Comprehension at a bound");
  dcomp->add_option("--phi", phi, "Decidable formula in n")->default_val("n = 0 | n = 2 * 2");
  dcomp->add_option("--k", ck_bound, "Bound")->default_val(8);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*tc) return cmd_tc(o, path);
    if (*ev) return cmd_eval(o, path);
    if (*tr) return cmd_translate(o, path);
    if (*em) return cmd_embed(o, path);
    if (*axc) return cmd_axiom(o, ax);
    if (*ck) return cmd_check(o, fml, bundle, cfg, app.count("--cap") > 0, app.count("--fuel") > 0);
    if (*dfac) return demo_fac(o, table, seq);
    if (*dcsat) return demo_csat(o, sigma, table);
    if (*dbr) return demo_barrec(o, table, k);
    if (*dcomp) return demo_comprehension(o, phi, ck_bound);
  } catch (const FuelExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
