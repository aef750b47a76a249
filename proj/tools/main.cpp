#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ainf/bar.hpp"
#include "ainf/document.hpp"
#include "ainf/random.hpp"

using namespace ainf;

namespace {

struct Args {
  std::string input, output;
  std::optional<int> up_to;
  std::string ring;
  std::uint64_t seed = 1;
  bool verify_only = false;
  std::optional<int> p, q;
  std::string at = "0";
};

// exit codes
constexpr int kOk = 0, kMathFail = 1, kInputError = 2;

struct Outcome {
  int code = kOk;
  Json doc;
};

std::string read_input(const std::string& path) {
  if (path.empty()) throw InputError("--input is required");
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

void write_output(const std::string& path, const Json& doc) {
  std::string text = serialize(doc);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Json report(const std::string& command, bool pass, Json details) {
  return make_document("report", {{"command", command}, {"status", pass ? "pass" : "fail"}, {"details", details}});
}

Outcome verdict(const std::string& command, bool pass, Json details) {
  return {pass ? kOk : kMathFail, report(command, pass, std::move(details))};
}

Json check_json(const CheckResult& r) {
  Json j{{"pass", r.pass}, {"checked_up_to", r.checked_up_to}};
  if (r.failure) j["failure"] = {{"relation", r.failure->m}, {"message", describe(r)}};
  return j;
}

Json load(const Args& a, std::initializer_list<const char*> kinds) {
  Json doc = parse_document(read_input(a.input));
  std::string k = document_kind(doc);
  for (const char* want : kinds)
    if (k == want) return doc;
  std::string list;
  for (const char* want : kinds) list += std::string(list.empty() ? "" : ", ") + want;
  throw InputError("/kind: expected " + list + ", got '" + k + "'");
}

RingMorphism change_to(const Ring* src, const Ring* tgt) {
  if (src == tgt) return RingMorphism::identity(src);
  if (src->kind() == RingKind::Rationals && tgt->kind() == RingKind::PrimeField)
    return RingMorphism::mod_p(src, tgt->characteristic());
  if (src->is_base_field() && tgt->is_polynomial_like() && tgt->base() == src) return RingMorphism::constant(src, tgt);
  if (src->kind() == RingKind::Poly && tgt->kind() == RingKind::Fraction && tgt->base() == src)
    return RingMorphism::fraction_embed(src);
  if (src->kind() == RingKind::Poly && tgt->kind() == RingKind::Truncated && tgt->base() == src->base())
    return RingMorphism::quotient(src, tgt->order());
  throw InputError("/ring: no base change from " + src->descriptor() + " to " + tgt->descriptor());
}

AlgebraPtr with_ring(const Args& a, AlgebraPtr alg) {
  if (a.ring.empty()) return alg;
  const Ring* R = Ring::parse(a.ring);
  if (R == alg->ring()) return alg;
  return std::make_shared<AInfAlgebra>(base_change(*alg, change_to(alg->ring(), R)));
}

ModulePtr with_ring(const Args& a, ModulePtr m) {
  if (a.ring.empty()) return m;
  const Ring* R = Ring::parse(a.ring);
  if (R == m->ring()) return m;
  RingMorphism phi = change_to(m->ring(), R);
  auto alg = std::make_shared<AInfAlgebra>(base_change(*m->algebra, phi));
  return std::make_shared<AInfModule>(base_change(*m, alg, phi));
}

// ---------------------------------------------------------------- commands

Outcome check_algebra(const Args& a) {
  AlgebraPtr alg = with_ring(a, algebra_from_json(payload_of(load(a, {"algebra"}))));
  CheckResult r = check_alg_relations(*alg, a.up_to);
  return verdict("check-algebra", r.pass, check_json(r));
}

Outcome check_module(const Args& a) {
  ModulePtr m = with_ring(a, module_from_json(payload_of(load(a, {"module"}))));
  CheckResult ra = check_alg_relations(*m->algebra, a.up_to);
  CheckResult rm = check_mod_relations(*m, a.up_to);
  return verdict("check-module", ra.pass && rm.pass, {{"algebra", check_json(ra)}, {"module", check_json(rm)}});
}

Outcome check_morphism(const Args& a) {
  Json doc = load(a, {"morphism", "module_morphism", "pair"});
  std::string k = document_kind(doc);
  if (k == "morphism") {
    AlgMorphism f = morphism_from_json(payload_of(doc));
    CheckResult r = check_alg_morphism(f, a.up_to);
    bool qi = is_quasi_iso(f);
    Json d = check_json(r);
    d["quasi_iso"] = qi;
    return verdict("check-morphism", r.pass, d);
  }
  if (k == "module_morphism") {
    ModMorphism f = module_morphism_from_json(payload_of(doc));
    CheckResult r = check_mod_morphism(f, a.up_to);
    Json d = check_json(r);
    d["quasi_iso"] = is_quasi_iso(f);
    return verdict("check-morphism", r.pass, d);
  }
  PairMorphism p = pair_from_json(payload_of(doc));
  PairCheck pc = check_pair(p);
  return verdict("check-morphism", pc.pass,
                 {{"algebra_side", check_json(pc.algebra_side)}, {"module_side", check_json(pc.module_side)},
                  {"message", pc.message}});
}

Outcome bar_check_cmd(const Args& a) {
  Json doc = load(a, {"algebra", "module"});
  if (document_kind(doc) == "algebra") {
    AlgebraPtr alg = with_ring(a, algebra_from_json(payload_of(doc)));
    BarCheck b = bar_check(*alg);
    bool rel = check_alg_relations(*alg).pass;
    return verdict("bar-check", b.pass, {{"bar", b.pass}, {"relations", rel}, {"agree", rel == b.pass}, {"message", b.message}});
  }
  ModulePtr m = with_ring(a, module_from_json(payload_of(doc)));
  BarCheck b = module_bar_check(*m);
  bool rel = check_mod_relations(*m).pass;
  return verdict("bar-check", b.pass, {{"bar", b.pass}, {"relations", rel}, {"agree", rel == b.pass}, {"message", b.message}});
}

Outcome transfer_cmd(const Args& a) {
  Json doc = load(a, {"algebra", "module"});
  TransferOptions opt;
  if (a.up_to) opt.cap = *a.up_to;
  if (document_kind(doc) == "algebra") {
    AlgebraPtr alg = with_ring(a, algebra_from_json(payload_of(doc)));
    AlgebraTransfer t = minimal_model(alg, opt);
    bool ok = check_alg_relations(*t.minimal).pass && check_alg_morphism(t.f).pass && is_quasi_iso(t.f);
    if (!ok) return verdict("transfer", false, {{"message", "transferred structure failed its checks"}});
    return {kOk, document_of(*t.minimal)};
  }
  ModulePtr m = with_ring(a, module_from_json(payload_of(doc)));
  PairTransfer t = minimal_model(m->algebra, m, opt);
  PairCheck pc = check_pair(t.pair);
  bool ok = check_mod_relations(*t.minimal_module).pass && pc.pass;
  if (!ok) return verdict("transfer", false, {{"message", "transferred structure failed its checks: " + pc.message}});
  return {kOk, document_of(*t.minimal_module)};
}

Outcome cohomology_cmd(const Args& a) {
  AlgebraPtr alg = with_ring(a, algebra_from_json(payload_of(load(a, {"algebra"}))));
  CohomologyResult r = cohomology(*alg);
  return {kOk, document_of(*r.algebra)};
}

Json hh_json(const HHGroup& g) {
  Json basis = Json::array();
  for (const auto& b : g.basis) basis.push_back(to_json(b));
  return {{"p", g.p}, {"q", g.q}, {"dim", g.dim}, {"basis", basis}};
}

Outcome hochschild_cmd(const Args& a) {
  Json doc = load(a, {"algebra", "module"});
  HochschildSetting S;
  if (document_kind(doc) == "algebra") {
    AlgebraPtr alg = with_ring(a, algebra_from_json(payload_of(doc)));
    if (!alg->graded_associative()) throw InputError("/ops: Hochschild cohomology needs a graded associative algebra");
    S = HochschildSetting::of(*alg);
  } else {
    ModulePtr m = with_ring(a, module_from_json(payload_of(doc)));
    if (!m->algebra->graded_associative()) throw InputError("/algebra/ops: Hochschild cohomology needs a graded associative algebra");
    S = HochschildSetting::of(*m->algebra, truncate_to_M2(*m));
  }
  Json groups = Json::array();
  if (a.p && a.q) {
    groups.push_back(hh_json(hh_group(S, *a.p, *a.q)));
  } else {
    int n = a.up_to.value_or(3);
    for (int p = 0; p <= n; ++p)
      for (int q = -n; q <= 1; ++q) {
        if (a.p && p != *a.p) continue;
        if (a.q && q != *a.q) continue;
        HHGroup g = hh_group(S, p, q);
        if (g.dim) groups.push_back(hh_json(g));
      }
  }
  return verdict("hochschild", true, {{"groups", groups}});
}

Json stage_json(const StageRecord& s) {
  Json j{{"stage", s.stage}, {"vanished", s.report.vanished}, {"closed", s.report.closed}, {"note", s.report.note},
         {"cocycle", to_json(s.report.cocycle)}};
  if (s.report.primitive) j["primitive"] = to_json(*s.report.primitive);
  return j;
}

Outcome obstruct_cmd(const Args& a) {
  ModulePtr m = with_ring(a, module_from_json(payload_of(load(a, {"module"}))));
  FormalityOptions opt;
  opt.max_stage = a.up_to.value_or(2);
  FormalityCertificate c = prove_module_formality(m->algebra, m, opt);
  Json stages = Json::array();
  for (const auto& s : c.stages) stages.push_back(stage_json(s));
  bool pass = c.verdict != Verdict::NotFormal;
  Json d{{"up_to", *opt.max_stage}, {"verdict", to_string(c.verdict)}, {"reason", c.reason}, {"stages", stages}};
  if (!pass) d["failing_stage"] = c.stage;
  return verdict("obstruct", pass, d);
}

Outcome verify_cmd(const Args& a, const std::string& name) {
  FormalityCertificate c = certificate_from_json(payload_of(load(a, {"certificate"})));
  std::string why;
  bool ok = verify_certificate(c, &why);
  Json d{{"verdict", to_string(c.verdict)}, {"stage", c.stage}, {"valid", ok}};
  if (!ok) d["message"] = why;
  return verdict(name, ok, d);
}

Outcome prove_cmd(const Args& a) {
  if (a.verify_only) return verify_cmd(a, "prove-formality");
  ModulePtr m = with_ring(a, module_from_json(payload_of(load(a, {"module"}))));
  FormalityOptions opt;
  if (a.up_to) opt.cap = *a.up_to;
  FormalityCertificate c = prove_module_formality(m->algebra, m, opt);
  return {c.verdict == Verdict::Formal ? kOk : kMathFail, document_of(c)};
}

Outcome normal_cone_cmd(const Args& a) {
  ModulePtr m = with_ring(a, module_from_json(payload_of(load(a, {"module"}))));
  NormalCone nc = normal_cone_deform(m->algebra, m);
  return {kOk, document_of(*nc.module)};
}

Outcome fibre_cmd(const Args& a) {
  Json doc = load(a, {"algebra", "module"});
  if (document_kind(doc) == "algebra") {
    AlgebraPtr alg = algebra_from_json(payload_of(doc));
    if (alg->ring()->kind() != RingKind::Poly) throw InputError("/ring: fibres need a ring k[h]");
    Scalar at = Scalar::parse(alg->ring()->base(), a.at);
    return {kOk, document_of(fibre(*alg, at))};
  }
  ModulePtr m = module_from_json(payload_of(doc));
  if (m->ring()->kind() != RingKind::Poly) throw InputError("/ring: fibres need a ring k[h]");
  Scalar at = Scalar::parse(m->ring()->base(), a.at);
  auto af = std::make_shared<AInfAlgebra>(fibre(*m->algebra, at));
  return {kOk, document_of(fibre(*m, af, at))};
}

Outcome rees_cmd(const Args& a) {
  FilteredInput f = filtration_from_json(payload_of(load(a, {"filtration"})));
  ReesResult r = rees_deformation(*f.algebra, f.filtration);
  if (f.module) {
    ReesModuleResult rm = rees_deformation(r, *f.module, f.module_filtration);
    return {kOk, document_of(*rm.module)};
  }
  return {kOk, document_of(*r.algebra)};
}

Outcome snf_cmd(const Args& a) {
  Json doc = load(a, {"matrix"});
  Json pl = payload_of(doc);
  if (!pl.contains("ring") || !pl.contains("entries")) throw InputError("/: matrix needs 'ring' and 'entries'");
  const Ring* R = Ring::parse(pl["ring"].get<std::string>());
  Matrix m = matrix_from_json(pl["entries"], R, "/entries");
  SmithForm s = smith_normal_form(m);
  std::string why;
  bool ok = is_valid_smith(m, s, &why);
  Json inv = Json::array();
  for (const auto& x : s.invariants()) inv.push_back(x.to_string());
  Json d{{"valid", ok}, {"rank", s.rank}, {"invariants", inv}, {"D", to_json(s.D)}, {"U", to_json(s.U)},
         {"V", to_json(s.V)}};
  if (!ok) d["message"] = why;
  return verdict("snf", ok, d);
}

Json dims_json(const std::map<int, size_t>& m) {
  Json j = Json::object();
  for (const auto& [i, v] : m) j[std::to_string(i)] = v;
  return j;
}

Outcome freeness_cmd(const Args& a) {
  PolyComplex c = poly_complex_from_json(payload_of(load(a, {"poly_complex"})));
  FreenessReport f = freeness_test(c);
  Json tors = Json::object();
  for (const auto& [i, v] : f.cohomology.torsion)
    if (!v.empty()) tors[std::to_string(i)] = v;
  return verdict("freeness", f.free,
                 {{"free", f.free}, {"generic", dims_json(f.dims.generic)}, {"special", dims_json(f.dims.special)},
                  {"free_rank", dims_json(f.cohomology.free_rank)}, {"torsion", tors}, {"jumps", f.jumps}});
}

Outcome canonicalize_cmd(const Args& a) {
  Json doc = parse_document(read_input(a.input));
  std::string k = document_kind(doc);
  Json p = payload_of(doc);
  Json out;
  if (k == "algebra") out = to_json(*algebra_from_json(p));
  else if (k == "module") out = to_json(*module_from_json(p));
  else if (k == "morphism") out = to_json(morphism_from_json(p));
  else if (k == "module_morphism") out = to_json(module_morphism_from_json(p));
  else if (k == "pair") out = to_json(pair_from_json(p));
  else if (k == "contraction") out = to_json(contraction_from_json(p));
  else if (k == "poly_complex") out = to_json(poly_complex_from_json(p));
  else if (k == "filtration") out = to_json(filtration_from_json(p));
  else if (k == "certificate") out = to_json(certificate_from_json(p));
  else if (k == "matrix") {
    if (!p.contains("ring") || !p.contains("entries")) throw InputError("/: matrix needs 'ring' and 'entries'");
    out = to_json(matrix_from_json(p["entries"], Ring::parse(p["ring"].get<std::string>()), "/entries"));
  } else
    throw InputError("/kind: cannot canonicalize '" + k + "'");
  return {kOk, make_document(k, out)};
}

Outcome export_fixtures_cmd(const Args& a) {
  if (a.output.empty()) throw InputError("--output must name a directory");
  std::filesystem::create_directories(a.output);
  Json names = Json::array();
  for (const auto& [name, doc] : fixture_catalog()) {
    std::ofstream out(std::filesystem::path(a.output) / (name + ".json"), std::ios::binary);
    out << serialize(doc);
    names.push_back(name);
  }
  return {kOk, report("export-fixtures", true, {{"written", names}})};
}

Outcome selftest_cmd(const Args& a) {
  Rng rng(a.seed);
  const Ring* Q = a.ring.empty() ? Ring::rationals() : Ring::parse(a.ring);
  int n = a.up_to.value_or(10), agree = 0;
  for (int i = 0; i < n; ++i) {
    AlgebraPtr alg = i % 2 ? random_valid_algebra(rng, Q) : std::make_shared<AInfAlgebra>(random_algebra_ops(rng, Q));
    agree += check_alg_relations(*alg).pass == bar_check(*alg).pass;
  }
  int sq = 0;
  for (int i = 0; i < n; ++i) {
    AssocTriple t = random_assoc_triple(rng, Q);
    HochschildSetting S = HochschildSetting::of(*t.algebra, *t.m, *t.n);
    CochainSpace cs(S, 1 + i % 2, -(i % 3));
    SparseVec v;
    for (size_t j = 0; j < cs.dim(); ++j)
      if (uniform(rng, 0, 1)) v[static_cast<int>(j)] = Scalar::from_int(Q, uniform(rng, -2, 2));
    sq += hochschild_d(S, hochschild_d(S, cs.cochain(v))).is_zero();
  }
  bool ok = agree == n && sq == n;
  return verdict("selftest", ok, {{"seed", a.seed}, {"bar_agreement", agree}, {"d_squared_zero", sq}, {"trials", n}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact A-infinity algebra and module toolkit"};
  app.require_subcommand(1);
  Args a;
  auto common = [&](CLI::App* c) {
    c->add_option("--input,-i", a.input, "input document (- for stdin)");
    c->add_option("--output,-o", a.output, "output file (default stdout)");
    c->add_option("--up-to", a.up_to, "arity, stage or size bound");
    c->add_option("--ring", a.ring, "ring descriptor, e.g. QQ, GF(5), QQ[h]");
    c->add_option("--seed", a.seed, "seed for randomized runs");
    c->add_flag("--verify-only", a.verify_only, "only re-check a stored certificate");
    return c;
  };
  std::map<std::string, std::function<Outcome(const Args&)>> cmds{
      {"check-algebra", check_algebra},
      {"check-module", check_module},
      {"check-morphism", check_morphism},
      {"bar-check", bar_check_cmd},
      {"transfer", transfer_cmd},
      {"cohomology", cohomology_cmd},
      {"hochschild", hochschild_cmd},
      {"obstruct", obstruct_cmd},
      {"prove-formality", prove_cmd},
      {"verify-certificate", [](const Args& x) { return verify_cmd(x, "verify-certificate"); }},
      {"normal-cone", normal_cone_cmd},
      {"fibre", fibre_cmd},
      {"rees", rees_cmd},
      {"snf", snf_cmd},
      {"freeness", freeness_cmd},
      {"canonicalize", canonicalize_cmd},
      {"export-fixtures", export_fixtures_cmd},
      {"selftest", selftest_cmd},
  };
  std::map<std::string, std::string> blurb{
      {"check-algebra", "check the Stasheff relations of an algebra"},
      {"check-module", "check the module relations"},
      {"check-morphism", "check an algebra, module or pair morphism"},
      {"bar-check", "check d^2 = 0 on the bar construction and compare with the relations"},
      {"transfer", "minimal model by homotopy transfer"},
      {"cohomology", "cohomology algebra with the induced product"},
      {"hochschild", "Hochschild groups HH^{p,q}"},
      {"obstruct", "obstruction classes up to a stage"},
      {"prove-formality", "run the formality prover and emit a certificate"},
      {"verify-certificate", "re-check a formality certificate"},
      {"normal-cone", "deformation to the normal cone over QQ[h]"},
      {"fibre", "fibre of a QQ[h] structure at a point"},
      {"rees", "Rees deformation of a filtered algebra"},
      {"snf", "Smith normal form of a polynomial matrix"},
      {"freeness", "cohomology and freeness of a complex over QQ[h]"},
      {"canonicalize", "parse and re-emit a document in canonical form"},
      {"export-fixtures", "write every built-in fixture into a directory"},
      {"selftest", "quick internal consistency run"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, fn] : cmds) subs[name] = common(app.add_subcommand(name, blurb.at(name)));
  subs["hochschild"]->add_option("--p", a.p, "Hochschild p");
  subs["hochschild"]->add_option("--q", a.q, "Hochschild q");
  subs["fibre"]->add_option("--at", a.at, "evaluation point");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  std::string name;
  for (const auto& [n, s] : subs)
    if (s->parsed()) name = n;
  std::string msg;
  try {
    Outcome o = cmds.at(name)(a);
    write_output(name == "export-fixtures" ? "" : a.output, o.doc);
    return o.code;
  } catch (const std::exception& e) {
    msg = e.what();
  }
  std::cerr << "input error: " << msg << "\n";
  try {
    write_output(name == "export-fixtures" ? "" : a.output,
                 make_document("report", {{"command", name}, {"status", "input_error"}, {"details", {{"message", msg}}}}));
  } catch (...) {
  }
  return kInputError;
}
