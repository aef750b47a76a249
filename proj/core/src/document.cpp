#include "ainf/document.hpp"

#include <set>

#include "ainf/fixtures.hpp"

namespace ainf {

namespace {

const std::set<std::string> kKinds{"algebra",     "module",       "morphism", "module_morphism", "pair",  "contraction",
                                   "poly_complex", "matrix",       "filtration", "certificate",    "report"};

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw InputError((path.empty() ? "/" : path) + ": " + msg);
}

void check_keys(const Json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  for (const auto& k : required)
    if (!j.contains(k)) bad(path, "missing field '" + k + "'");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!required.count(it.key()) && !optional.count(it.key())) bad(path, "unknown field '" + it.key() + "'");
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

int arity_key(const std::string& k, const std::string& path) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(k, &pos);
  } catch (const std::exception&) {
    bad(path, "key '" + k + "' is not an integer");
  }
  if (pos != k.size()) bad(path, "key '" + k + "' is not an integer");
  return v;
}

const Ring* ring_from(const Json& j, const std::string& path) {
  try {
    return Ring::parse(get_string(j, path));
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

Json scalar_json(const Scalar& s) { return s.to_string(); }

Scalar scalar_from(const Json& j, const Ring* R, const std::string& path) {
  std::string t = get_string(j, path);
  try {
    return Scalar::parse(R, t);
  } catch (const Error& e) {
    bad(path, std::string("bad scalar '") + t + "': " + e.what());
  }
}

SpacePtr space_from(const Json& j, const Ring* R, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of components");
  std::vector<GradedSpace::Component> comps;
  std::set<std::string> seen;
  for (size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "/" + std::to_string(i);
    check_keys(j[i], {"degree", "basis"}, {}, p);
    GradedSpace::Component c{get_int(j[i]["degree"], p + "/degree"), {}};
    const Json& b = j[i]["basis"];
    if (!b.is_array()) bad(p + "/basis", "expected an array of labels");
    for (size_t t = 0; t < b.size(); ++t) {
      std::string l = get_string(b[t], p + "/basis/" + std::to_string(t));
      if (!seen.insert(l).second) bad(p + "/basis/" + std::to_string(t), "duplicate label '" + l + "'");
      c.labels.push_back(l);
    }
    comps.push_back(c);
  }
  try {
    return GradedSpace::make(R, comps);
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

size_t label_index(const GradedSpace& s, const Json& j, const std::string& path) {
  std::string l = get_string(j, path);
  auto i = s.find(l);
  if (!i) bad(path, "unknown basis label '" + l + "'");
  return *i;
}

SparseVec vec_from(const Json& j, const GradedSpace& s, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object label -> scalar");
  SparseVec v;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string p = path + "/" + it.key();
    auto i = s.find(it.key());
    if (!i) bad(p, "unknown basis label '" + it.key() + "'");
    Scalar x = scalar_from(it.value(), s.ring(), p);
    if (!x.is_zero()) v[static_cast<int>(*i)] = x;
  }
  return v;
}

Json vec_json(const SparseVec& v, const GradedSpace& s) {
  Json o = Json::object();
  for (const auto& [i, x] : v) o[s.label(i)] = scalar_json(x);
  return o;
}

MultiOp op_from(const Json& j, Shape shape, const std::vector<SpacePtr>& slots, const SpacePtr& target, int degree,
                const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of entries");
  MultiOp op(shape, slots, target, degree);
  for (size_t e = 0; e < j.size(); ++e) {
    std::string p = path + "/" + std::to_string(e);
    check_keys(j[e], {"in", "out"}, {}, p);
    const Json& in = j[e]["in"];
    if (!in.is_array() || in.size() != slots.size())
      bad(p + "/in", "expected " + std::to_string(slots.size()) + " input labels");
    Key k;
    for (size_t t = 0; t < slots.size(); ++t)
      k.push_back(static_cast<int>(label_index(*slots[t], in[t], p + "/in/" + std::to_string(t))));
    SparseVec out = vec_from(j[e]["out"], *target, p + "/out");
    if (op.get(k)) bad(p, "duplicate entry " + op.key_string(k));
    try {
      op.add(k, out);
    } catch (const DegreeViolation& ex) {
      bad(p, std::string("degree violation in entry ") + op.key_string(k) + ": " + ex.what());
    }
  }
  return op;
}

Json op_json(const MultiOp& op) {
  Json a = Json::array();
  for (const auto& [k, v] : op.table()) {
    Json in = Json::array();
    for (size_t t = 0; t < k.size(); ++t) in.push_back(op.slot(static_cast<int>(t))->label(k[t]));
    a.push_back({{"in", in}, {"out", vec_json(v, *op.target())}});
  }
  return a;
}

Json ops_json(const std::map<int, MultiOp>& ops) {
  Json o = Json::object();
  for (const auto& [k, op] : ops) o[std::to_string(k)] = op_json(op);
  return o;
}

template <class F>
void for_ops(const Json& j, const std::string& path, F f) {
  if (!j.is_object()) bad(path, "expected an object arity -> entries");
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string p = path + "/" + it.key();
    int k = arity_key(it.key(), p);
    if (k < 1) bad(p, "arity must be positive");
    f(k, it.value(), p);
  }
}

std::optional<int> truncation_from(const Json& j, const std::string& path) {
  if (!j.contains("truncation")) return std::nullopt;
  int t = get_int(j["truncation"], path + "/truncation");
  if (t < 1) bad(path + "/truncation", "truncation must be positive");
  return t;
}

GradedMap map_from(const Json& j, const SpacePtr& src, const SpacePtr& tgt, const std::string& path) {
  check_keys(j, {"degree", "entries"}, {}, path);
  int d = get_int(j["degree"], path + "/degree");
  GradedMap g(src, tgt, d);
  const Json& es = j["entries"];
  if (!es.is_array()) bad(path + "/entries", "expected an array");
  for (size_t e = 0; e < es.size(); ++e) {
    std::string p = path + "/entries/" + std::to_string(e);
    check_keys(es[e], {"in", "out"}, {}, p);
    size_t in = label_index(*src, es[e]["in"], p + "/in");
    SparseVec out = vec_from(es[e]["out"], *tgt, p + "/out");
    for (const auto& [o, x] : out) try {
        g.set(o, in, x);
      } catch (const DegreeViolation& ex) {
        bad(p, ex.what());
      }
  }
  return g;
}

std::vector<SpacePtr> module_slots(const SpacePtr& a, const SpacePtr& m, int k) {
  std::vector<SpacePtr> s(k, a);
  s[0] = m;
  return s;
}

Json entry_json(const Scalar& s) {
  const Ring* R = s.ring();
  if (R && R->kind() == RingKind::Poly) {
    Json a = Json::array();
    for (const auto& c : s.num()) a.push_back(c.get_str());
    return a;
  }
  return scalar_json(s);
}

Scalar entry_from(const Json& j, const Ring* R, const std::string& path) {
  if (R->kind() == RingKind::Poly) {
    if (!j.is_array()) bad(path, "expected a coefficient list");
    Coeffs c;
    for (size_t i = 0; i < j.size(); ++i) {
      Scalar x = scalar_from(j[i], R->base(), path + "/" + std::to_string(i));
      c.push_back(x.value());
    }
    return Scalar::from_poly(R, c);
  }
  return scalar_from(j, R, path);
}

}  // namespace

// ---------------------------------------------------------------- documents

Json make_document(const std::string& kind, Json payload) {
  if (!kKinds.count(kind)) throw InputError("unknown document kind '" + kind + "'");
  payload["format_version"] = kFormatVersion;
  payload["kind"] = kind;
  return payload;
}

Json parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) bad("", "document must be an object");
  if (!j.contains("format_version")) bad("", "missing field 'format_version'");
  std::string v = get_string(j["format_version"], "/format_version");
  if (v != kFormatVersion) bad("/format_version", "unsupported version " + v + " (expected " + kFormatVersion + ")");
  if (!j.contains("kind")) bad("", "missing field 'kind'");
  std::string k = get_string(j["kind"], "/kind");
  if (!kKinds.count(k)) bad("/kind", "unknown kind '" + k + "'");
  return j;
}

std::string serialize(const Json& doc) { return doc.dump(2) + "\n"; }

std::string document_kind(const Json& doc) { return doc.at("kind").get<std::string>(); }

Json payload_of(const Json& doc) {
  Json p = doc;
  p.erase("format_version");
  p.erase("kind");
  return p;
}

// ---------------------------------------------------------------- writers

Json to_json(const GradedSpace& s) {
  Json a = Json::array();
  for (const auto& c : s.components()) a.push_back({{"degree", c.degree}, {"basis", c.labels}});
  return a;
}

Json to_json(const MultiOp& op) { return op_json(op); }

Json to_json(const GradedMap& g) {
  Json es = Json::array();
  for (size_t in = 0; in < g.source()->dim(); ++in) {
    SparseVec c = g.column(in);
    if (!c.empty()) es.push_back({{"in", g.source()->label(in)}, {"out", vec_json(c, *g.target())}});
  }
  return {{"degree", g.degree()}, {"entries", es}};
}

Json to_json(const AInfAlgebra& a) {
  Json j{{"ring", a.ring()->descriptor()}, {"space", to_json(*a.space)}, {"ops", ops_json(a.ops)}};
  if (a.truncation) j["truncation"] = *a.truncation;
  if (a.unit) j["unit"] = *a.unit;
  return j;
}

Json to_json(const AInfModule& m) {
  Json j{{"ring", m.ring()->descriptor()},
         {"algebra", to_json(*m.algebra)},
         {"space", to_json(*m.space)},
         {"ops", ops_json(m.ops)}};
  if (m.truncation) j["truncation"] = *m.truncation;
  return j;
}

Json to_json(const AlgMorphism& f) {
  Json j{{"source", to_json(*f.source)}, {"target", to_json(*f.target)}, {"comps", ops_json(f.comps)}};
  if (f.truncation) j["truncation"] = *f.truncation;
  return j;
}

Json to_json(const ModMorphism& f) {
  Json j{{"source", to_json(*f.source)}, {"target", to_json(*f.target)}, {"comps", ops_json(f.comps)}};
  if (f.truncation) j["truncation"] = *f.truncation;
  return j;
}

Json to_json(const PairMorphism& p) {
  return {{"algebra_morphism", to_json(p.f)}, {"module_morphism", to_json(p.g)}, {"target_module", to_json(*p.target_module)}};
}

Json to_json(const Contraction& c) {
  return {{"ring", c.big->ring()->descriptor()},
          {"big", to_json(*c.big)},
          {"small", to_json(*c.small)},
          {"d", to_json(c.d)},
          {"incl", to_json(c.incl)},
          {"proj", to_json(c.proj)},
          {"htpy", to_json(c.htpy)}};
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) r.push_back(entry_json(m.at(i, j).coerce(m.ring())));
    rows.push_back(r);
  }
  return {{"ring", m.ring()->descriptor()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Json to_json(const PolyComplex& c) {
  Json ranks = Json::object(), ds = Json::object();
  for (const auto& [i, r] : c.ranks) ranks[std::to_string(i)] = r;
  for (const auto& [i, m] : c.d) ds[std::to_string(i)] = to_json(m)["entries"];
  return {{"ring", c.ring->descriptor()}, {"ranks", ranks}, {"differentials", ds}};
}

namespace {

// pairing between cochain basis entries and JSON
Json functional_json(const SparseVec& phi, const CochainSpace& cs, const std::vector<SpacePtr>& slots, const SpacePtr& tgt) {
  Json a = Json::array();
  for (const auto& [i, x] : phi) {
    const auto& [k, o] = cs.at(i);
    Json in = Json::array();
    for (size_t t = 0; t < k.size(); ++t) in.push_back(slots[t]->label(k[t]));
    a.push_back({{"in", in}, {"out", tgt->label(o)}, {"value", scalar_json(x)}});
  }
  return a;
}

struct CertContext {
  HochschildSetting S;  // over the ring where functionals live
  int p = 0, q = 0;
};

CertContext functional_context(const FormalityCertificate& c, int stage) {
  AInfModule m2 = truncate_to_M2(*c.module);
  HochschildSetting S = HochschildSetting::of(*c.algebra, m2);
  if (c.module->ring()->kind() == RingKind::Poly) S = S.base_change(RingMorphism::fraction_embed(c.module->ring()));
  return {S, stage, 1 - stage};
}

}  // namespace

Json to_json(const FormalityCertificate& c) {
  Json j{{"verdict", to_string(c.verdict)},
         {"stage", c.stage},
         {"reason", c.reason},
         {"module", to_json(*c.module)},
         {"exact", c.exact}};
  if (c.witness) {
    Json w{{"comps", ops_json(c.witness->comps)}};
    if (c.witness->truncation) w["truncation"] = *c.witness->truncation;
    j["witness"] = w;
  }
  Json st = Json::array();
  for (const auto& s : c.stages) {
    Json r{{"stage", s.stage},
           {"cocycle", op_json(s.report.cocycle)},
           {"vanished", s.report.vanished},
           {"note", s.report.note}};
    if (s.report.primitive) r["primitive"] = op_json(*s.report.primitive);
    if (s.report.functional) {
      CertContext ctx = functional_context(c, s.stage);
      CochainSpace cs(ctx.S, ctx.p, ctx.q);
      std::vector<SpacePtr> slots(ctx.p + 1, ctx.S.A);
      slots[0] = ctx.S.M;
      r["functional"] = functional_json(*s.report.functional, cs, slots, ctx.S.N);
    }
    if (s.before) {
      Json b{{"ops", ops_json(s.before->ops)}};
      if (s.before->truncation) b["truncation"] = *s.before->truncation;
      r["before"] = b;
    }
    st.push_back(r);
  }
  j["stages"] = st;
  return j;
}

// ---------------------------------------------------------------- readers

AlgebraPtr algebra_from_json(const Json& j, const std::string& path) {
  check_keys(j, {"ring", "space", "ops"}, {"truncation", "unit"}, path);
  const Ring* R = ring_from(j["ring"], path + "/ring");
  SpacePtr V = space_from(j["space"], R, path + "/space");
  auto a = std::make_shared<AInfAlgebra>(V, truncation_from(j, path));
  if (j.contains("unit")) {
    std::string u = get_string(j["unit"], path + "/unit");
    if (!V->find(u)) bad(path + "/unit", "unknown basis label '" + u + "'");
    a->unit = u;
  }
  for_ops(j["ops"], path + "/ops", [&](int k, const Json& e, const std::string& p) {
    a->set_op(k, op_from(e, Shape::Algebra, std::vector<SpacePtr>(k, V), V, 2 - k, p));
  });
  return a;
}

namespace {

ModulePtr module_over(const AlgebraPtr& a, const Json& j, const std::string& path, bool with_algebra) {
  std::set<std::string> req{"ring", "space", "ops"};
  if (with_algebra) req.insert("algebra");
  check_keys(j, req, {"truncation"}, path);
  const Ring* R = ring_from(j["ring"], path + "/ring");
  if (R != a->ring()) bad(path + "/ring", "module ring differs from the algebra ring");
  SpacePtr V = space_from(j["space"], R, path + "/space");
  auto m = std::make_shared<AInfModule>(a, V, truncation_from(j, path));
  for_ops(j["ops"], path + "/ops", [&](int k, const Json& e, const std::string& p) {
    m->set_op(k, op_from(e, Shape::Module, module_slots(a->space, V, k), V, 2 - k, p));
  });
  return m;
}

}  // namespace

ModulePtr module_from_json(const Json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("algebra")) bad(path, "missing field 'algebra'");
  AlgebraPtr a = algebra_from_json(j["algebra"], path + "/algebra");
  return module_over(a, j, path, true);
}

AlgMorphism morphism_from_json(const Json& j, const std::string& path) {
  check_keys(j, {"source", "target", "comps"}, {"truncation"}, path);
  AlgebraPtr s = algebra_from_json(j["source"], path + "/source");
  AlgebraPtr t = algebra_from_json(j["target"], path + "/target");
  if (s->ring() != t->ring()) bad(path, "source and target rings differ");
  AlgMorphism f(s, t, truncation_from(j, path));
  for_ops(j["comps"], path + "/comps", [&](int k, const Json& e, const std::string& p) {
    f.set_comp(k, op_from(e, Shape::Algebra, std::vector<SpacePtr>(k, s->space), t->space, 1 - k, p));
  });
  return f;
}

ModMorphism module_morphism_from_json(const Json& j, const std::string& path) {
  check_keys(j, {"source", "target", "comps"}, {"truncation"}, path);
  ModulePtr s = module_from_json(j["source"], path + "/source");
  ModulePtr t = module_from_json(j["target"], path + "/target");
  if (!same_space(s->algebra->space, t->algebra->space)) bad(path, "source and target live over different algebras");
  ModMorphism f(s, t, truncation_from(j, path));
  for_ops(j["comps"], path + "/comps", [&](int k, const Json& e, const std::string& p) {
    f.set_comp(k, op_from(e, Shape::Module, module_slots(s->algebra->space, s->space, k), t->space, 1 - k, p));
  });
  return f;
}

PairMorphism pair_from_json(const Json& j, const std::string& path) {
  check_keys(j, {"algebra_morphism", "module_morphism", "target_module"}, {}, path);
  AlgMorphism f = morphism_from_json(j["algebra_morphism"], path + "/algebra_morphism");
  ModMorphism g = module_morphism_from_json(j["module_morphism"], path + "/module_morphism");
  ModulePtr n = module_from_json(j["target_module"], path + "/target_module");
  return {f, g, n};
}

Contraction contraction_from_json(const Json& j, const std::string& path) {
  check_keys(j, {"ring", "big", "small", "d", "incl", "proj", "htpy"}, {}, path);
  const Ring* R = ring_from(j["ring"], path + "/ring");
  SpacePtr big = space_from(j["big"], R, path + "/big");
  SpacePtr small = space_from(j["small"], R, path + "/small");
  return {big,
          small,
          map_from(j["d"], big, big, path + "/d"),
          map_from(j["incl"], small, big, path + "/incl"),
          map_from(j["proj"], big, small, path + "/proj"),
          map_from(j["htpy"], big, big, path + "/htpy")};
}

Matrix matrix_from_json(const Json& j, const Ring* R, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of rows");
  size_t cols = j.empty() ? 0 : (j[0].is_array() ? j[0].size() : 0);
  Matrix m(j.size(), cols, R);
  for (size_t i = 0; i < j.size(); ++i) {
    std::string p = path + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != cols) bad(p, "rows must have equal length");
    for (size_t c = 0; c < cols; ++c) m.at(i, c) = entry_from(j[i][c], R, p + "/" + std::to_string(c));
  }
  return m;
}

PolyComplex poly_complex_from_json(const Json& j, const std::string& path) {
  check_keys(j, {"ring", "ranks", "differentials"}, {}, path);
  PolyComplex c;
  c.ring = ring_from(j["ring"], path + "/ring");
  if (c.ring->kind() != RingKind::Poly) bad(path + "/ring", "poly complexes need a ring k[h]");
  const Json& rk = j["ranks"];
  if (!rk.is_object()) bad(path + "/ranks", "expected an object degree -> rank");
  for (auto it = rk.begin(); it != rk.end(); ++it) {
    std::string p = path + "/ranks/" + it.key();
    int r = get_int(it.value(), p);
    if (r < 0) bad(p, "negative rank");
    c.ranks[arity_key(it.key(), p)] = static_cast<size_t>(r);
  }
  const Json& ds = j["differentials"];
  if (!ds.is_object()) bad(path + "/differentials", "expected an object degree -> matrix");
  for (auto it = ds.begin(); it != ds.end(); ++it) {
    std::string p = path + "/differentials/" + it.key();
    int i = arity_key(it.key(), p);
    Matrix m = matrix_from_json(it.value(), c.ring, p);
    if (m.rows() == 0 && c.rank(i + 1) == 0) m = Matrix(0, c.rank(i), c.ring);
    c.d[i] = m;
  }
  try {
    c.validate();
  } catch (const Error& e) {
    bad(path, e.what());
  }
  return c;
}

FormalityCertificate certificate_from_json(const Json& j, const std::string& path) {
  check_keys(j, {"verdict", "stage", "reason", "module", "exact", "stages"}, {"witness"}, path);
  FormalityCertificate c;
  std::string v = get_string(j["verdict"], path + "/verdict");
  if (v == "formal") c.verdict = Verdict::Formal;
  else if (v == "not_formal") c.verdict = Verdict::NotFormal;
  else if (v == "inconclusive") c.verdict = Verdict::Inconclusive;
  else bad(path + "/verdict", "unknown verdict '" + v + "'");
  c.stage = get_int(j["stage"], path + "/stage");
  c.reason = get_string(j["reason"], path + "/reason");
  if (!j["exact"].is_boolean()) bad(path + "/exact", "expected a boolean");
  c.exact = j["exact"].get<bool>();
  c.module = module_from_json(j["module"], path + "/module");
  c.algebra = c.module->algebra;
  if (!c.algebra->graded_associative()) bad(path + "/module/algebra", "algebra is not graded associative");
  if (!c.module->is_minimal()) bad(path + "/module", "module is not minimal");
  c.m2 = std::make_shared<AInfModule>(truncate_to_M2(*c.module));
  SpacePtr A = c.algebra->space, M = c.module->space;
  const Json& st = j["stages"];
  if (!st.is_array()) bad(path + "/stages", "expected an array");
  for (size_t i = 0; i < st.size(); ++i) {
    std::string p = path + "/stages/" + std::to_string(i);
    check_keys(st[i], {"stage", "cocycle", "vanished", "note"}, {"primitive", "functional", "before"}, p);
    StageRecord r;
    r.stage = get_int(st[i]["stage"], p + "/stage");
    int s = r.stage;
    if (s < 2) bad(p + "/stage", "stages start at 2");
    r.report.stage = s;
    r.report.cocycle = op_from(st[i]["cocycle"], Shape::Module, module_slots(A, M, s + 1), M, 1 - s, p + "/cocycle");
    if (!st[i]["vanished"].is_boolean()) bad(p + "/vanished", "expected a boolean");
    r.report.vanished = st[i]["vanished"].get<bool>();
    r.report.note = get_string(st[i]["note"], p + "/note");
    if (st[i].contains("primitive"))
      r.report.primitive = op_from(st[i]["primitive"], Shape::Module, module_slots(A, M, s), M, 1 - s, p + "/primitive");
    if (st[i].contains("functional")) {
      CertContext ctx = functional_context(c, s);
      CochainSpace cs(ctx.S, ctx.p, ctx.q);
      std::vector<SpacePtr> slots(ctx.p + 1, ctx.S.A);
      slots[0] = ctx.S.M;
      const Json& fj = st[i]["functional"];
      if (!fj.is_array()) bad(p + "/functional", "expected an array");
      SparseVec phi;
      for (size_t e = 0; e < fj.size(); ++e) {
        std::string pe = p + "/functional/" + std::to_string(e);
        check_keys(fj[e], {"in", "out", "value"}, {}, pe);
        const Json& in = fj[e]["in"];
        if (!in.is_array() || in.size() != slots.size()) bad(pe + "/in", "wrong number of input labels");
        Key k;
        for (size_t t = 0; t < slots.size(); ++t)
          k.push_back(static_cast<int>(label_index(*slots[t], in[t], pe + "/in/" + std::to_string(t))));
        int o = static_cast<int>(label_index(*ctx.S.N, fj[e]["out"], pe + "/out"));
        auto idx = cs.find(k, o);
        if (!idx) bad(pe, "entry outside the cochain basis");
        phi[static_cast<int>(*idx)] = scalar_from(fj[e]["value"], ctx.S.ring(), pe + "/value");
      }
      r.report.functional = phi;
    }
    r.report.closed = true;  // re-checked by verification
    if (st[i].contains("before")) {
      const Json& b = st[i]["before"];
      check_keys(b, {"ops"}, {"truncation"}, p + "/before");
      auto bm = std::make_shared<AInfModule>(c.algebra, M, truncation_from(b, p + "/before"));
      for_ops(b["ops"], p + "/before/ops", [&](int k, const Json& e, const std::string& pp) {
        bm->set_op(k, op_from(e, Shape::Module, module_slots(A, M, k), M, 2 - k, pp));
      });
      r.before = bm;
    }
    c.stages.push_back(r);
  }
  if (j.contains("witness")) {
    const Json& w = j["witness"];
    check_keys(w, {"comps"}, {"truncation"}, path + "/witness");
    ModulePtr target = c.m2;
    if (c.verdict == Verdict::NotFormal && !c.stages.empty() && c.stages.back().before) target = c.stages.back().before;
    ModMorphism f(c.module, target, truncation_from(w, path + "/witness"));
    for_ops(w["comps"], path + "/witness/comps", [&](int k, const Json& e, const std::string& p) {
      f.set_comp(k, op_from(e, Shape::Module, module_slots(A, M, k), M, 1 - k, p));
    });
    c.witness = f;
  }
  return c;
}

Json to_json(const FilteredInput& f) {
  auto levels = [](const Filtration& fl, const GradedSpace& s) {
    Json a = Json::array();
    for (const auto& lvl : fl.levels) {
      Json l = Json::array();
      for (const auto& v : lvl) l.push_back(vec_json(v, s));
      a.push_back(l);
    }
    return a;
  };
  Json j{{"algebra", to_json(*f.algebra)}, {"levels", levels(f.filtration, *f.algebra->space)}};
  if (f.module) {
    j["module"] = to_json(*f.module);
    j["module_levels"] = levels(f.module_filtration, *f.module->space);
  }
  return j;
}

FilteredInput filtration_from_json(const Json& j, const std::string& path) {
  check_keys(j, {"algebra", "levels"}, {"module", "module_levels"}, path);
  FilteredInput f;
  f.algebra = algebra_from_json(j["algebra"], path + "/algebra");
  auto levels = [&](const Json& a, const GradedSpace& s, const std::string& p) {
    Filtration fl;
    if (!a.is_array()) bad(p, "expected an array of levels");
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_array()) bad(p + "/" + std::to_string(i), "expected an array of vectors");
      std::vector<SparseVec> lvl;
      for (size_t t = 0; t < a[i].size(); ++t)
        lvl.push_back(vec_from(a[i][t], s, p + "/" + std::to_string(i) + "/" + std::to_string(t)));
      fl.levels.push_back(lvl);
    }
    return fl;
  };
  f.filtration = levels(j["levels"], *f.algebra->space, path + "/levels");
  if (j.contains("module")) {
    if (!j.contains("module_levels")) bad(path, "module given without module_levels");
    f.module = module_over(f.algebra, j["module"], path + "/module", true);
    f.module_filtration = levels(j["module_levels"], *f.module->space, path + "/module_levels");
  }
  return f;
}

Json document_of(const AInfAlgebra& a) { return make_document("algebra", to_json(a)); }
Json document_of(const AInfModule& m) { return make_document("module", to_json(m)); }
Json document_of(const FormalityCertificate& c) { return make_document("certificate", to_json(c)); }

std::vector<std::pair<std::string, Json>> fixture_catalog() {
  const Ring* Q = Ring::rationals();
  std::vector<std::pair<std::string, Json>> out;
  AlgebraPtr t2 = fix_t2(Q), d = fix_d(Q);
  out.push_back({"fix-t2", document_of(*t2)});
  out.push_back({"fix-d", document_of(*d)});
  Contraction cd = contraction_from_complex(d->space, differential(*d));
  out.push_back({"fix-d-contraction", make_document("contraction", to_json(cd))});
  AlgebraTransfer td = transfer_algebra(d, cd);
  out.push_back({"fix-d-minimal", document_of(*td.minimal)});
  out.push_back({"fix-d-minimal-morphism", make_document("morphism", to_json(td.f))});
  PairFixture hdg = heisenberg_dg_module(Q);
  out.push_back({hdg.name, document_of(*hdg.module)});
  PairTransfer ht = minimal_model(hdg.algebra, hdg.module);
  out.push_back({"heisenberg-pair-morphism", make_document("pair", to_json(ht.pair))});
  PairFixture h = heisenberg_module(Q);
  out.push_back({h.name, document_of(*h.module)});
  out.push_back({"heisenberg-certificate", document_of(prove_module_formality(h.algebra, h.module))});
  PairFixture dual = dual_numbers_on_ground(Q);
  out.push_back({dual.name, document_of(*dual.module)});
  for (const auto& f : formal_fixtures(Q, 20, 7)) out.push_back({f.name, document_of(*f.module)});
  auto ff = formal_fixtures(Q, 1, 7).front();
  FormalityCertificate fc = prove_module_formality(ff.algebra, ff.module);
  out.push_back({"formal-certificate", document_of(fc)});
  ModMorphism w = *fc.witness;
  out.push_back({"formal-witness", make_document("module_morphism", to_json(w))});
  FilteredFixture rees = rees_example(Q);
  out.push_back({"rees-cubic", make_document("filtration", to_json(FilteredInput{rees.algebra, rees.filtration, nullptr, {}}))});
  const Ring* P = Ring::poly(Q);
  Scalar hh = Scalar::variable(P);
  PolyComplex mult{P, {{0, 1}, {1, 1}}, {}};
  Matrix mh(1, 1, P);
  mh.at(0, 0) = hh;
  mult.d[0] = mh;
  out.push_back({"times-h", make_document("poly_complex", to_json(mult))});
  PolyComplex zero{P, {{0, 1}, {1, 1}}, {}};
  zero.d[0] = Matrix(1, 1, P);
  zero.d[0].at(0, 0) = Scalar::zero(P);
  out.push_back({"zero-differential", make_document("poly_complex", to_json(zero))});
  Matrix diag(2, 2, P);
  diag.at(0, 0) = hh;
  diag.at(0, 1) = Scalar::zero(P);
  diag.at(1, 0) = Scalar::zero(P);
  diag.at(1, 1) = hh * hh;
  out.push_back({"diag-h-h2", make_document("matrix", to_json(diag))});
  return out;
}

}  // namespace ainf
