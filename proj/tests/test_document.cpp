#include "support.hpp"

using namespace ainf;
using namespace ainf::test;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Document, CatalogRoundTrips) {
  auto cat = fixture_catalog();
  ASSERT_FALSE(cat.empty());
  for (const auto& [name, doc] : cat) {
    std::string text = serialize(doc);
    Json back = parse_document(text);
    EXPECT_EQ(serialize(back), text) << name;
    std::string kind = document_kind(back);
    Json p = payload_of(back);
    Json again;
    if (kind == "algebra") again = document_of(*algebra_from_json(p));
    else if (kind == "module") again = document_of(*module_from_json(p));
    else if (kind == "filtration") again = make_document(kind, to_json(filtration_from_json(p)));
    else if (kind == "poly_complex") again = make_document(kind, to_json(poly_complex_from_json(p)));
    else if (kind == "pair") again = make_document(kind, to_json(pair_from_json(p)));
    else if (kind == "matrix")
      again = make_document(kind, to_json(matrix_from_json(p["entries"], Ring::parse(p["ring"].get<std::string>()))));
    else if (kind == "morphism") again = make_document(kind, to_json(morphism_from_json(p)));
    else if (kind == "module_morphism") again = make_document(kind, to_json(module_morphism_from_json(p)));
    else if (kind == "contraction") again = make_document(kind, to_json(contraction_from_json(p)));
    else if (kind == "certificate") again = document_of(certificate_from_json(p));
    else FAIL() << "unexpected kind " << kind;
    EXPECT_EQ(serialize(again), text) << name;
  }
}

TEST(Document, ModuleRoundTripKeepsStructure) {
  PairFixture h = heisenberg_module(QQ());
  ModulePtr m = module_from_json(payload_of(document_of(*h.module)));
  EXPECT_EQ(m->ops, h.module->ops);
  EXPECT_EQ(*m->space, *h.module->space);
  EXPECT_EQ(m->algebra->ops, h.algebra->ops);
  EXPECT_TRUE(check_mod_relations(*m).pass);
}

TEST(Document, PolyMatrixEntriesAreCoefficientLists) {
  const Ring* P = QQh();
  Matrix a(1, 2, P);
  a.at(0, 0) = px(P, {1, 0, -2});
  Json j = to_json(a);
  EXPECT_EQ(j["entries"][0][0], Json::array({"1", "0", "-2"}));
  EXPECT_EQ(matrix_from_json(j["entries"], P), a);
}

TEST(Document, CertificateRoundTrip) {
  PairFixture f = formal_fixtures(QQ(), 1, 4).front();
  FormalityCertificate c = prove_module_formality(f.algebra, f.module);
  Json d = document_of(c);
  FormalityCertificate back = certificate_from_json(payload_of(parse_document(serialize(d))));
  EXPECT_TRUE(verify_certificate(back));
  EXPECT_EQ(serialize(document_of(back)), serialize(d));
}

TEST(Document, DegreeViolationCitesEntry) {
  Json d = document_of(*fix_t2(QQ()));
  Json p = payload_of(d);
  // e2 . e2 -> e1 has the wrong degree
  p["ops"]["2"].push_back({{"in", {"e2", "e2"}}, {"out", {{"e1", "1"}}}});
  std::string msg = error_of([&] { algebra_from_json(p); });
  EXPECT_NE(msg.find("degree"), std::string::npos) << msg;
  EXPECT_NE(msg.find("e1"), std::string::npos) << msg;
  EXPECT_NE(msg.find("/ops/2"), std::string::npos) << msg;
}

TEST(Document, UnknownFieldRejected) {
  Json p = payload_of(document_of(*fix_t2(QQ())));
  p["colour"] = "blue";
  std::string msg = error_of([&] { algebra_from_json(p); });
  EXPECT_NE(msg.find("colour"), std::string::npos) << msg;
}

TEST(Document, VersionAndKindChecked) {
  Json d = document_of(*fix_t2(QQ()));
  Json v = d;
  v["format_version"] = "2.0.0";
  EXPECT_NE(error_of([&] { parse_document(v.dump()); }).find("format_version"), std::string::npos);
  Json k = d;
  k["kind"] = "sheaf";
  EXPECT_NE(error_of([&] { parse_document(k.dump()); }), "");
  Json missing = d;
  missing.erase("kind");
  EXPECT_NE(error_of([&] { parse_document(missing.dump()); }), "");
}

TEST(Document, ParseErrorGivesPosition) {
  std::string msg = error_of([] { parse_document("{\"kind\": \"algebra\",, }"); });
  EXPECT_NE(msg.find("20"), std::string::npos) << msg;
}

TEST(Document, SerializationIsStable) {
  Json d = document_of(*fix_d(QQ()));
  EXPECT_EQ(serialize(d), serialize(parse_document(serialize(d))));
  EXPECT_EQ(serialize(d).back(), '\n');
}
