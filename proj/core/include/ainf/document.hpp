#pragma once

#include <json.hpp>

#include "ainf/formality.hpp"
#include "ainf/hbar.hpp"
#include "ainf/transfer.hpp"

namespace ainf {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1.0.0";

// Payload kinds
//   algebra, module, morphism, module_morphism, pair, contraction, poly_complex,
//   matrix, filtration, certificate, report
Json make_document(const std::string& kind, Json payload);
// syntax, version and kind checks; returns the document with kind
Json parse_document(const std::string& text);
std::string serialize(const Json& doc);
std::string document_kind(const Json& doc);
Json payload_of(const Json& doc);

Json to_json(const GradedSpace& s);
Json to_json(const MultiOp& op);
Json to_json(const GradedMap& g);
Json to_json(const AInfAlgebra& a);
Json to_json(const AInfModule& m);  // embeds its algebra
Json to_json(const AlgMorphism& f);
Json to_json(const ModMorphism& f);  // embeds source and target
Json to_json(const PairMorphism& p);
Json to_json(const Contraction& c);
Json to_json(const Matrix& m);  // rows of entries; poly entries as coefficient lists
Json to_json(const PolyComplex& c);
Json to_json(const FormalityCertificate& c);

// every loader takes a JSON pointer-style path for error messages
AlgebraPtr algebra_from_json(const Json& j, const std::string& path = "");
ModulePtr module_from_json(const Json& j, const std::string& path = "");
AlgMorphism morphism_from_json(const Json& j, const std::string& path = "");
ModMorphism module_morphism_from_json(const Json& j, const std::string& path = "");
PairMorphism pair_from_json(const Json& j, const std::string& path = "");
Contraction contraction_from_json(const Json& j, const std::string& path = "");
Matrix matrix_from_json(const Json& j, const Ring* R, const std::string& path = "");
PolyComplex poly_complex_from_json(const Json& j, const std::string& path = "");
FormalityCertificate certificate_from_json(const Json& j, const std::string& path = "");

struct FilteredInput {
  AlgebraPtr algebra;
  Filtration filtration;
  ModulePtr module;  // optional
  Filtration module_filtration;
};
Json to_json(const FilteredInput& f);
FilteredInput filtration_from_json(const Json& j, const std::string& path = "");

// full document round trips
Json document_of(const AInfAlgebra& a);
Json document_of(const AInfModule& m);
Json document_of(const FormalityCertificate& c);

// named canonical documents for every built-in fixture, over QQ
std::vector<std::pair<std::string, Json>> fixture_catalog();

}  // namespace ainf
