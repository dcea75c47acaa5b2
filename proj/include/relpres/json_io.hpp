#pragma once

#include <string>

#include "json.hpp"
#include "relpres/howie.hpp"
#include "relpres/presentation.hpp"
#include "relpres/small_cancellation.hpp"
#include "relpres/unique_products.hpp"

namespace relpres {

using Json = nlohmann::ordered_json;

// Parsers throw Error(SchemaError) with a JSON-pointer-style path in the
// message. Elements are backend-tagged:
//   free_abelian  [1, -2]
//   free / formal [["a", 1], ["b", -2]]
//   finite_table  3
GroupBackend parse_backend(const Json& j, const std::string& path);
Element parse_element(const GroupBackend& b, const Json& j, const std::string& path);
Alphabet parse_alphabet(const Json& j, const std::string& path);
Word parse_word(const Alphabet& a, const Json& j, const std::string& path);
RelativePresentation parse_presentation(const Json& j);
SubproductSpec parse_subproduct(const Alphabet& a, const Json& j, const std::string& path);

struct RelatorsInput {
  Alphabet alphabet;
  std::vector<Word> relators;
};
RelatorsInput parse_relators(const Json& j);

struct UpInput {
  FiniteSubset x, y;
};
UpInput parse_up_sets(const Json& j);

SetSystem parse_set_system(const Json& j);

HowieDiagram parse_diagram(const Json& j);
Json diagram_to_json(const HowieDiagram& d);

Json element_to_json(const GroupBackend& b, const Element& e);
Json word_to_json(const Alphabet& a, const Word& w);

Json report_to_json(const Alphabet& a, const CPrimeReport& r);
Json report_to_json(const GroupBackend& b, const UniqueProductsReport& r);
Json report_to_json(const GroupBackend& b, const StrongUpReport& r);
Json report_to_json(const SetSystem& s, const OmegaReport& r);
Json report_to_json(const ValidationReport& r);
Json report_to_json(const CollisionReport& r);
Json report_to_json(const ParityReport& r);
Json report_to_json(const ReducednessReport& r);
Json report_to_json(const RelativePresentation& p, const GeneralizedReport& r);
Json report_to_json(const RelativePresentation& p, const CaseSplitReport& r);
Json report_to_json(const RelativePresentation& p, const HypothesisReport& r);
Json coset_form_to_json(const RelativePresentation& p, const CosetForm& cf);

}  // namespace relpres
