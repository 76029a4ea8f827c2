#pragma once

#include "jlpath/cartan_datum.hpp"
#include "jlpath/crystal.hpp"
#include "jlpath/gls.hpp"
#include "jlpath/paths.hpp"
#include "jlpath/weight.hpp"
#include "jlpath/weyl_monoid.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace jlpath {

using Json = nlohmann::ordered_json;

Json datum_to_json(const CartanDatum& datum);
// {"labels": [...], "matrix": [[...]], "symmetrizer": optional}
CartanDatum datum_from_json(const Json& j);
CartanDatum load_datum(const std::string& file);

Json read_json_file(const std::string& file);
void write_text_file(const std::string& file, const std::string& text);

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// {"base_evals": [...], "offset": [...]}, rationals as strings.
Json weight_to_json(const Weight& w);
// Accepts the object form, or a plain list of coroot evaluations.
Weight weight_from_json(const Json& j, std::size_t rank);
// Command-line form: "1,0" (coroot evaluations) or a JSON document.
Weight parse_weight(const std::string& text, std::size_t rank);

Json path_to_json(const RationalPath& path);
RationalPath path_from_json(const Json& j, std::size_t rank);

Json gls_to_json(const GLSPath& path);
GLSPath gls_from_json(const Json& j, std::size_t rank);

Json root_to_json(const CartanDatum& datum, const RootEntry& beta);
Json chain_to_json(const CartanDatum& datum, const AChain& chain);
Json certificate_to_json(const CartanDatum& datum, const GlsCertificate& cert);

Json summand_to_json(const CartanDatum& datum, const Summand& s);
Json decomposition_check_to_json(const DecompositionCheck& check);
Json character_to_json(const Character& ch);

// Nodes labeled by weight, edges by operator label.
std::string graph_to_dot(const CrystalGraph& g);
// A header record, then one record per node and per edge, in graph order.
std::string graph_to_jsonl(const CrystalGraph& g);
// Reads the node records of a JSONL graph (enough for characters).
std::vector<Weight> node_weights_from_jsonl(const std::string& text, std::size_t rank);

}  // namespace jlpath
