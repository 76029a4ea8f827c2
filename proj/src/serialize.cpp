#include "jlpath/serialize.hpp"

#include "jlpath/error.hpp"

#include <fstream>
#include <sstream>

namespace jlpath {

namespace {

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, origin + ": " + e.what());
  }
}

std::vector<Rational> rationals_from_json(const Json& j, std::size_t rank, const char* field) {
  if (!j.is_array() || j.size() != rank) {
    throw Error(ErrorCode::Parse, std::string(field) + " must be a list of " + std::to_string(rank) + " rationals");
  }
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

// "(1,1) - a2 - 1/2 a1" style label for DOT output.
std::string weight_label(const CrystalGraph& g, const Weight& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.rank(); ++i) {
    if (i) out += ",";
    out += format_rational(w.base_evals()[i]);
  }
  out += ")";
  for (std::size_t i = 0; i < w.rank(); ++i) {
    const Rational& c = w.offset()[i];
    if (c == 0) continue;
    out += c > 0 ? " - " : " + ";
    const Rational a = abs(c);
    if (a != 1) out += format_rational(a) + " ";
    out += "a" + g.datum->label(static_cast<int>(i));
  }
  return out;
}

}  // namespace

Json datum_to_json(const CartanDatum& datum) {
  Json j;
  j["labels"] = datum.labels();
  j["matrix"] = datum.matrix();
  if (datum.symmetrizer()) j["symmetrizer"] = *datum.symmetrizer();
  return j;
}

CartanDatum datum_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("matrix")) throw Error(ErrorCode::MalformedDatum, "datum needs a matrix");
  IntMatrix matrix;
  try {
    matrix = j.at("matrix").get<IntMatrix>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::MalformedDatum, "matrix must be a list of integer rows");
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  } else {
    for (std::size_t i = 0; i < matrix.size(); ++i) labels.push_back(std::to_string(i + 1));
  }
  std::optional<std::vector<long>> symmetrizer;
  if (j.contains("symmetrizer") && !j.at("symmetrizer").is_null()) {
    symmetrizer = j.at("symmetrizer").get<std::vector<long>>();
  }
  return CartanDatum::validate(std::move(matrix), std::move(labels), std::move(symmetrizer));
}

Json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::Usage, "cannot open " + file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), file);
}

void write_text_file(const std::string& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error(ErrorCode::Usage, "cannot write " + file);
  out << text;
}

CartanDatum load_datum(const std::string& file) { return datum_from_json(read_json_file(file)); }

Json rational_to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorCode::Parse, "expected a rational, got " + j.dump());
}

Json weight_to_json(const Weight& w) {
  Json base = Json::array();
  Json offset = Json::array();
  for (const auto& b : w.base_evals()) base.push_back(rational_to_json(b));
  for (const auto& c : w.offset()) offset.push_back(rational_to_json(c));
  return Json{{"base_evals", base}, {"offset", offset}};
}

Weight weight_from_json(const Json& j, std::size_t rank) {
  if (j.is_array()) {
    std::vector<Rational> zero(rank, Rational(0));
    return Weight(rationals_from_json(j, rank, "weight"), zero);
  }
  if (!j.is_object() || !j.contains("base_evals")) throw Error(ErrorCode::Parse, "malformed weight " + j.dump());
  std::vector<Rational> offset(rank, Rational(0));
  if (j.contains("offset")) offset = rationals_from_json(j.at("offset"), rank, "offset");
  return Weight(rationals_from_json(j.at("base_evals"), rank, "base_evals"), offset);
}

Weight parse_weight(const std::string& text, std::size_t rank) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    return weight_from_json(parse_json_text(text, "weight"), rank);
  }
  Json list = Json::array();
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw Error(ErrorCode::Parse, "empty entry in weight '" + text + "'");
    list.push_back(item.substr(a, b - a + 1));
  }
  return weight_from_json(list, rank);
}

Json path_to_json(const RationalPath& path) {
  Json out = Json::array();
  for (const auto& s : path.segments()) {
    out.push_back(Json{{"slope", weight_to_json(s.slope)}, {"duration", rational_to_json(s.duration)}});
  }
  return out;
}

RationalPath path_from_json(const Json& j, std::size_t rank) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::Parse, "a path is a nonempty list of segments");
  std::vector<Segment<Weight>> segments;
  for (const auto& s : j) {
    segments.push_back(Segment<Weight>{weight_from_json(s.at("slope"), rank), rational_from_json(s.at("duration"))});
  }
  return RationalPath(std::move(segments));
}

Json gls_to_json(const GLSPath& path) {
  Json weights = Json::array();
  Json breaks = Json::array();
  for (const auto& w : path.weights) weights.push_back(weight_to_json(w));
  for (const auto& a : path.breaks) breaks.push_back(rational_to_json(a));
  return Json{{"weights", weights}, {"breaks", breaks}, {"shape", weight_to_json(path.shape)}};
}

GLSPath gls_from_json(const Json& j, std::size_t rank) {
  GLSPath out;
  for (const auto& w : j.at("weights")) out.weights.push_back(weight_from_json(w, rank));
  for (const auto& a : j.at("breaks")) out.breaks.push_back(rational_from_json(a));
  out.shape = weight_from_json(j.at("shape"), rank);
  if (out.weights.size() != out.breaks.size()) throw Error(ErrorCode::Parse, "weights and breaks differ in length");
  return out;
}

Json root_to_json(const CartanDatum& datum, const RootEntry& beta) {
  return Json{{"root", beta.root},
              {"coroot", beta.coroot},
              {"simple", datum.label(beta.simple)},
              {"imaginary", beta.imaginary},
              {"witness", format_word(datum, beta.witness)}};
}

Json chain_to_json(const CartanDatum& datum, const AChain& chain) {
  Json nodes = Json::array();
  Json roots = Json::array();
  for (const auto& w : chain.nodes) nodes.push_back(weight_to_json(w));
  for (const auto& beta : chain.roots) roots.push_back(root_to_json(datum, beta));
  return Json{{"a", rational_to_json(chain.a)}, {"nodes", nodes}, {"roots", roots}};
}

Json certificate_to_json(const CartanDatum& datum, const GlsCertificate& cert) {
  Json chains = Json::array();
  Json words = Json::array();
  for (const auto& c : cert.chains) chains.push_back(chain_to_json(datum, c));
  for (const auto& w : cert.orbit_words) words.push_back(format_word(datum, w));
  Json out{{"valid", cert.valid}};
  if (!cert.valid) out["reason"] = cert.reason;
  out["chains"] = chains;
  out["orbit_words"] = words;
  return out;
}

Json summand_to_json(const CartanDatum& datum, const Summand& s) {
  return Json{{"shape", weight_to_json(s.shape)},
              {"fword", format_word(datum, s.fword)},
              {"horizon", s.horizon},
              {"path", path_to_json(s.path)}};
}

Json decomposition_check_to_json(const DecompositionCheck& check) {
  return Json{{"ambient_nodes", check.ambient_nodes},
              {"highest_elements", check.highest_elements},
              {"highest_match", check.highest_match},
              {"partition", check.partition},
              {"isomorphic", check.isomorphic},
              {"character", check.character},
              {"problems", check.problems}};
}

Json character_to_json(const Character& ch) {
  Json out = Json::array();
  for (const auto& [w, count] : ch) out.push_back(Json{{"weight", weight_to_json(w)}, {"multiplicity", count}});
  return out;
}

std::string graph_to_dot(const CrystalGraph& g) {
  std::ostringstream out;
  out << "digraph crystal {\n";
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    out << "  n" << u << " [label=\"" << weight_label(g, g.nodes[u].weight) << "\"];\n";
  }
  for (const auto& e : g.edges) {
    out << "  n" << e.source << " -> n" << e.target << " [label=\"" << g.datum->label(e.label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string graph_to_jsonl(const CrystalGraph& g) {
  std::ostringstream out;
  Json shapes = Json::array();
  for (const auto& s : g.shapes) shapes.push_back(weight_to_json(s));
  Json header{{"type", "graph"},
              {"datum", datum_to_json(*g.datum)},
              {"shapes", shapes},
              {"depth", g.depth ? Json(*g.depth) : Json(nullptr)},
              {"string_closed", g.string_closed},
              {"nodes", g.nodes.size()},
              {"edges", g.edges.size()}};
  out << header.dump() << "\n";
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    const auto& n = g.nodes[u];
    Json record{{"type", "node"},
                {"id", u},
                {"depth", n.depth},
                {"weight", weight_to_json(n.weight)},
                {"fword", format_word(*g.datum, n.fword)},
                {"path", path_to_json(n.path)}};
    out << record.dump() << "\n";
  }
  for (const auto& e : g.edges) {
    Json record{{"type", "edge"}, {"source", e.source}, {"label", g.datum->label(e.label)}, {"target", e.target}};
    out << record.dump() << "\n";
  }
  return out.str();
}

std::vector<Weight> node_weights_from_jsonl(const std::string& text, std::size_t rank) {
  std::vector<Weight> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Json record = parse_json_text(line, "line " + std::to_string(number));
    if (record.value("type", "") == "node") out.push_back(weight_from_json(record.at("weight"), rank));
  }
  return out;
}

}  // namespace jlpath
