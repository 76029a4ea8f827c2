#include "jlpath/cli.hpp"

#include "jlpath/cartan_datum.hpp"
#include "jlpath/crystal.hpp"
#include "jlpath/error.hpp"
#include "jlpath/lift_embed.hpp"
#include "jlpath/serialize.hpp"
#include "jlpath/suites.hpp"
#include "jlpath/weyl_monoid.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace jlpath {

namespace {

constexpr const char* kVersion = "1.0.0";

struct Bounds {
  long height = 32;          // root table height
  std::size_t chain = 3;     // defining-chain search length
  std::size_t enumeration = 500000;
};

Bounds parse_bounds(const std::string& text) {
  Bounds b;
  if (text.empty()) return b;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Usage, "bound '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    long value = 0;
    try {
      value = std::stol(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::Usage, "bound '" + item + "' needs an integer value");
    }
    if (value <= 0) throw Error(ErrorCode::Usage, "bound '" + key + "' must be positive");
    if (key == "height") {
      b.height = value;
    } else if (key == "chain") {
      b.chain = static_cast<std::size_t>(value);
    } else if (key == "enum") {
      b.enumeration = static_cast<std::size_t>(value);
    } else {
      throw Error(ErrorCode::Usage, "unknown bound '" + key + "'");
    }
  }
  return b;
}

// The datum used by the monoid commands when no --datum is given: pairwise
// commuting real generators, one per label in the words.
CartanDatum default_datum(const std::vector<std::string>& words) {
  std::vector<std::string> labels;
  for (const auto& w : words) {
    std::string normalized = w;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::string token;
    while (in >> token) {
      if (token != "e" && std::find(labels.begin(), labels.end(), token) == labels.end()) labels.push_back(token);
    }
  }
  std::sort(labels.begin(), labels.end());
  if (labels.empty()) labels.push_back("1");
  IntMatrix m(labels.size(), std::vector<long>(labels.size(), 0));
  for (std::size_t i = 0; i < labels.size(); ++i) m[i][i] = 2;
  return CartanDatum::validate(std::move(m), std::move(labels));
}

std::vector<Weight> parse_shapes(const std::string& text, std::size_t rank) {
  std::vector<Weight> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) out.push_back(parse_weight(item, rank));
  if (out.empty()) throw Error(ErrorCode::Usage, "empty ambient shape list");
  return out;
}

std::vector<int> parse_subset(const CartanDatum& datum, const std::string& text) {
  std::vector<int> out;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::string token;
  while (in >> token) out.push_back(datum.index_of(token));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string lifted_word_text(const CartanDatum& datum, const OrderedIndexWord& word) {
  std::string out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out += " ";
    out += "(" + datum.label(word[k].base) + "," + std::to_string(word[k].level) + ")";
  }
  return out;
}

Json lifted_weight_to_json(const CartanDatum& datum, const LiftedWeight& w) {
  Json base = Json::array();
  for (const auto& b : w.base_evals()) base.push_back(rational_to_json(b));
  Json offset = Json::array();
  for (const auto& [p, c] : w.offset()) {
    offset.push_back(Json{{"index", datum.label(p.base)}, {"level", p.level}, {"coefficient", rational_to_json(c)}});
  }
  return Json{{"base_evals", base}, {"offset", offset}};
}

Json lifted_path_to_json(const CartanDatum& datum, const LiftedPath& path) {
  Json out = Json::array();
  for (const auto& s : path.segments()) {
    out.push_back(Json{{"slope", lifted_weight_to_json(datum, s.slope)}, {"duration", rational_to_json(s.duration)}});
  }
  return out;
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

// Parsed global state shared by the subcommand callbacks.
struct Session {
  std::string bounds_text;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string manifest_file;
  std::string output_file;
  Bounds bounds;

  CrystalOptions crystal_options() const {
    CrystalOptions o;
    o.node_cap = bounds.enumeration;
    o.threads = threads;
    o.gls.height_bound = bounds.height;
    return o;
  }
};

}  // namespace

std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact path-model computations for generalized Kac-Moody algebras", "jlpath"};
  app.require_subcommand(1);
  // Global options may also follow a subcommand.
  app.fallthrough();
  Session session;
  app.add_option("--bounds", session.bounds_text, "height=H,chain=C,enum=E");
  app.add_option("--threads", session.threads, "worker threads for crystal generation")->check(CLI::PositiveNumber);
  app.add_option("--seed", session.seed, "seed for randomized suites");
  app.add_option("--manifest", session.manifest_file, "write a run manifest here");
  app.add_option("--output,-o", session.output_file, "write the result here instead of stdout");

  std::string result;        // the command's artifact
  int status = ExitOk;
  std::vector<std::string> inputs;
  std::function<void()> action;

  // datum
  auto* datum_cmd = app.add_subcommand("datum", "validate or inspect a datum");
  datum_cmd->require_subcommand(1);
  std::string datum_file;
  auto* validate_cmd = datum_cmd->add_subcommand("validate", "check the Borcherds-Cartan conditions");
  validate_cmd->add_option("file", datum_file)->required();
  validate_cmd->callback([&] {
    action = [&] {
      inputs.push_back(datum_file);
      const CartanDatum d = load_datum(datum_file);
      Json j = datum_to_json(d);
      Json real = Json::array();
      Json imag = Json::array();
      for (int i : d.real_indices()) real.push_back(d.label(i));
      for (int i : d.imaginary_indices()) imag.push_back(d.label(i));
      j["real"] = real;
      j["imaginary"] = imag;
      std::optional<std::vector<long>> sym;
      try {
        sym = find_symmetrizer(d);
      } catch (const Error& e) {
        if (!is_bound_error(e.code())) throw;
      }
      j["symmetrizable"] = sym.has_value();
      if (sym) {
        j["symmetrizer"] = *sym;
        j["even"] = is_even(d);
      }
      j["valid"] = true;
      result = pretty(j);
    };
  });
  std::string entry_text;
  auto* lift_cmd = datum_cmd->add_subcommand("lift", "entry of the lifted Cartan matrix");
  lift_cmd->add_option("file", datum_file)->required();
  lift_cmd->add_option("--entry", entry_text, "i,m,j,n")->required();
  lift_cmd->callback([&] {
    action = [&] {
      inputs.push_back(datum_file);
      const CartanDatum d = load_datum(datum_file);
      std::vector<std::string> parts;
      std::stringstream in(entry_text);
      std::string item;
      while (std::getline(in, item, ',')) parts.push_back(item);
      if (parts.size() != 4) throw Error(ErrorCode::Usage, "--entry needs i,m,j,n");
      const auto level = [](const std::string& s) {
        try {
          return std::stoi(s);
        } catch (const std::exception&) {
          throw Error(ErrorCode::Usage, "level '" + s + "' is not an integer");
        }
      };
      const LiftedIndex p{d.index_of(parts[0]), level(parts[1])};
      const LiftedIndex q{d.index_of(parts[2]), level(parts[3])};
      result = std::to_string(lifted_entry(d, p, q)) + "\n";
    };
  });

  // monoid
  auto* monoid_cmd = app.add_subcommand("monoid", "generalized Weyl monoid");
  monoid_cmd->require_subcommand(1);
  std::string monoid_datum;
  std::string word_a;
  std::string word_b;
  std::string weight_text;
  const auto monoid_datum_for = [&](std::vector<std::string> words) {
    if (!monoid_datum.empty()) {
      inputs.push_back(monoid_datum);
      return load_datum(monoid_datum);
    }
    return default_datum(words);
  };
  auto* reduce_cmd = monoid_cmd->add_subcommand("reduce", "normal form of a word");
  reduce_cmd->add_option("word", word_a)->required();
  reduce_cmd->add_option("--datum", monoid_datum);
  reduce_cmd->callback([&] {
    action = [&] {
      const CartanDatum d = monoid_datum_for({word_a});
      const WeylMonoid m(d, MonoidOptions{session.bounds.enumeration, false});
      result = format_word(d, m.normal_form(parse_word(d, word_a))) + "\n";
    };
  });
  auto* leq_cmd = monoid_cmd->add_subcommand("leq", "Bruhat comparison u <= w");
  leq_cmd->add_option("u", word_a)->required();
  leq_cmd->add_option("w", word_b)->required();
  leq_cmd->add_option("--datum", monoid_datum);
  leq_cmd->callback([&] {
    action = [&] {
      const CartanDatum d = monoid_datum_for({word_a, word_b});
      const WeylMonoid m(d, MonoidOptions{session.bounds.enumeration, false});
      const RootTable table = RootTable::build(d, session.bounds.height);
      result = std::string(m.bruhat_leq(parse_word(d, word_a), parse_word(d, word_b), table) ? "true" : "false") +
               "\n";
    };
  });
  auto* act_cmd = monoid_cmd->add_subcommand("act", "action on a weight");
  act_cmd->add_option("word", word_a)->required();
  act_cmd->add_option("weight", weight_text)->required();
  act_cmd->add_option("--datum", monoid_datum);
  act_cmd->callback([&] {
    action = [&] {
      const CartanDatum d = monoid_datum_for({word_a});
      const WeylMonoid m(d, MonoidOptions{session.bounds.enumeration, false});
      result = pretty(weight_to_json(m.act(parse_word(d, word_a), parse_weight(weight_text, d.rank()))));
    };
  });

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "quasi-embedding into the lifted datum");
  embed_cmd->require_subcommand(1);
  std::string shape_text;
  bool check_h = false;
  auto* eword_cmd = embed_cmd->add_subcommand("word", "lifted operator word");
  eword_cmd->add_option("datum", datum_file)->required();
  eword_cmd->add_option("fword", word_a)->required();
  eword_cmd->callback([&] {
    action = [&] {
      inputs.push_back(datum_file);
      const CartanDatum d = load_datum(datum_file);
      result = lifted_word_text(d, embed_word(d, parse_word(d, word_a))) + "\n";
    };
  });
  auto* epath_cmd = embed_cmd->add_subcommand("path", "apply an operator word on both sides");
  epath_cmd->add_option("datum", datum_file)->required();
  epath_cmd->add_option("shape", shape_text, "shapes separated by ';'")->required();
  epath_cmd->add_option("fword", word_a)->required();
  epath_cmd->add_flag("--check-h", check_h, "compare the H functions along the way");
  epath_cmd->callback([&] {
    action = [&] {
      inputs.push_back(datum_file);
      const CartanDatum d = load_datum(datum_file);
      const auto shapes = parse_shapes(shape_text, d.rank());
      const OperatorWord fword = parse_word(d, word_a);
      const EmbeddedPair pair = embed_path(d, fword, shapes);
      Json j{{"lifted_word", lifted_word_text(d, embed_word(d, fword))},
             {"null", !pair.gkm.has_value()},
             {"path", pair.gkm ? path_to_json(*pair.gkm) : Json(nullptr)},
             {"lifted_path", pair.lifted ? lifted_path_to_json(d, *pair.lifted) : Json(nullptr)}};
      if (check_h) {
        const HProbeReport probe = h_equality_probe(d, fword, shapes);
        j["h_check"] = Json{{"prefixes_checked", probe.prefixes_checked},
                            {"mismatches", probe.mismatches},
                            {"passed", probe.passed()}};
        if (!probe.passed()) status = ExitDomain;
      }
      result = pretty(j);
    };
  });

  // crystal
  auto* crystal_cmd = app.add_subcommand("crystal", "crystal graphs, decompositions, standardness");
  crystal_cmd->require_subcommand(1);
  long depth = 4;
  bool string_close = false;
  std::string format = "jsonl";
  std::string mu_text;
  std::string subset_text;
  std::string path_file;
  auto* gen_cmd = crystal_cmd->add_subcommand("gen", "generate a truncated crystal");
  gen_cmd->add_option("datum", datum_file)->required();
  gen_cmd->add_option("shape", shape_text, "one shape, or several separated by ';'")->required();
  gen_cmd->add_option("--depth", depth)->required()->check(CLI::NonNegativeNumber);
  gen_cmd->add_flag("--string-close", string_close, "complete the real strings");
  gen_cmd->add_option("--out", format)->check(CLI::IsMember({"dot", "jsonl"}));
  gen_cmd->callback([&] {
    action = [&] {
      inputs.push_back(datum_file);
      const CartanDatum d = load_datum(datum_file);
      const CrystalEngine engine(d, session.crystal_options());
      const auto shapes = parse_shapes(shape_text, d.rank());
      CrystalGraph g = shapes.size() == 1 ? engine.generate(shapes[0], depth) : engine.generate_concat(shapes, depth);
      if (string_close) engine.close_strings(g, d.real_indices());
      result = format == "dot" ? graph_to_dot(g) : graph_to_jsonl(g);
    };
  });
  auto* tensor_cmd = crystal_cmd->add_subcommand("tensor", "tensor product rule");
  tensor_cmd->add_option("datum", datum_file)->required();
  tensor_cmd->add_option("lambda", shape_text)->required();
  tensor_cmd->add_option("mu", mu_text)->required();
  tensor_cmd->add_option("--depth", depth)->required()->check(CLI::NonNegativeNumber);
  tensor_cmd->callback([&] {
    action = [&] {
      inputs.push_back(datum_file);
      const CartanDatum d = load_datum(datum_file);
      const CrystalEngine engine(d, session.crystal_options());
      const Weight lambda = parse_weight(shape_text, d.rank());
      const Weight mu = parse_weight(mu_text, d.rank());
      const auto summands = engine.tensor_decompose(lambda, mu, depth);
      const auto check = engine.verify_tensor_decomposition(lambda, mu, depth, summands);
      Json list = Json::array();
      for (const auto& s : summands) list.push_back(summand_to_json(d, s));
      result = pretty(Json{{"lambda", weight_to_json(lambda)},
                           {"mu", weight_to_json(mu)},
                           {"depth", depth},
                           {"summands", list},
                           {"verification", decomposition_check_to_json(check)}});
      if (!check.ok()) status = ExitDomain;
    };
  });
  auto* branch_cmd = crystal_cmd->add_subcommand("branch", "Levi branching rule");
  branch_cmd->add_option("datum", datum_file)->required();
  branch_cmd->add_option("lambda", shape_text)->required();
  branch_cmd->add_option("--subset", subset_text, "labels of S")->required();
  branch_cmd->add_option("--depth", depth)->required()->check(CLI::NonNegativeNumber);
  branch_cmd->callback([&] {
    action = [&] {
      inputs.push_back(datum_file);
      const CartanDatum d = load_datum(datum_file);
      const CrystalEngine engine(d, session.crystal_options());
      const Weight lambda = parse_weight(shape_text, d.rank());
      const auto subset = parse_subset(d, subset_text);
      const auto summands = engine.branch(lambda, subset, depth);
      const auto check = engine.verify_branch(lambda, subset, depth, summands);
      Json list = Json::array();
      for (const auto& s : summands) list.push_back(summand_to_json(d, s));
      Json labels = Json::array();
      for (int i : subset) labels.push_back(d.label(i));
      result = pretty(Json{{"lambda", weight_to_json(lambda)},
                           {"subset", labels},
                           {"depth", depth},
                           {"summands", list},
                           {"verification", decomposition_check_to_json(check)}});
      if (!check.ok()) status = ExitDomain;
    };
  });
  auto* standard_cmd = crystal_cmd->add_subcommand("standard", "decide standardness of a concatenation");
  standard_cmd->add_option("datum", datum_file)->required();
  standard_cmd->add_option("ambient", shape_text, "shapes separated by ';'")->required();
  standard_cmd->add_option("path-file", path_file)->required();
  standard_cmd->callback([&] {
    action = [&] {
      inputs.push_back(datum_file);
      inputs.push_back(path_file);
      const CartanDatum d = load_datum(datum_file);
      const CrystalEngine engine(d, session.crystal_options());
      const auto shapes = parse_shapes(shape_text, d.rank());
      const RationalPath pi = path_from_json(read_json_file(path_file), d.rank());
      const bool member = engine.in_tensor(shapes, pi);
      Json j{{"in_ambient", member}};
      if (member) {
        const RaiseResult raised = engine.raise_to_highest(shapes, pi);
        j["standard"] = raised.terminal == highest_path(shapes);
        j["raising_word"] = format_word(d, raised.eword);
        j["terminal"] = path_to_json(raised.terminal);
        const auto chain = engine.search_defining_chain(shapes, pi, session.bounds.chain);
        if (chain) {
          Json words = Json::array();
          for (const auto& w : *chain) words.push_back(format_word(d, w));
          j["defining_chain"] = words;
        } else {
          j["defining_chain"] = nullptr;
        }
      }
      result = pretty(j);
    };
  });
  std::string graph_file;
  auto* char_cmd = crystal_cmd->add_subcommand("char", "character of a JSONL graph");
  char_cmd->add_option("graph-file", graph_file)->required();
  char_cmd->callback([&] {
    action = [&] {
      inputs.push_back(graph_file);
      std::ifstream in(graph_file);
      if (!in) throw Error(ErrorCode::Usage, "cannot open " + graph_file);
      std::stringstream buffer;
      buffer << in.rdbuf();
      const std::string text = buffer.str();
      const std::string header_line = text.substr(0, text.find('\n'));
      Json header;
      try {
        header = Json::parse(header_line);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("graph header: ") + e.what());
      }
      const CartanDatum d = datum_from_json(header.at("datum"));
      Character ch;
      for (const auto& w : node_weights_from_jsonl(text, d.rank())) ++ch[w];
      result = pretty(character_to_json(ch));
    };
  });

  // suites
  auto* suite_cmd = app.add_subcommand("suite", "run a property suite");
  std::string suite_name;
  SuiteOptions suite_options;
  suite_cmd->add_option("name", suite_name)->required()->check(
      CLI::IsMember({"operators", "monoid", "embedding", "decomposition"}));
  suite_cmd->add_option("--datum", datum_file)->required();
  suite_cmd->add_option("--samples", suite_options.samples);
  suite_cmd->add_option("--length", suite_options.word_length);
  suite_cmd->add_option("--depth", suite_options.depth);
  suite_cmd->callback([&] {
    action = [&] {
      inputs.push_back(datum_file);
      const CartanDatum d = load_datum(datum_file);
      suite_options.seed = session.seed;
      suite_options.crystal = session.crystal_options();
      suite_options.monoid.enumeration_cap = session.bounds.enumeration;
      const SuiteReport report = run_suite(suite_name, d, suite_options);
      result = pretty(report.to_json());
      if (!report.passed()) status = ExitDomain;
    };
  });

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "rerun a manifest and compare the output digest");
  std::string replay_file;
  replay_cmd->add_option("manifest", replay_file)->required();
  replay_cmd->callback([&] {
    action = [&] {
      const Json manifest = read_json_file(replay_file);
      std::vector<std::string> argv = manifest.at("argv").get<std::vector<std::string>>();
      // Drop the side outputs of the original run.
      std::vector<std::string> rerun;
      for (std::size_t k = 0; k < argv.size(); ++k) {
        if (argv[k] == "--manifest" || argv[k] == "--output" || argv[k] == "-o") {
          ++k;
          continue;
        }
        rerun.push_back(argv[k]);
      }
      std::ostringstream captured;
      std::ostringstream diagnostics;
      const int code = run(rerun, captured, diagnostics);
      const std::string expected = manifest.at("output_digest").get<std::string>();
      const bool same = digest(captured.str()) == expected && code == manifest.at("exit_code").get<int>();
      result = pretty(Json{{"reproduced", same}, {"exit_code", code}, {"output_digest", digest(captured.str())},
                           {"expected_digest", expected}});
      if (!same) status = ExitDomain;
    };
  });

  const auto diagnose = [&](const std::string& code, const std::string& message) {
    err << Json{{"error", code}, {"message", message}}.dump() << "\n";
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ExitOk;
  } catch (const CLI::ParseError& e) {
    diagnose("Usage", e.what());
    return ExitDomain;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    session.bounds = parse_bounds(session.bounds_text);
    if (!action) throw Error(ErrorCode::Usage, "no command");
    action();
  } catch (const Error& e) {
    diagnose(std::string(error_code_name(e.code())), e.what());
    return is_bound_error(e.code()) ? ExitBound : ExitDomain;
  } catch (const nlohmann::json::exception& e) {
    diagnose("Parse", e.what());
    return ExitDomain;
  } catch (const std::logic_error& e) {
    diagnose("InternalInconsistency", e.what());
    return ExitDomain;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();

  try {
    if (session.output_file.empty()) {
      out << result;
    } else {
      write_text_file(session.output_file, result);
    }
    if (!session.manifest_file.empty()) {
      Json files = Json::array();
      for (const auto& f : inputs) {
        std::ifstream in(f, std::ios::binary);
        std::stringstream buffer;
        buffer << in.rdbuf();
        files.push_back(Json{{"file", f}, {"digest", digest(buffer.str())}});
      }
      Json manifest{{"tool", "jlpath"},
                    {"version", kVersion},
                    {"argv", args},
                    {"inputs", files},
                    {"bounds", Json{{"height", session.bounds.height},
                                    {"chain", session.bounds.chain},
                                    {"enum", session.bounds.enumeration}}},
                    {"threads", session.threads},
                    {"seed", session.seed},
                    {"exit_code", status},
                    {"output", session.output_file.empty() ? Json(nullptr) : Json(session.output_file)},
                    {"output_digest", digest(result)},
                    {"elapsed_ms", elapsed}};
      write_text_file(session.manifest_file, pretty(manifest));
    }
  } catch (const Error& e) {
    diagnose(std::string(error_code_name(e.code())), e.what());
    return ExitDomain;
  }
  return status;
}

}  // namespace jlpath
