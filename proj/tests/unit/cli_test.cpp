#include "doctest.h"
#include "fixtures.hpp"

#include "jlpath/cli.hpp"
#include "jlpath/crystal.hpp"
#include "jlpath/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace jlpath;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("jlpath_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::size_t count_lines_with(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) n += line.find(needle) != std::string::npos;
  return n;
}

}  // namespace

TEST_CASE("datum validate") {
  const auto r = cli({"datum", "validate", fx::data_file("gkm2.json")});
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["valid"] == true);
  CHECK(j["real"] == Json::array({"1"}));
  CHECK(j["imaginary"] == Json::array({"2"}));
  CHECK(j["symmetrizer"] == Json::array({2, 1}));
  CHECK(j["even"] == true);
}

TEST_CASE("invalid datum exits 1") {
  const fs::path dir = scratch_dir("invalid");
  write_text_file((dir / "bad.json").string(), R"({"matrix": [[2, -1], [0, -4]]})");
  const auto r = cli({"datum", "validate", (dir / "bad.json").string()});
  CHECK(r.code == 1);
  CHECK(Json::parse(r.err)["error"] == "ZeroAsymmetry");
}

TEST_CASE("lifted entry") {
  const auto r = cli({"datum", "lift", fx::data_file("gkm2.json"), "--entry", "2,1,2,2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("-4") != std::string::npos);
  CHECK(cli({"datum", "lift", fx::data_file("gkm2.json"), "--entry", "1,2,2,2"}).code == 1);
}

TEST_CASE("monoid commands") {
  const auto r = cli({"monoid", "reduce", "1 1"});
  CHECK(r.code == 0);
  CHECK(r.out == "\n");
  const auto d = fx::data_file("gkm2.json");
  CHECK(cli({"monoid", "reduce", "2 2", "--datum", d}).out == "2 2\n");
  CHECK(cli({"monoid", "reduce", "1 2 1 2 1 2", "--datum", fx::data_file("a2.json")}).out == "\n");
  CHECK(cli({"monoid", "leq", "1", "2 1", "--datum", d}).out.find("true") != std::string::npos);
  CHECK(cli({"monoid", "reduce", "1 3", "--datum", d}).code == 1);
}

TEST_CASE("usage errors exit 1") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"crystal", "gen"}).code == 1);
  CHECK(cli({"no-such-command"}).code == 1);
}

TEST_CASE("global options may follow the subcommand") {
  const auto before = cli({"--bounds", "enum=5", "crystal", "gen", fx::data_file("a2.json"), "1,1", "--depth", "6"});
  const auto after = cli({"crystal", "gen", fx::data_file("a2.json"), "1,1", "--depth", "6", "--bounds", "enum=5"});
  CHECK(before.code == 2);
  CHECK(after.code == 2);
}

TEST_CASE("bounds exit 2") {
  const auto r = cli({"--bounds", "enum=5", "crystal", "gen", fx::data_file("gkm2.json"), "1,1", "--depth", "6"});
  CHECK(r.code == 2);
}

TEST_CASE("crystal gen dot is deterministic and matches the snapshot") {
  const fs::path dir = scratch_dir("gen");
  const auto d = fx::data_file("gkm2.json");
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "3", "8"}) {
    const fs::path out = dir / (std::string("g") + threads + ".dot");
    const fs::path manifest = dir / (std::string("g") + threads + ".json");
    const auto r = cli({"--threads", threads, "--manifest", manifest.string(), "-o", out.string(), "crystal", "gen", d,
                        "1,1", "--depth", "4", "--out", "dot"});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(manifest));
    outputs.push_back(slurp(out));
  }
  CHECK(outputs[0] == outputs[1]);
  CHECK(outputs[0] == outputs[2]);
  CHECK(outputs[0] == slurp(fs::path(JLPATH_DATA_DIR) / "snapshots" / "gkm2_gen_1_1_d4.dot"));

  const CrystalEngine engine(fx::gkm2());
  const auto g = engine.generate(fx::w({1, 1}), 4);
  CHECK(count_lines_with(outputs[0], "->") == g.edges.size());
  CHECK(count_lines_with(outputs[0], "label=") == g.size() + g.edges.size());
}

TEST_CASE("jsonl graphs and characters") {
  const fs::path dir = scratch_dir("char");
  const fs::path graph = dir / "g.jsonl";
  const auto gen = cli({"-o", graph.string(), "crystal", "gen", fx::data_file("a2.json"), "1,1", "--depth", "10", "--out",
                        "jsonl"});
  REQUIRE(gen.code == 0);
  const auto r = cli({"crystal", "char", graph.string()});
  REQUIRE(r.code == 0);
  long total = 0;
  for (const auto& entry : Json::parse(r.out)) total += entry["multiplicity"].get<long>();
  CHECK(total == 8);
}

TEST_CASE("manifests replay") {
  const fs::path dir = scratch_dir("replay");
  const fs::path manifest = dir / "m.json";
  const auto first = cli({"--manifest", manifest.string(), "crystal", "tensor", fx::data_file("a2.json"), "1,0", "1,0",
                          "--depth", "4"});
  REQUIRE(first.code == 0);
  const Json m = read_json_file(manifest.string());
  CHECK(m["output_digest"] == digest(first.out));
  CHECK(m["exit_code"] == 0);
  CHECK(m.contains("argv"));
  CHECK(m.contains("bounds"));
  CHECK(m.contains("seed"));
  CHECK(m.contains("threads"));
  CHECK(cli({"replay", manifest.string()}).code == 0);

  // A tampered digest no longer replays.
  Json bad = m;
  bad["output_digest"] = "0000000000000000";
  write_text_file((dir / "bad.json").string(), bad.dump(2));
  CHECK(cli({"replay", (dir / "bad.json").string()}).code == 1);
}

TEST_CASE("suite command") {
  const auto ok = cli({"--seed", "0", "suite", "operators", "--datum", fx::data_file("a2.json"), "--samples", "50"});
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["passed"] == true);
  const auto emb = cli({"suite", "embedding", "--datum", fx::data_file("gkm2.json"), "--samples", "50"});
  CHECK(emb.code == 0);
  CHECK(Json::parse(emb.out)["checks"]["prefix H evaluations"].get<long>() > 0);
}
