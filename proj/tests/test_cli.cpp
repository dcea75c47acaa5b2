#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "relpres/json_io.hpp"

namespace {

const char* cli_path() { return RELPRES_CLI_PATH; }

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content) {
    path = std::string("/tmp/relpres_test_") + name;
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

int run(const std::string& args, const std::string& out_file = "") {
  std::string cmd = std::string(cli_path()) + " " + args;
  if (!out_file.empty()) cmd += " -o " + out_file;
  cmd += " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* kGoodOmega = R"({
  "elements": ["a", "b", "c", "d", "e", "f"],
  "omega": [["a","b","d","e"], ["b","c","e","f"], ["d","e","f"]]
})";

const char* kTriangleOmega = R"({
  "elements": ["a", "b", "c"],
  "omega": [["a","b"], ["b","c"], ["c","a"]]
})";

}  // namespace

TEST_CASE("omega-check exit codes") {
  TempFile good("good_omega.json", kGoodOmega);
  CHECK(run("omega-check " + good.path) == 0);

  TempFile triangle("triangle_omega.json", kTriangleOmega);
  CHECK(run("omega-check " + triangle.path) == 1);
}

TEST_CASE("malformed input exits 2") {
  TempFile bad("bad.json", "{ not json");
  CHECK(run("omega-check " + bad.path) == 2);
  CHECK(run("up-check " + bad.path) == 2);
  CHECK(run("analyze " + bad.path) == 2);

  TempFile wrong_schema("wrong.json", R"({"elements": 3})");
  CHECK(run("omega-check " + wrong_schema.path) == 2);
}

TEST_CASE("sc-check on a power relator fails at 1/6") {
  TempFile rel("a4.json", R"({
    "free_gens": ["a"],
    "relators": [[{"gen": "a", "exp": 4}]]
  })");
  CHECK(run("sc-check " + rel.path + " --lambda 1/6") == 1);
  CHECK(run("sc-check " + rel.path + " --lambda 2") == 0);
  CHECK(run("sc-check " + rel.path + " --lambda 0") == 2);
}

TEST_CASE("sc-check built-in families at tiny sizes") {
  CHECK(run("sc-check --lambda 1/200 --family lemma3 --l 2 --J 60 --count 2") == 0);
  CHECK(run("sc-check --lambda 1/100 --family section5 --blocks 120 --count 2") == 0);
  CHECK(run("sc-check --lambda 1/100 --family section5 --blocks 3 --count 1") == 1);
}

TEST_CASE("up-check verdicts") {
  TempFile good("up_good.json", R"({
    "backend": {"kind": "free_abelian", "rank": 1},
    "X": [[0], [1]],
    "Y": [[0], [2]]
  })");
  CHECK(run("up-check " + good.path) == 0);

  TempFile bad("up_bad.json", R"({
    "backend": {"kind": "finite_table", "table": [[0,1],[1,0]]},
    "X": [0, 1],
    "Y": [0, 1]
  })");
  CHECK(run("up-check " + bad.path) == 1);
}

TEST_CASE("analyze a generalized presentation") {
  TempFile pres("gen.json", R"({
    "factors": [
      {"name": "G", "backend": {"kind": "free_abelian", "rank": 2}},
      {"name": "T", "backend": {"kind": "free_abelian", "rank": 2}}
    ],
    "free_gens": [],
    "relator": [
      {"factor": "G", "elem": [1, 0]},
      {"factor": "T", "elem": [1, 0]},
      {"factor": "G", "elem": [0, 1]},
      {"factor": "T", "elem": [0, 1]}
    ],
    "t_factor": "T"
  })");
  std::string out = "/tmp/relpres_test_analyze_out.json";
  CHECK(run("analyze " + pres.path, out) == 0);
  std::string text = slurp(out);
  CHECK(text.find("\"verdict\": true") != std::string::npos);
  CHECK(text.find("\"round_trip_ok\": true") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("diagram subcommands") {
  const char* balloon = R"({
    "m": 1,
    "exterior": "v0",
    "vertices": ["v0", "v1"],
    "corner_alphabet": ["c"],
    "corner_classes": {"c": ["c"]},
    "edges": [
      {"id": "e1", "from": "v0", "to": "v1", "label": "t"},
      {"id": "e2", "from": "v0", "to": "v1", "label": "t"}
    ],
    "faces": [
      {"id": "f1", "type": "C_FACE", "boundary": [
        {"edge": "e1", "along": true, "corner": "c"},
        {"edge": "e2", "along": false, "corner": "c^-1"}
      ]},
      {"id": "f2", "type": "C_FACE", "boundary": [
        {"edge": "e2", "along": true, "corner": "c^-1"},
        {"edge": "e1", "along": false, "corner": "c"}
      ]}
    ]
  })";
  TempFile d("balloon.json", balloon);
  CHECK(run("diagram validate " + d.path) == 0);
  CHECK(run("diagram parity " + d.path) == 0);
  CHECK(run("diagram simulate " + d.path) == 0);
  CHECK(run("diagram reduced " + d.path) == 0);
  CHECK(run("diagram reduce " + d.path + " --edge e1") == 1);  // reducible pair
}

TEST_CASE("diagram reduce merges a mergeable pair") {
  relpres::HowieDiagram flower = relpres::fixtures::c_flower3();
  TempFile d("flower.json", relpres::diagram_to_json(flower).dump(2));
  std::string out = "/tmp/relpres_test_reduce_out.json";
  REQUIRE(run("diagram reduce " + d.path + " --edge e2", out) == 0);
  // the merged diagram is still a valid input
  TempFile merged("flower_merged.json", slurp(out));
  CHECK(run("diagram validate " + merged.path) == 0);
  std::remove(out.c_str());
}

TEST_CASE("analyze an ordinary presentation with a subfamily") {
  TempFile pres("ord.json", R"({
    "factors": [
      {"name": "G1", "backend": {"kind": "free_abelian", "rank": 2}},
      {"name": "G2", "backend": {"kind": "free_abelian", "rank": 2}}
    ],
    "free_gens": ["t"],
    "relator": [
      {"factor": "G1", "elem": [1, 0]},
      {"gen": "t", "exp": 1},
      {"factor": "G2", "elem": [0, 1]},
      {"gen": "t", "exp": 1},
      {"factor": "G1", "elem": [2, 1]},
      {"gen": "t", "exp": -1}
    ]
  })");
  std::string out = "/tmp/relpres_test_analyze_ord.json";
  int code = run("analyze " + pres.path + " --gen t --subfamily '{\"factors\": [\"G1\"]}'", out);
  CHECK(code == 0);
  std::string text = slurp(out);
  CHECK(text.find("\"all_green\": true") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("reports are byte-stable across runs") {
  TempFile good("stable_omega.json", kGoodOmega);
  std::string o1 = "/tmp/relpres_test_stable1.json";
  std::string o2 = "/tmp/relpres_test_stable2.json";
  REQUIRE(run("omega-check " + good.path, o1) == 0);
  REQUIRE(run("omega-check " + good.path, o2) == 0);
  CHECK(slurp(o1) == slurp(o2));
  CHECK(!slurp(o1).empty());
  std::remove(o1.c_str());
  std::remove(o2.c_str());
}
