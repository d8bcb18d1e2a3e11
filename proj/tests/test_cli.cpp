#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <hoops/cli.hpp>

using namespace hoops;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return std::string(HOOPS_FIXTURES_DIR) + "/" + name;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// A scratch file that cleans up after itself.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content = "") {
    path = std::string("/tmp/hoops_cli_") + name;
    if (!content.empty()) {
      std::ofstream f(path);
      f << content;
    }
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("check reports certification and properties", "[cli]") {
  RunResult r = run({"check", fixture("g3.hoop")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "certified: yes"));
  CHECK(contains(r.out, "size: 3  one: 1  zero: 0"));
  CHECK(contains(r.out, "properties: bounded join basic idempotent local regular"));

  RunResult bad = run({"check", fixture("hoop6-bad-unit.hoop")});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "certified: no"));
  CHECK(contains(bad.out, "violation: H1-unit at (1, 0)"));

  RunResult missing = run({"check", "/nonexistent/path.hoop"});
  CHECK(missing.code == 2);
  CHECK(contains(missing.err, "cannot open"));

  TempFile broken("syntax.hoop", "size 3\nlabels 0 m 1\none 1\nmul\n0 0 0\n0 m\n");
  RunResult syn = run({"check", broken.path});
  CHECK(syn.code == 2);
  CHECK(contains(syn.err, ":6:1: row 2 of the product table has 2 entries, expected 3"));
}

TEST_CASE("sqrt and root answer with maps and classification", "[cli]") {
  RunResult g3 = run({"sqrt", fixture("g3.hoop")});
  CHECK(g3.code == 0);
  CHECK(contains(g3.out, "root: yes"));
  CHECK(contains(g3.out, "map: 0 -> 0, m -> m, 1 -> 1"));
  CHECK(contains(g3.out, "identity: yes"));
  CHECK(contains(g3.out, "good: yes"));
  CHECK(contains(g3.out, "strict: no"));
  CHECK(contains(g3.out, "equations: eq1 yes, eq2 yes, eq3 yes"));

  RunResult l3 = run({"sqrt", fixture("l3.hoop")});
  CHECK(l3.code == 0);
  CHECK(contains(l3.out, "root: none"));

  RunResult cube = run({"root", "-n", "3", fixture("b4.hoop")});
  CHECK(cube.code == 0);
  CHECK(contains(cube.out, "degree: 3"));
  CHECK(contains(cube.out, "identity: yes"));

  CHECK(run({"root", "-n", "0", fixture("g3.hoop")}).code == 2);
}

TEST_CASE("filters lists prime and maximal tags", "[cli]") {
  RunResult r = run({"filters", fixture("b4.hoop")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "filters: 4 (3 proper)"));
  CHECK(contains(r.out, "{a, 1}  maximal  prime"));
  CHECK(contains(r.out, "{0, a, b, 1}  improper"));
  CHECK_FALSE(contains(r.out, "improper  maximal"));
}

TEST_CASE("quotient by labeled filters", "[cli]") {
  RunResult ok = run({"quotient", fixture("hoop6.hoop"), "--filter", "a,b,1"});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "filter: {a, b, 1}"));
  CHECK(contains(ok.out, "class [0] = {0, c, d}"));
  CHECK(contains(ok.out, "class [a] = {a, b, 1}"));
  CHECK(contains(ok.out, "size 2"));

  RunResult not_filter = run({"quotient", fixture("hoop6.hoop"), "--filter", "a,1"});
  CHECK(not_filter.code == 1);
  CHECK(contains(not_filter.out, "not a filter"));

  RunResult unknown = run({"quotient", fixture("hoop6.hoop"), "--filter", "q,1"});
  CHECK(unknown.code == 2);
  CHECK(contains(unknown.err, "unknown label `q`"));
}

TEST_CASE("subsets reports the distinguished subsets", "[cli]") {
  RunResult r = run({"subsets", fixture("hoop6.hoop")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "idempotents: {0, b, c, 1}"));
  CHECK(contains(r.out, "regular: {0, a, b, c, d, 1}"));
  CHECK(contains(r.out, "dense: {1}"));
  CHECK(contains(r.out, "nilpotent: {0, d}"));
  CHECK(contains(r.out, "boolean-center: {0, b, c, 1}"));
}

TEST_CASE("product dumps a model file and iso finds the expected match", "[cli]") {
  TempFile prod("product.hoop");
  RunResult p = run({"product", fixture("l3.hoop"), fixture("two.hoop"), "--out", prod.path});
  CHECK(p.code == 0);
  CHECK(p.out.empty());  // report went to the file

  RunResult yes = run({"iso", prod.path, fixture("hoop6.hoop")});
  CHECK(yes.code == 0);
  CHECK(contains(yes.out, "isomorphic: yes"));
  CHECK(contains(yes.out, "map: (0,0) -> 0"));

  RunResult no = run({"iso", fixture("g3.hoop"), fixture("l3.hoop")});
  CHECK(no.code == 1);
  CHECK(contains(no.out, "isomorphic: no"));
}

TEST_CASE("audit runs the catalog on files and parametric models", "[cli]") {
  RunResult g3 = run({"audit", fixture("g3.hoop")});
  CHECK(g3.code == 0);
  CHECK(contains(g3.out, "target: " + fixture("g3.hoop") + " (exhaustive)"));
  CHECK(contains(g3.out, "square root: exists, identity = yes, good = yes, strict = no"));
  CHECK(contains(g3.out, "entries: 125  applicable: 110  held: 110  failed: 0"));

  RunResult luka = run({"audit", "--model", "lukasiewicz", "--seed", "7", "--samples", "256"});
  CHECK(luka.code == 0);
  CHECK(contains(luka.out, "square root: s(0) = 1/2, good = no, strict = yes"));
  CHECK(contains(luka.out, "entries: 125  applicable: 91  held: 91  failed: 0"));

  RunResult pick = run({"audit", "--model", "free", "--catalog", "law.mul-comm,good.bottom"});
  CHECK(pick.code == 0);
  CHECK(contains(pick.out, "entries: 2  applicable: 1"));
  CHECK(contains(pick.out, "good.bottom"));
  CHECK(contains(pick.out, "family has no bottom"));

  CHECK(run({"audit", "--model", "nonsense"}).code == 2);
  CHECK(run({"audit", "--catalog", "law.mul-comm"}).code == 2);  // no target
  CHECK(run({"audit", fixture("g3.hoop"), "--model", "godel"}).code == 2);
  CHECK(run({"audit", fixture("g3.hoop"), "--catalog", "no.such.entry"}).code == 2);
}

TEST_CASE("hunt reports countermodels and clean bills", "[cli]") {
  RunResult found = run({"hunt", "--identity", "(x -> y) -> y = (y -> x) -> x", "--max-size", "3"});
  CHECK(found.code == 1);
  CHECK(contains(found.out, "countermodel: size 3 (4 models tried)"));
  CHECK(contains(found.out, "witness: x = a, y = 0"));
  CHECK(contains(found.out, "labels 0 a 1"));

  RunResult clean = run({"hunt", "--identity", "x * (x -> y) = y * (y -> x)", "--max-size", "4"});
  CHECK(clean.code == 0);
  CHECK(contains(clean.out, "no countermodel up to size 4"));

  RunResult gated = run({"hunt", "--identity", "(x -> y) -> y = (y -> x) -> x", "--hypotheses",
                         "wajsberg", "--max-size", "4"});
  CHECK(gated.code == 0);

  RunResult bad = run({"hunt", "--identity", "x -> "});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "expected '=' or '<='"));

  CHECK(run({"hunt", "--identity", "x = x", "--max-size", "7"}).code == 2);
  CHECK(run({"hunt", "--identity", "x = x", "--max-size", "6"}).code == 2);  // needs the flag
  CHECK(run({"hunt", "--identity", "x = x", "--max-size", "6", "--allow-size-6"}).code == 0);
}

TEST_CASE("enumerate emits model dumps or a census", "[cli]") {
  RunResult dumps = run({"enumerate", "--size", "3"});
  CHECK(dumps.code == 0);
  CHECK(contains(dumps.out, "# model 1 of 2"));
  CHECK(contains(dumps.out, "# model 2 of 2"));

  RunResult census = run({"enumerate", "--size", "3", "--census"});
  CHECK(census.code == 0);
  CHECK(contains(census.out,
                 "index,size,fingerprint,bounded,basic,wajsberg,dnp,idempotent,sqrt,good,strict"));
  CHECK(contains(census.out, ",yes,yes,yes,yes,no,none,n/a,n/a"));
  CHECK(contains(census.out, ",yes,yes,no,no,yes,identity,yes,no"));
  CHECK_FALSE(contains(census.out, ",map,"));  // rigidity: identity or nothing

  CHECK(run({"enumerate", "--size", "0"}).code == 2);
  CHECK(run({"enumerate", "--size", "6"}).code == 2);
  RunResult six = run({"enumerate", "--size", "6", "--census", "--allow-size-6"});
  CHECK(six.code == 0);
  CHECK(contains(six.err, "note: searching size 6"));
}

TEST_CASE("json reports are deterministic and carry the schema tag", "[cli]") {
  const std::vector<std::string> cmd = {"audit", "--model", "lukasiewicz", "--seed", "7",
                                        "--samples", "256", "--json"};
  RunResult first = run(cmd);
  RunResult second = run(cmd);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);

  const Json j = Json::parse(first.out);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "audit");
  CHECK(j["target"]["model"] == "lukasiewicz");
  CHECK(j["target"]["seed"] == 7);
  CHECK(j["sqrt"]["s0"] == "1/2");
  CHECK(j["sqrt"]["good"] == false);
  CHECK(j["sqrt"]["strict"] == true);
  CHECK(j["summary"]["applicable"] == 91);
  CHECK(j["summary"]["failed"] == 0);
  CHECK(j["entries"].size() == 125);

  // A different seed changes the byte stream's content deterministically.
  RunResult other = run({"audit", "--model", "lukasiewicz", "--seed", "8", "--samples", "256",
                         "--json"});
  CHECK(other.code == 0);
  CHECK(Json::parse(other.out)["summary"]["failed"] == 0);

  RunResult sqrt_json = run({"sqrt", fixture("g3.hoop"), "--json"});
  const Json sj = Json::parse(sqrt_json.out);
  CHECK(sj["root"]["identity"] == true);
  CHECK(sj["root"]["good"] == true);
  CHECK(sj["root"]["strict"] == false);
  CHECK(sj["root"]["map"]["m"] == "m");

  RunResult hunt_json = run({"hunt", "--identity", "(x -> y) -> y = (y -> x) -> x", "--max-size",
                             "3", "--json"});
  CHECK(hunt_json.code == 1);
  const Json hj = Json::parse(hunt_json.out);
  CHECK(hj["countermodel"]["models_tried"] == 4);
  CHECK(hj["countermodel"]["witness"]["x"] == "a");
  CHECK(hj["countermodel"]["witness"]["y"] == "0");
  CHECK(hj["countermodel"]["model"]["properties"]["idempotent"] == true);
}

TEST_CASE("usage surface: help, missing subcommand, --out failures", "[cli]") {
  RunResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "workbench"));
  CHECK(contains(help.out, "audit"));

  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);

  RunResult bad_out = run({"check", fixture("g3.hoop"), "--out", "/nonexistent/dir/x.json"});
  CHECK(bad_out.code == 2);
  CHECK(contains(bad_out.err, "cannot write"));

  TempFile report("report.json");
  RunResult to_file = run({"check", fixture("g3.hoop"), "--json", "--out", report.path});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(report.path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const Json j = Json::parse(ss.str());
  CHECK(j["certified"] == true);
  CHECK(j["model"]["size"] == 3);
}
