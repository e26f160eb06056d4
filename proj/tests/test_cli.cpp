#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_tool(const std::string& args) {
  const std::string cmd = std::string(GCDB_TOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) res.out.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string write_temp_pattern(const std::string& name, const std::string& text) {
  const std::string path = std::string("/tmp/gcdb_cli_") + name + ".bp";
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("zeta subcommand emits the closed form") {
  const auto res = run_tool("zeta --s 2");
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(res.out);
  CHECK(j["schema"] == "gcdb-lab/1");
  CHECK(std::abs(j["value"].get<double>() - 1.6449340668482264) < 1e-8);
}

TEST_CASE("density run carries estimate, target, and error") {
  const auto res = run_tool("density --b 2 --k 1 --N 200");
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(res.out);
  CHECK(j["op"] == "density");
  CHECK(std::abs(j["target"].get<double>() - 0.8319073725807075) < 1e-6);
  CHECK(std::abs(j["estimate"].get<double>() - j["target"].get<double>()) < 0.02);
  CHECK(j["abs_error"].get<double>() >= 0.0);
}

TEST_CASE("byte-identical output across repeats and worker counts") {
  const auto a = run_tool("density --b 1 --k 1 --N 300 --workers 1");
  const auto b = run_tool("density --b 1 --k 1 --N 300 --workers 1");
  const auto c = run_tool("density --b 1 --k 1 --N 300 --workers 3");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);

  const auto conn1 = run_tool("graph connectivity --b 2 --N 150 --workers 1");
  const auto conn4 = run_tool("graph connectivity --b 2 --N 150 --workers 4");
  CHECK(conn1.out == conn4.out);
}

TEST_CASE("csv format has the fixed header") {
  const auto res = run_tool("mean-value --f floor-inverse --b 1 --N 100 --format csv");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.rfind("op,b,k,f,N,x,estimate,target,abs_error,flagged", 0) == 0);
}

TEST_CASE("mean-value rejects unknown f names") {
  const auto res = run_tool("mean-value --f nope --b 1 --N 50");
  CHECK(res.exit_code == 1);
}

TEST_CASE("pattern check / realize / verify / brute round trip") {
  const auto path = write_temp_pattern("ring33", "b=2 w=3 h=3\nxxx\nxox\nxxx\n");
  const auto check = run_tool("pattern check --file " + path);
  REQUIRE(check.exit_code == 0);
  const json cj = json::parse(check.out);
  CHECK(cj["realizable"] == true);
  CHECK(cj["missing_residues"].size() >= 2);  // p = 2 and p = 3

  const auto realize = run_tool("pattern realize --file " + path);
  REQUIRE(realize.exit_code == 0);
  const json rj = json::parse(realize.out);
  REQUIRE(rj["verify"]["all_ok"] == true);
  const std::string u = rj["u"].get<std::string>();
  const std::string v = rj["v"].get<std::string>();

  const auto verify = run_tool("pattern verify --file " + path + " --u " + u + " --v " + v);
  REQUIRE(verify.exit_code == 0);
  CHECK(json::parse(verify.out)["all_ok"] == true);

  const auto brute = run_tool("pattern brute --file " + path + " --bound 2000");
  REQUIRE(brute.exit_code == 0);
}

TEST_CASE("unreadable pattern file fails with exit 1") {
  const auto res = run_tool("pattern check --file /tmp/gcdb_no_such_file.bp");
  CHECK(res.exit_code == 1);
}

TEST_CASE("corollary discrepancies exit with code 2") {
  const auto sq = run_tool("pattern corollary-square --N 2 --b 2");
  CHECK(sq.exit_code == 2);
  const json j = json::parse(sq.out);
  CHECK(j["realizable"] == true);
  CHECK(j["stated_condition"] == false);
  CHECK(j["discrepancy_vs_stated"] == true);

  const auto bd = run_tool("pattern corollary-boundary --M 4 --N 4 --b 2");
  CHECK(bd.exit_code == 2);
  const json bj = json::parse(bd.out);
  CHECK(bj["realizable"] == false);
  CHECK(bj["witness_prime"] == 2);

  // agreeing case exits 0
  const auto ok = run_tool("pattern corollary-boundary --M 3 --N 3 --b 1");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("set-density through the CLI uses the truncation flag") {
  const auto res = run_tool("density --b 1 --set even --N 300 --trunc-K 20000");
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(res.out);
  CHECK(j["op"] == "set_density");
  CHECK(std::abs(j["target"].get<double>() - 0.25) < 1e-3);
  CHECK(std::abs(j["estimate"].get<double>() - 0.25) < 0.01);
}

TEST_CASE("component dumps emit parsable PBM/PGM") {
  const auto res = run_tool(
      "graph components --b 1 --N 12 --dump-visibility-pbm /tmp/gcdb_vis.pbm "
      "--dump-labels-pgm /tmp/gcdb_lbl.pgm");
  REQUIRE(res.exit_code == 0);
  std::ifstream pbm("/tmp/gcdb_vis.pbm");
  std::string magic;
  int w = 0, h = 0;
  pbm >> magic >> w >> h;
  CHECK(magic == "P1");
  CHECK(w == 12);
  CHECK(h == 12);
  int bit = -1, count = 0, ones = 0;
  while (pbm >> bit) {
    REQUIRE((bit == 0 || bit == 1));
    ++count;
    ones += bit;
  }
  CHECK(count == 144);
  const json j = json::parse(res.out);
  CHECK(j["visible"].get<int>() == ones);

  std::ifstream pgm("/tmp/gcdb_lbl.pgm");
  int maxval = 0;
  pgm >> magic >> w >> h >> maxval;
  CHECK(magic == "P2");
  CHECK(maxval >= 1);
}

TEST_CASE("graph lonesome scan emits ring gcds when found") {
  const auto res = run_tool("graph lonesome --b 1 --N 200 --strategy scan");
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(res.out);
  if (j["found"] == true) {
    REQUIRE(j["ring"].size() == 8);
    for (const auto& cell : j["ring"]) CHECK(cell["gcd_b"].get<long long>() > 1);
  }
}
