#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "anisonet/cli.hpp"

using anisonet::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text, bool skip_comments) {
  std::vector<std::string> v;
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l))
    if (!(skip_comments && !l.empty() && l[0] == '#')) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("s-table with an isotropic pattern is all 2") {
  const auto r = call({"s-table", "--patterns", R"([{"type":"isotropic"}])", "--steps", "5"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out, true);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == anisonet::cli::kSTableHeader);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].substr(rows[i].find(',')) == ",isotropic,2,2");
  CHECK(r.out.rfind("# manifest: ", 0) == 0);
}

TEST_CASE("thomson prints the tetrahedron energy and writes a fixture") {
  const std::string path = "cli_thomson_fixture.txt";
  const auto r = call({"thomson", "--n", "4", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("energy: 3.67423") != std::string::npos);
  std::ifstream in(path);
  int n = 0;
  in >> n;
  CHECK(n == 4);
  std::remove(path.c_str());
}

TEST_CASE("multisector reports the blind spot for six lobes") {
  const auto r = call({"multisector", "--n", "6", "--lambda", "3.0699801", "--euler-step", "6"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("blind-spot: yes, min M_C = 0") != std::string::npos);
}

TEST_CASE("mass output") {
  const auto r = call({"mass", "--eta", "3", "--rho", "0.1", "--nodes", "100"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("M: 4.1887902\n") != std::string::npos);
  CHECK(r.out.find("mu: 0.41887902\n") != std::string::npos);
}

TEST_CASE("validate-gains and corner-min") {
  auto r = call({"validate-gains", "--pattern", R"({"type":"sector","nu":0.5})"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  r = call({"corner-min", "--pattern", R"({"type":"isotropic"})", "--eta", "3", "--truncation", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("corner mass: 0.427") != std::string::npos);
}

TEST_CASE("usage errors exit with 2 and name the field") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"mass", "--bogus", "1"}).code == 2);
  auto r = call({"mass", "--pattern-tx", "{not json"});
  CHECK(r.code == 2);
  CHECK(r.err.find("pattern-tx") != std::string::npos);
  r = call({"mass", "--pattern-tx", R"({"type":"cardioid","epsilon":3})"});
  CHECK(r.code == 2);
  CHECK(r.err.find("pattern-tx.epsilon") != std::string::npos);
  r = call({"mass", "--eta", "-1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("eta") != std::string::npos);
  r = call({"multisector", "--n", "30", "--lambda", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("lambda") != std::string::npos);
  CHECK(call({"thomson", "--n", "1"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("sweep-eta output reproduces from its own manifest") {
  const std::string config =
      R"({"domain":{"side":6,"periodic":true},"nodes":60,"model":{"beta":1},"trials":4,"master_seed":5,)"
      R"("eta_values":[2,3],"patterns":[{"type":"isotropic"},{"type":"donut","m":2}]})";
  const std::string path = "cli_sweep.csv";
  auto r = call({"sweep-eta", "--config", config, "--out", path});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  std::stringstream first;
  first << in.rdbuf();
  const auto rows = lines(first.str(), true);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == anisonet::cli::kSweepHeader);

  r = call({"sweep-eta", "--config", path});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out, true) == rows);
  std::remove(path.c_str());

  r = call({"simulate", "--config", R"({"domain":{"side":5,"periodic":true},"nodes":40,"trials":3})"});
  CHECK(r.code == 0);
  CHECK(lines(r.out, true).size() == 2);
  CHECK(call({"simulate", "--config", R"({"nodes":"many"})"}).code == 2);
  CHECK(call({"sweep-eta", "--config", "/nonexistent/file.json"}).code == 2);
}
