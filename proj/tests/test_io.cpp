#include <doctest.h>

#include <sstream>

#include "anisonet/errors.hpp"
#include "anisonet/io.hpp"
#include "anisonet/thomson.hpp"

using namespace anisonet;
using namespace anisonet::io;
using gain::GainPattern;

TEST_CASE("pattern JSON round trip") {
  const GainPattern patterns[] = {GainPattern::isotropic(), GainPattern::cardioid(0.25), GainPattern::donut(7.5),
                                  GainPattern::narrow(2.5), GainPattern::sector(0.125),
                                  GainPattern::multilobe(2.0, thomson::thomson_points(3), gain::LobeProfile::sectorized)};
  for (const auto& p : patterns) {
    const json j = pattern_to_json(p);
    const GainPattern q = pattern_from_json(json::parse(j.dump()));
    CHECK(pattern_to_json(q) == j);
    CHECK(gain::describe(q) == gain::describe(p));
  }
  CHECK(pattern_to_json(GainPattern::cardioid(1.0)) == json::parse(R"({"type":"cardioid","epsilon":1.0})"));
}

TEST_CASE("multi-lobe patterns from a lobe count") {
  const auto p = pattern_from_json(json::parse(R"({"type":"multilobe","lambda":3,"n":6,"profile":"sectorized"})"));
  CHECK(std::get<gain::MultiLobe>(p.shape()).n() == 6);
}

TEST_CASE("pattern errors name the field") {
  auto field_of = [](const std::string& text) {
    try {
      pattern_from_json(json::parse(text), "pattern");
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("none");
  };
  CHECK(field_of(R"({"type":"cardioid"})") == "pattern.epsilon");
  CHECK(field_of(R"({"type":"cardioid","epsilon":2})") == "pattern.epsilon");
  CHECK(field_of(R"({"type":"cardioid","epsilon":"x"})") == "pattern.epsilon");
  CHECK(field_of(R"({"type":"spiral"})") == "pattern.type");
  CHECK(field_of(R"({"epsilon":1})") == "pattern.type");
  CHECK(field_of(R"({"type":"multilobe","lambda":2,"directions":[[1,0]]})") == "pattern.directions");
  CHECK(field_of(R"({"type":"multilobe","lambda":2,"directions":[[1,0,0]],"profile":"flat"})") == "pattern.profile");
  CHECK_THROWS_AS(parse_json("{oops", "config"), ConfigError);
}

TEST_CASE("simulation config round trip and defaults") {
  mcsim::SimConfig c;
  c.domain = boundary::Domain::cuboid(2, 3, 4, true);
  c.nodes = 77;
  c.model = {3.5, 0.25};
  c.pattern_tx = GainPattern::donut(3.0);
  c.pattern_rx = GainPattern::sector(0.5);
  c.trials = 12;
  c.master_seed = 1234567890123ULL;
  const json j = sim_config_to_json(c);
  const auto d = sim_config_from_json(json::parse(j.dump()));
  CHECK(sim_config_to_json(d) == j);

  const auto e = sim_config_from_json(json::parse(R"({"domain":{"side":10},"density":0.1})"));
  CHECK(e.nodes == 100);
  CHECK_THROWS_AS(sim_config_from_json(json::parse(R"({"nodes":1})")), ConfigError);
  CHECK_THROWS_AS(sim_config_from_json(json::parse(R"({"domain":{"lengths":[1,2]}})")), ConfigError);
  CHECK_THROWS_AS(sim_config_from_json(json::parse(R"({"model":{"eta":-2}})")), ConfigError);
}

TEST_CASE("manifest round trip") {
  RunManifest m{"sweep-eta", json::parse(R"({"a":[1,2.5],"b":{"c":"d"}})"), library_version(), utc_timestamp()};
  CHECK(RunManifest::from_json(json::parse(m.to_json().dump())) == m);
  CHECK(m.timestamp.size() == 20);
  CHECK_THROWS_AS(RunManifest::from_json(json::parse("[]")), ConfigError);
}

TEST_CASE("Thomson fixture format") {
  const auto pts = thomson::thomson_points(5);
  std::stringstream ss;
  write_thomson_fixture(ss, pts);
  std::string first;
  std::getline(ss, first);
  CHECK(first == "5");
  std::string line;
  std::getline(ss, line);
  ss.seekg(0);
  const auto back = read_thomson_fixture(ss);
  REQUIRE(back.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(norm(back[i] - pts[i]) < 1e-11);
  std::istringstream bad("3\n1 0 0\n0 1 0\n");
  CHECK_THROWS_AS(read_thomson_fixture(bad), ConfigError);
}
