#pragma once

// JSON and plain-text serialization of patterns, simulation configs, run manifests and Thomson fixtures.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "anisonet/mcsim.hpp"

namespace anisonet::io {

using json = nlohmann::ordered_json;

/// {"type": "isotropic"|"cardioid"|"donut"|"narrow"|"sector"|"multilobe", ...parameters}. Multi-lobe
/// patterns carry "lambda", "profile" ("cosine"|"sectorized") and either "directions" or "n", the
/// latter meaning a Thomson configuration generated with default options.
json pattern_to_json(const gain::GainPattern& pattern);
gain::GainPattern pattern_from_json(const json& j, const std::string& field = "pattern");

json model_to_json(const analytic::PathLossModel& model);
analytic::PathLossModel model_from_json(const json& j, const std::string& field = "model");

json domain_to_json(const boundary::Domain& domain);
boundary::Domain domain_from_json(const json& j, const std::string& field = "domain");

json sim_config_to_json(const mcsim::SimConfig& config);
/// Missing keys keep the defaults of `base`; "pattern" sets both tx and rx.
mcsim::SimConfig sim_config_from_json(const json& j, const mcsim::SimConfig& base = {});

/// Parses text as JSON, raising ConfigError(field) on syntax errors.
json parse_json(const std::string& text, const std::string& field);

struct RunManifest {
  std::string command;
  json config = json::object();
  std::string version;
  std::string timestamp;  // UTC, ISO 8601

  json to_json() const;
  static RunManifest from_json(const json& j);
  bool operator==(const RunManifest&) const = default;
};

std::string library_version();
std::string utc_timestamp();

/// First line "n", then one "x y z" line per vector with 12 significant digits.
void write_thomson_fixture(std::ostream& out, const gain::OrientationSet& points);
gain::OrientationSet read_thomson_fixture(std::istream& in);

}  // namespace anisonet::io
