#include "anisonet/io.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "anisonet/errors.hpp"
#include "anisonet/thomson.hpp"

#ifndef ANISONET_VERSION
#define ANISONET_VERSION "0.0.0"
#endif

namespace anisonet::io {

using gain::GainPattern;

namespace {

double number(const json& j, const std::string& key, const std::string& field) {
  if (!j.contains(key)) throw ConfigError(field + "." + key, "missing");
  if (!j[key].is_number()) throw ConfigError(field + "." + key, "expected a number");
  return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double fallback, const std::string& field) {
  return j.contains(key) ? number(j, key, field) : fallback;
}

/// Re-raises DomainError from a factory as a ConfigError naming the field.
template <class F>
auto checked(const std::string& field, F&& make) {
  try {
    return make();
  } catch (const DomainError& e) {
    throw ConfigError(field, e.what());
  }
}

}  // namespace

json parse_json(const std::string& text, const std::string& field) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(field, std::string("malformed JSON: ") + e.what());
  }
}

json pattern_to_json(const GainPattern& pattern) {
  json j;
  switch (pattern.kind()) {
    case gain::Kind::isotropic: j["type"] = "isotropic"; break;
    case gain::Kind::cardioid:
      j["type"] = "cardioid";
      j["epsilon"] = std::get<gain::Cardioid>(pattern.shape()).epsilon;
      break;
    case gain::Kind::donut:
      j["type"] = "donut";
      j["m"] = std::get<gain::Donut>(pattern.shape()).m;
      break;
    case gain::Kind::narrow:
      j["type"] = "narrow";
      j["lambda"] = std::get<gain::NarrowLobe>(pattern.shape()).lambda;
      break;
    case gain::Kind::sector:
      j["type"] = "sector";
      j["nu"] = std::get<gain::Sector>(pattern.shape()).nu;
      break;
    case gain::Kind::multilobe: {
      const auto& ml = std::get<gain::MultiLobe>(pattern.shape());
      j["type"] = "multilobe";
      j["lambda"] = ml.lambda;
      j["profile"] = ml.profile == gain::LobeProfile::cosine ? "cosine" : "sectorized";
      json dirs = json::array();
      for (const Vec3& v : ml.directions.vectors()) dirs.push_back({v.x, v.y, v.z});
      j["directions"] = dirs;
      break;
    }
  }
  return j;
}

GainPattern pattern_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected a JSON object");
  if (!j.contains("type") || !j["type"].is_string()) throw ConfigError(field + ".type", "missing or not a string");
  const std::string type = j["type"].get<std::string>();
  if (type == "isotropic") return GainPattern::isotropic();
  if (type == "cardioid") {
    const double e = number(j, "epsilon", field);
    return checked(field + ".epsilon", [&] { return GainPattern::cardioid(e); });
  }
  if (type == "donut") {
    const double m = number(j, "m", field);
    return checked(field + ".m", [&] { return GainPattern::donut(m); });
  }
  if (type == "narrow") {
    const double l = number(j, "lambda", field);
    return checked(field + ".lambda", [&] { return GainPattern::narrow(l); });
  }
  if (type == "sector") {
    const double nu = number(j, "nu", field);
    return checked(field + ".nu", [&] { return GainPattern::sector(nu); });
  }
  if (type == "multilobe") {
    const double lambda = number(j, "lambda", field);
    gain::LobeProfile profile = gain::LobeProfile::cosine;
    if (j.contains("profile")) {
      const json& p = j["profile"];
      if (p == "cosine") profile = gain::LobeProfile::cosine;
      else if (p == "sectorized") profile = gain::LobeProfile::sectorized;
      else throw ConfigError(field + ".profile", "expected \"cosine\" or \"sectorized\"");
    }
    gain::OrientationSet dirs;
    if (j.contains("directions")) {
      const json& d = j["directions"];
      if (!d.is_array() || d.empty()) throw ConfigError(field + ".directions", "expected a non-empty array");
      std::vector<Vec3> v;
      for (const json& e : d) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number() || !e[1].is_number() || !e[2].is_number())
          throw ConfigError(field + ".directions", "each entry must be [x, y, z]");
        v.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
      }
      dirs = checked(field + ".directions", [&] { return gain::OrientationSet(std::move(v)); });
    } else if (j.contains("n")) {
      if (!j["n"].is_number_integer()) throw ConfigError(field + ".n", "expected an integer");
      const int n = j["n"].get<int>();
      if (n == 1) dirs = gain::OrientationSet({{0.0, 0.0, 1.0}});
      else dirs = checked(field + ".n", [&] { return thomson::thomson_points(n); });
    } else {
      throw ConfigError(field + ".directions", "missing (give directions or n)");
    }
    return checked(field, [&] { return GainPattern::multilobe(lambda, dirs, profile); });
  }
  throw ConfigError(field + ".type", "unknown pattern type '" + type + "'");
}

json model_to_json(const analytic::PathLossModel& model) { return {{"eta", model.eta}, {"beta", model.beta}}; }

analytic::PathLossModel model_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected a JSON object");
  analytic::PathLossModel m{number_or(j, "eta", 2.0, field), number_or(j, "beta", 1.0, field)};
  if (!(m.eta > 0.0)) throw ConfigError(field + ".eta", "must be > 0");
  if (!(m.beta > 0.0)) throw ConfigError(field + ".beta", "must be > 0");
  return m;
}

json domain_to_json(const boundary::Domain& domain) {
  json lengths = json::array();
  for (int i = 0; i < domain.dimension(); ++i) lengths.push_back(domain.lengths[i]);
  return {{"kind", domain.kind == boundary::Domain::Kind::cuboid ? "cuboid" : "square2d"},
          {"lengths", lengths},
          {"periodic", domain.periodic}};
}

boundary::Domain domain_from_json(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected a JSON object");
  const std::string kind = j.value("kind", std::string("cuboid"));
  const bool periodic = j.value("periodic", false);
  std::vector<double> l;
  if (j.contains("side")) {
    const double s = number(j, "side", field);
    l = {s, s, s};
  } else if (j.contains("lengths") && j["lengths"].is_array()) {
    for (const json& e : j["lengths"]) {
      if (!e.is_number()) throw ConfigError(field + ".lengths", "expected numbers");
      l.push_back(e.get<double>());
    }
  } else {
    throw ConfigError(field + ".lengths", "missing (give lengths or side)");
  }
  if (kind == "cuboid") {
    if (l.size() != 3) throw ConfigError(field + ".lengths", "a cuboid needs three lengths");
    return checked(field + ".lengths", [&] { return boundary::Domain::cuboid(l[0], l[1], l[2], periodic); });
  }
  if (kind == "square2d") {
    if (l.size() < 2 || l[0] != l[1]) throw ConfigError(field + ".lengths", "a square needs two equal lengths");
    return checked(field + ".lengths", [&] { return boundary::Domain::square(l[0]); });
  }
  throw ConfigError(field + ".kind", "unknown domain kind '" + kind + "'");
}

json sim_config_to_json(const mcsim::SimConfig& c) {
  return {{"domain", domain_to_json(c.domain)},
          {"nodes", c.nodes},
          {"model", model_to_json(c.model)},
          {"pattern_tx", pattern_to_json(c.pattern_tx)},
          {"pattern_rx", pattern_to_json(c.pattern_rx)},
          {"trials", c.trials},
          {"master_seed", c.master_seed},
          {"probability_floor", c.probability_floor}};
}

mcsim::SimConfig sim_config_from_json(const json& j, const mcsim::SimConfig& base) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  mcsim::SimConfig c = base;
  if (j.contains("domain")) c.domain = domain_from_json(j["domain"]);
  if (j.contains("model")) c.model = model_from_json(j["model"]);
  if (j.contains("pattern")) c.pattern_tx = c.pattern_rx = pattern_from_json(j["pattern"]);
  if (j.contains("pattern_tx")) c.pattern_tx = pattern_from_json(j["pattern_tx"], "pattern_tx");
  if (j.contains("pattern_rx")) c.pattern_rx = pattern_from_json(j["pattern_rx"], "pattern_rx");
  auto integer = [&](const char* key, auto& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) throw ConfigError(key, "expected an integer");
    out = j[key].get<std::decay_t<decltype(out)>>();
  };
  integer("nodes", c.nodes);
  integer("trials", c.trials);
  integer("master_seed", c.master_seed);
  if (j.contains("density")) {
    const double rho = number(j, "density", "config");
    if (!(rho > 0.0)) throw ConfigError("density", "must be > 0");
    c.nodes = static_cast<int>(std::lround(rho * c.domain.volume()));
  }
  c.probability_floor = number_or(j, "probability_floor", c.probability_floor, "config");
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw ConfigError("config", e.what());
  }
  return c;
}

json RunManifest::to_json() const {
  return {{"command", command}, {"config", config}, {"version", version}, {"timestamp", timestamp}};
}

RunManifest RunManifest::from_json(const json& j) {
  if (!j.is_object() || !j.contains("command") || !j.contains("config"))
    throw ConfigError("manifest", "expected an object with command and config");
  RunManifest m;
  m.command = j["command"].get<std::string>();
  m.config = j["config"];
  m.version = j.value("version", std::string());
  m.timestamp = j.value("timestamp", std::string());
  return m;
}

std::string library_version() { return ANISONET_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_thomson_fixture(std::ostream& out, const gain::OrientationSet& points) {
  out << points.size() << '\n' << std::setprecision(12);
  for (const Vec3& v : points.vectors()) out << v.x << ' ' << v.y << ' ' << v.z << '\n';
}

gain::OrientationSet read_thomson_fixture(std::istream& in) {
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw ConfigError("fixture", "first line must be a positive count");
  std::vector<Vec3> v(n);
  for (Vec3& p : v)
    if (!(in >> p.x >> p.y >> p.z)) throw ConfigError("fixture", "expected " + std::to_string(n) + " x y z lines");
  return checked("fixture", [&] { return gain::OrientationSet::from_unnormalized(std::move(v)); });
}

}  // namespace anisonet::io
