#include "anisonet/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "anisonet/analytic.hpp"
#include "anisonet/boundary.hpp"
#include "anisonet/errors.hpp"
#include "anisonet/io.hpp"
#include "anisonet/mcsim.hpp"
#include "anisonet/thomson.hpp"

namespace anisonet::cli {

using io::json;
using specfn::pi;

std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(9) << x;
  return os.str();
}

namespace {

constexpr const char* kManifestPrefix = "# manifest: ";

/// Reads --config: inline JSON, a JSON file (plain config or manifest), or a CSV produced by this tool.
json load_config(const std::string& source, const std::string& command) {
  std::string text = source;
  std::ifstream file(source);
  if (file) {
    std::ostringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  } else if (source.empty() || (source.front() != '{' && source.front() != '[')) {
    throw ConfigError("config", "cannot open '" + source + "'");
  }
  const std::string prefix = kManifestPrefix;
  if (text.rfind(prefix, 0) == 0) text = text.substr(prefix.size(), text.find('\n') - prefix.size());
  json j = io::parse_json(text, "config");
  if (j.is_object() && j.contains("command") && j.contains("config")) {
    const io::RunManifest m = io::RunManifest::from_json(j);
    if (m.command != command)
      throw ConfigError("config", "manifest was written by '" + m.command + "', not '" + command + "'");
    return m.config;
  }
  return j;
}

/// Command-line parameters mirrored into the resolved configuration of the manifest.
class ParamSet {
 public:
  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& key, T& var, const std::string& desc) {
    CLI::Option* opt = app->add_option("--" + key, var, desc)->capture_default_str();
    params_.push_back({key, opt,
                       [&var, key](const json& j) {
                         try {
                           var = j.get<T>();
                         } catch (const json::exception&) {
                           throw ConfigError(key, "wrong type in config");
                         }
                       },
                       [&var] { return json(var); }});
    return opt;
  }

  /// A parameter given on the command line as JSON text; stored as parsed JSON in the manifest.
  CLI::Option* add_json(CLI::App* app, const std::string& key, std::string& var, const std::string& desc) {
    CLI::Option* opt = app->add_option("--" + key, var, desc);
    params_.push_back({key, opt, [&var](const json& j) { var = j.is_string() ? j.get<std::string>() : j.dump(); },
                       [&var, key] { return var.empty() ? json() : io::parse_json(var, key); }});
    return opt;
  }

  /// Fills parameters not given on the command line from `config`.
  void apply(const json& config) {
    if (!config.is_object()) throw ConfigError("config", "expected a JSON object");
    for (auto it = config.begin(); it != config.end(); ++it) {
      const Param* p = find(it.key());
      if (!p) throw ConfigError(it.key(), "unknown configuration key");
      if (p->opt->count() == 0) p->set(it.value());
    }
  }

  json resolved() const {
    json j = json::object();
    for (const Param& p : params_) j[p.key] = p.get();
    return j;
  }

 private:
  struct Param {
    std::string key;
    CLI::Option* opt;
    std::function<void(const json&)> set;
    std::function<json()> get;
  };
  const Param* find(const std::string& key) const {
    for (const Param& p : params_)
      if (p.key == key) return &p;
    return nullptr;
  }
  std::vector<Param> params_;
};

void write_manifest(std::ostream& out, const std::string& command, const json& config) {
  const io::RunManifest m{command, config, io::library_version(), io::utc_timestamp()};
  out << kManifestPrefix << m.to_json().dump() << '\n';
}

/// Writes to --out when given, else to the console stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& console) : stream_(&console) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("out", "cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::vector<gain::GainPattern> patterns_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field, "expected a non-empty JSON array of patterns");
  std::vector<gain::GainPattern> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(io::pattern_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

json patterns_to_json(const std::vector<gain::GainPattern>& patterns) {
  json j = json::array();
  for (const auto& p : patterns) j.push_back(io::pattern_to_json(p));
  return j;
}

std::vector<double> eta_grid(double lo, double hi, int steps, const std::string& field) {
  if (steps < 1) throw ConfigError(field + "steps", "must be >= 1");
  if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError(field + "min", "need 0 < eta-min <= eta-max");
  if (steps == 1) return {lo};
  std::vector<double> v;
  for (int i = 0; i < steps; ++i) v.push_back(lo + (hi - lo) * i / (steps - 1));
  return v;
}

constexpr const char* kDefaultPatterns =
    R"([{"type":"isotropic"},{"type":"cardioid","epsilon":1},{"type":"donut","m":8},{"type":"narrow","lambda":2}])";

// ---------------------------------------------------------------------------------------------

struct ValidateGains {
  std::string pattern = R"({"type":"isotropic"})";
  ParamSet params;
  void attach(CLI::App* app) { params.add_json(app, "pattern", pattern, "pattern JSON"); }
  int run(std::ostream& out) {
    const auto p = io::pattern_from_json(io::parse_json(pattern, "pattern"));
    const double value = gain::verify_normalization(p);
    const double rel = std::fabs(value - 4.0 * pi) / (4.0 * pi);
    const bool ok = rel <= 1e-7;
    out << "pattern: " << gain::describe(p) << '\n'
        << "normalization: " << format_number(value) << '\n'
        << "4pi: " << format_number(4.0 * pi) << '\n'
        << "relative error: " << format_number(rel) << '\n'
        << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
  }
};

struct STable {
  double eta_min = 2.0, eta_max = 6.0;
  int steps = 9;
  std::string patterns = kDefaultPatterns;
  std::string out_path;
  ParamSet params;
  void attach(CLI::App* app) {
    params.add(app, "eta-min", eta_min, "smallest path loss exponent");
    params.add(app, "eta-max", eta_max, "largest path loss exponent");
    params.add(app, "steps", steps, "number of eta values");
    params.add_json(app, "patterns", patterns, "JSON list of patterns");
    app->add_option("--out", out_path, "CSV output file (default stdout)");
  }
  int run(std::ostream& console) {
    const auto list = patterns_from_json(io::parse_json(patterns, "patterns"), "patterns");
    const auto etas = eta_grid(eta_min, eta_max, steps, "eta-");
    json config = params.resolved();
    config["patterns"] = patterns_to_json(list);
    std::ostringstream table;
    for (double eta : etas)
      for (const auto& p : list) {
        const auto closed = gain::s_functional_closed(p, eta);
        table << format_number(eta) << ',' << gain::describe(p) << ',' << (closed ? format_number(*closed) : "")
              << ',' << format_number(gain::s_functional_quadrature(p, eta)) << '\n';
      }
    Sink sink(out_path, console);
    write_manifest(*sink, "s-table", config);
    *sink << kSTableHeader << '\n' << table.str();
    return 0;
  }
};

struct Mass {
  std::string pattern_tx = R"({"type":"isotropic"})", pattern_rx = R"({"type":"isotropic"})";
  double eta = 2.0, beta = 1.0, rho = 0.1;
  int nodes = 100;
  ParamSet params;
  void attach(CLI::App* app) {
    params.add_json(app, "pattern-tx", pattern_tx, "transmit pattern JSON");
    params.add_json(app, "pattern-rx", pattern_rx, "receive pattern JSON");
    params.add(app, "eta", eta, "path loss exponent");
    params.add(app, "beta", beta, "attenuation constant");
    params.add(app, "rho", rho, "node density");
    params.add(app, "nodes", nodes, "node count N");
  }
  int run(std::ostream& out) {
    const auto tx = io::pattern_from_json(io::parse_json(pattern_tx, "pattern-tx"), "pattern-tx");
    const auto rx = io::pattern_from_json(io::parse_json(pattern_rx, "pattern-rx"), "pattern-rx");
    const analytic::PathLossModel model = io::model_from_json(json{{"eta", eta}, {"beta", beta}});
    if (!(rho > 0.0)) throw ConfigError("rho", "must be > 0");
    if (nodes < 2) throw ConfigError("nodes", "must be >= 2");
    const auto m = analytic::homogeneous_mass(tx, rx, model);
    const auto deg = analytic::mean_degree_and_pair_probability(m, rho, nodes / rho, nodes);
    const auto pfc = analytic::pfc_homogeneous(nodes, rho, m.mass);
    write_manifest(out, "mass", params.resolved());
    out << "M: " << format_number(m.mass) << '\n'
        << "method: " << (m.method == analytic::Method::closed ? "closed" : "quadrature") << '\n'
        << "mu: " << format_number(deg.mean_degree) << '\n'
        << "p2: " << format_number(deg.pair_probability) << '\n'
        << "(N-1)p2: " << format_number(deg.finite_mean_degree) << '\n'
        << "P_fc: " << format_number(pfc.clamped) << '\n'
        << "P_fc raw: " << format_number(pfc.raw) << '\n';
    return 0;
  }
};

/// Shared by simulate and sweep-eta: a simulation config plus the sweep axes.
struct Simulation {
  std::string config_source;
  std::string out_path;
  int trials = 0;
  std::int64_t seed = -1;
  bool sweep = false;
  void attach(CLI::App* app, bool is_sweep) {
    sweep = is_sweep;
    app->add_option("--config", config_source, "config JSON (file or inline), manifest, or CSV from a previous run");
    app->add_option("--out", out_path, "CSV output file (default stdout)");
    app->add_option("--trials", trials, "override the number of trials");
    app->add_option("--seed", seed, "override the master seed");
  }

  static mcsim::SimConfig sweep_defaults() {
    mcsim::SimConfig c;
    c.domain = boundary::Domain::cube(10.0);
    c.nodes = 100;
    c.model = {2.0, 10.0};
    c.trials = 100;
    c.master_seed = 1;
    return c;
  }

  int run(std::ostream& console) {
    const std::string command = sweep ? "sweep-eta" : "simulate";
    json j = config_source.empty() ? json::object() : load_config(config_source, command);
    if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
    if (trials > 0) j["trials"] = trials;
    if (seed >= 0) j["master_seed"] = seed;

    std::vector<double> etas;
    std::vector<gain::GainPattern> patterns;
    json sim = j;
    for (const char* k : {"eta_values", "eta_min", "eta_max", "eta_steps", "patterns"}) sim.erase(k);
    mcsim::SimConfig config = io::sim_config_from_json(sim, sweep_defaults());
    json resolved = io::sim_config_to_json(config);
    std::vector<mcsim::SweepRow> rows;

    if (sweep) {
      if (j.contains("eta_values")) {
        if (!j["eta_values"].is_array() || j["eta_values"].empty())
          throw ConfigError("eta_values", "expected a non-empty array");
        for (const json& e : j["eta_values"]) {
          if (!e.is_number() || !(e.get<double>() > 0.0)) throw ConfigError("eta_values", "entries must be > 0");
          etas.push_back(e.get<double>());
        }
      } else {
        etas = eta_grid(j.value("eta_min", 2.0), j.value("eta_max", 6.0), j.value("eta_steps", 9), "eta_");
      }
      patterns = patterns_from_json(j.contains("patterns") ? j["patterns"] : json::parse(kDefaultPatterns), "patterns");
      resolved.erase("pattern_tx");
      resolved.erase("pattern_rx");
      resolved["eta_values"] = etas;
      resolved["patterns"] = patterns_to_json(patterns);
      rows = mcsim::sweep_eta(config, etas, patterns);
    } else {
      const auto report = mcsim::run_ensemble(config);
      const double rho = config.density();
      std::string label = gain::describe(config.pattern_tx);
      if (io::pattern_to_json(config.pattern_tx) != io::pattern_to_json(config.pattern_rx))
        label += "/" + gain::describe(config.pattern_rx);
      rows.push_back({config.model.eta, label, report.mean_degree / rho, report.mean_degree_stderr / rho,
                      analytic::homogeneous_mass(config.pattern_tx, config.pattern_rx, config.model).mass});
    }

    Sink sink(out_path, console);
    write_manifest(*sink, command, resolved);
    *sink << kSweepHeader << '\n';
    for (const auto& r : rows)
      *sink << format_number(r.eta) << ',' << r.pattern << ',' << format_number(r.mean_degree_over_rho) << ','
            << format_number(r.standard_error) << ',' << format_number(r.analytic_mass) << '\n';
    return 0;
  }
};

struct CornerMin {
  std::string pattern = R"({"type":"cardioid","epsilon":1})";
  std::string pattern_j;
  double eta = 2.0, beta = 1.0, truncation = 0.0, polar_step = 10.0, azimuth_step = 10.0;
  ParamSet params;
  void attach(CLI::App* app) {
    params.add_json(app, "pattern", pattern, "pattern of the corner node (rotationally symmetric)");
    params.add_json(app, "pattern-j", pattern_j, "partner pattern (default: same as --pattern)");
    params.add(app, "eta", eta, "path loss exponent");
    params.add(app, "beta", beta, "attenuation constant");
    params.add(app, "truncation", truncation, "cube side for a truncated radial integral; 0 = untruncated");
    params.add(app, "polar-step", polar_step, "orientation grid polar step in degrees");
    params.add(app, "azimuth-step", azimuth_step, "orientation grid azimuth step in degrees");
  }
  int run(std::ostream& out) {
    const auto pi_pattern = io::pattern_from_json(io::parse_json(pattern, "pattern"));
    const auto pj = pattern_j.empty() ? pi_pattern
                                      : io::pattern_from_json(io::parse_json(pattern_j, "pattern-j"), "pattern-j");
    if (!pi_pattern.rotationally_symmetric()) throw ConfigError("pattern", "must be rotationally symmetric");
    if (!pj.rotationally_symmetric()) throw ConfigError("pattern-j", "must be rotationally symmetric");
    const analytic::PathLossModel model = io::model_from_json(json{{"eta", eta}, {"beta", beta}});
    if (truncation < 0.0) throw ConfigError("truncation", "must be >= 0");
    if (!(polar_step > 0.0)) throw ConfigError("polar-step", "must be > 0");
    if (!(azimuth_step > 0.0)) throw ConfigError("azimuth-step", "must be > 0");
    const boundary::OrientationGrid grid{polar_step * pi / 180.0, azimuth_step * pi / 180.0};
    const auto best = boundary::min_corner_gain_integral(pi_pattern, eta, grid);
    const std::optional<double> side = truncation > 0.0 ? std::optional<double>(truncation) : std::nullopt;
    const double mass = boundary::corner_mass(pi_pattern, best.orientation, pj, model, side);
    write_manifest(out, "corner-min", params.resolved());
    const Vec3& v = best.orientation;
    out << "min I: " << format_number(best.value) << '\n'
        << "argmin orientation: " << format_number(v.x) << ' ' << format_number(v.y) << ' ' << format_number(v.z)
        << '\n'
        << "corner mass: " << format_number(mass) << (side ? " (truncated)" : " (untruncated)") << '\n';
    return 0;
  }
};

struct Multisector {
  int n = 6, n_min = 0, n_max = 0, restarts = 20;
  double lambda = 0.0, eta = 2.0, beta = 1.0, cube_side = 1.0, euler_step = 2.0;
  std::int64_t seed = 1;
  std::string out_path;
  ParamSet params;
  void attach(CLI::App* app) {
    params.add(app, "n", n, "number of lobes");
    params.add(app, "n-min", n_min, "first n of a range (overrides --n)");
    params.add(app, "n-max", n_max, "last n of a range");
    params.add(app, "lambda", lambda, "lobe parameter; 0 = sqrt(n pi)/3 for each n");
    params.add(app, "eta", eta, "path loss exponent");
    params.add(app, "beta", beta, "attenuation constant");
    params.add(app, "cube-side", cube_side, "cube side");
    params.add(app, "euler-step", euler_step, "Euler grid step in degrees");
    params.add(app, "restarts", restarts, "Thomson restarts");
    params.add(app, "seed", seed, "Thomson seed");
    app->add_option("--out", out_path, "also write a CSV table");
  }
  int run(std::ostream& out) {
    const analytic::PathLossModel model = io::model_from_json(json{{"eta", eta}, {"beta", beta}});
    if (!(cube_side > 0.0)) throw ConfigError("cube-side", "must be > 0");
    if (!(euler_step > 0.0)) throw ConfigError("euler-step", "must be > 0");
    if (seed < 0) throw ConfigError("seed", "must be >= 0");
    const int lo = n_min > 0 ? n_min : n;
    const int hi = n_min > 0 ? std::max(n_max, n_min) : n;
    if (lo < 2) throw ConfigError(n_min > 0 ? "n-min" : "n", "must be >= 2");
    for (int k = lo; k <= hi; ++k)
      if (lambda > 0.0 && lambda < std::sqrt(k * pi) / 3.0 * (1.0 - 1e-12))
        throw ConfigError("lambda", "lobes overlap for n = " + std::to_string(k) + "; need lambda >= sqrt(n pi)/3");

    std::unique_ptr<Sink> csv;
    if (!out_path.empty()) {
      csv = std::make_unique<Sink>(out_path, out);
      write_manifest(**csv, "multisector", params.resolved());
      **csv << kMultisectorHeader << '\n';
    }
    write_manifest(out, "multisector", params.resolved());
    for (int k = lo; k <= hi; ++k) {
      const double lam = lambda > 0.0 ? lambda : std::sqrt(k * pi) / 3.0;
      thomson::ThomsonOptions opts;
      opts.restarts = restarts;
      opts.seed = static_cast<std::uint64_t>(seed);
      const auto base = thomson::thomson_points(k, opts);
      const auto r = boundary::min_multisector_corner_mass(k, lam, model, cube_side, euler_step * pi / 180.0, base);
      out << "n=" << k << " lambda=" << format_number(lam) << " blind-spot: " << (r.blind_spot ? "yes" : "no")
          << ", min M_C = " << format_number(r.value) << " (margin " << format_number(r.avoidance_margin) << ")\n";
      if (csv)
        **csv << k << ',' << format_number(lam) << ',' << format_number(r.value) << ',' << (r.blind_spot ? 1 : 0)
              << ',' << format_number(r.avoidance_margin) << ',' << r.rotations << '\n';
    }
    return 0;
  }
};

struct Thomson {
  int n = 4, restarts = 20;
  double tol = 1e-8;
  std::int64_t seed = 1;
  std::string out_path;
  ParamSet params;
  void attach(CLI::App* app) {
    params.add(app, "n", n, "number of points");
    params.add(app, "restarts", restarts, "random restarts");
    params.add(app, "tol", tol, "gradient tolerance");
    params.add(app, "seed", seed, "master seed");
    app->add_option("--out", out_path, "fixture file to write");
  }
  int run(std::ostream& out) {
    if (n < 2) throw ConfigError("n", "must be >= 2");
    if (restarts < 1) throw ConfigError("restarts", "must be >= 1");
    if (!(tol > 0.0)) throw ConfigError("tol", "must be > 0");
    if (seed < 0) throw ConfigError("seed", "must be >= 0");
    thomson::ThomsonOptions opts;
    opts.restarts = restarts;
    opts.tol = tol;
    opts.seed = static_cast<std::uint64_t>(seed);
    const auto points = thomson::thomson_points(n, opts);
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw ConfigError("out", "cannot write '" + out_path + "'");
      io::write_thomson_fixture(f, points);
    }
    out << "energy: " << format_number(thomson::coulomb_energy(points)) << '\n'
        << "min separation (deg): " << format_number(points.min_separation() * 180.0 / pi) << '\n';
    return 0;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Connectivity of 3D ad hoc networks with anisotropic antennas", "anisonet"};
  app.set_version_flag("--version", io::library_version());
  app.require_subcommand(1);

  ValidateGains validate;
  STable stable;
  Mass mass;
  Simulation simulate, sweep;
  CornerMin corner;
  Multisector multi;
  Thomson thom;

  CLI::App* c_validate = app.add_subcommand("validate-gains", "check the 4pi normalization of a pattern");
  CLI::App* c_stable = app.add_subcommand("s-table", "CSV of S_eta[G], closed form and quadrature");
  CLI::App* c_mass = app.add_subcommand("mass", "connectivity mass, mean degree and P_fc");
  CLI::App* c_sim = app.add_subcommand("simulate", "Monte Carlo ensemble for one configuration");
  CLI::App* c_sweep = app.add_subcommand("sweep-eta", "Monte Carlo ensembles over eta and patterns");
  CLI::App* c_corner = app.add_subcommand("corner-min", "minimum corner integral and corner mass");
  CLI::App* c_multi = app.add_subcommand("multisector", "minimum multi-sector corner mass over rotations");
  CLI::App* c_thomson = app.add_subcommand("thomson", "minimum-energy points on the sphere");

  validate.attach(c_validate);
  stable.attach(c_stable);
  mass.attach(c_mass);
  simulate.attach(c_sim, false);
  sweep.attach(c_sweep, true);
  corner.attach(c_corner);
  multi.attach(c_multi);
  thom.attach(c_thomson);

  std::string config_source;
  for (CLI::App* cmd : {c_validate, c_stable, c_mass, c_corner, c_multi, c_thomson})
    cmd->add_option("--config", config_source, "config JSON (file or inline), manifest, or CSV from a previous run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    auto with_config = [&](CLI::App* cmd, ParamSet& set) {
      if (!config_source.empty()) set.apply(load_config(config_source, cmd->get_name()));
    };
    if (c_validate->parsed()) return with_config(c_validate, validate.params), validate.run(out);
    if (c_stable->parsed()) return with_config(c_stable, stable.params), stable.run(out);
    if (c_mass->parsed()) return with_config(c_mass, mass.params), mass.run(out);
    if (c_sim->parsed()) return simulate.run(out);
    if (c_sweep->parsed()) return sweep.run(out);
    if (c_corner->parsed()) return with_config(c_corner, corner.params), corner.run(out);
    if (c_multi->parsed()) return with_config(c_multi, multi.params), multi.run(out);
    if (c_thomson->parsed()) return with_config(c_thomson, thom.params), thom.run(out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"anisonet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace anisonet::cli
