#include "anisonet/mcsim.hpp"

#include <algorithm>
#include <cmath>

#include "anisonet/disjoint_set.hpp"
#include "anisonet/errors.hpp"
#include "anisonet/parallel.hpp"
#include "anisonet/rng.hpp"

namespace anisonet::mcsim {

namespace {

constexpr std::uint64_t kPlacementTag = 0x51ace;
constexpr std::uint64_t kLinkTag = 0x11c4;

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

/// Standard error of the mean from the sample variance; 0 for a single trial.
double standard_error(const std::vector<double>& v, double m) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace

void SimConfig::validate() const {
  domain.validate();
  if (domain.kind != Domain::Kind::cuboid) throw DomainError("SimConfig: the simulator needs a 3D cuboid domain");
  if (nodes < 2) throw DomainError("SimConfig: nodes must be >= 2");
  if (trials < 1) throw DomainError("SimConfig: trials must be >= 1");
  if (!(probability_floor >= 0.0 && probability_floor < 1.0))
    throw DomainError("SimConfig: probability_floor must lie in [0, 1)");
  model.validate();
}

NetworkSample sample_network(const SimConfig& config, std::uint64_t trial_index) {
  config.validate();
  const bool haar = !config.pattern_tx.rotationally_symmetric() || !config.pattern_rx.rotationally_symmetric();
  NetworkSample s;
  s.positions.resize(config.nodes);
  s.rotations.resize(config.nodes);
  for (int i = 0; i < config.nodes; ++i) {
    CounterRng rng = CounterRng::stream(config.master_seed, {trial_index, kPlacementTag, static_cast<std::uint64_t>(i)});
    const auto& l = config.domain.lengths;
    s.positions[i] = {rng.uniform(0.0, l[0]), rng.uniform(0.0, l[1]), rng.uniform(0.0, l[2])};
    s.rotations[i] = haar ? rng.rotation() : frame_from_boresight(rng.unit_vector());
  }
  return s;
}

Vec3 displacement(const Domain& domain, const Vec3& from, const Vec3& to) {
  Vec3 d = to - from;
  if (!domain.periodic) return d;
  const auto& l = domain.lengths;
  d.x -= l[0] * std::round(d.x / l[0]);
  d.y -= l[1] * std::round(d.y / l[1]);
  d.z -= l[2] * std::round(d.z / l[2]);
  return d;
}

double oriented_gain(const GainPattern& pattern, const Mat3& rotation, const Vec3& direction) {
  if (pattern.rotationally_symmetric()) {
    const double c = std::clamp(dot(rotation.column(2), direction), -1.0, 1.0);
    return gain::polar_gain(pattern, std::acos(c));
  }
  return gain::gain_at(pattern, rotation.transposed() * direction);
}

namespace {

double pair_probability(const NetworkSample& net, std::size_t i, std::size_t j, const SimConfig& config,
                        double max_product) {
  const Vec3 d = displacement(config.domain, net.positions[i], net.positions[j]);
  const double r = norm(d);
  if (r == 0.0) return 1.0;
  const double attenuation = config.model.beta * std::pow(r, config.model.eta);
  if (max_product > 0.0 && std::exp(-attenuation / max_product) < config.probability_floor) return 0.0;
  const Vec3 u = (1.0 / r) * d;
  const double gg = oriented_gain(config.pattern_tx, net.rotations[i], u) *
                    oriented_gain(config.pattern_rx, net.rotations[j], -u);
  if (!(gg > 0.0)) return 0.0;
  return std::exp(-attenuation / gg);
}

}  // namespace

double link_probability(const NetworkSample& network, std::size_t i, std::size_t j, const SimConfig& config) {
  if (i == j) throw DomainError("link_probability: i and j must differ");
  return pair_probability(network, i, j, config, 0.0);
}

AdjacencyGraph sample_graph(const NetworkSample& network, const SimConfig& config, std::uint64_t trial_index) {
  const int n = static_cast<int>(network.positions.size());
  const double max_product = gain::max_gain(config.pattern_tx) * gain::max_gain(config.pattern_rx);
  AdjacencyGraph g;
  g.nodes = n;
  for (int i = 0; i < n; ++i) {
    CounterRng rng = CounterRng::stream(config.master_seed, {trial_index, kLinkTag, static_cast<std::uint64_t>(i)});
    for (int j = i + 1; j < n; ++j) {
      const double u = rng.uniform();
      const double p = pair_probability(network, i, j, config, max_product);
      if (u < p) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

ConnectivityReport analyze(const AdjacencyGraph& graph) {
  if (graph.nodes < 1) throw DomainError("analyze: empty graph");
  std::vector<int> degree(graph.nodes, 0);
  DisjointSet components(graph.nodes);
  for (const auto& [a, b] : graph.edges) {
    if (a == b || a < 0 || b < 0 || a >= graph.nodes || b >= graph.nodes)
      throw DomainError("analyze: invalid edge");
    ++degree[a];
    ++degree[b];
    components.unite(a, b);
  }
  ConnectivityReport r;
  const int kmax = *std::max_element(degree.begin(), degree.end());
  r.degree_histogram.assign(kmax + 1, 0);
  for (int k : degree) ++r.degree_histogram[k];
  r.mean_degree = 2.0 * static_cast<double>(graph.edges.size()) / graph.nodes;
  r.isolated_fraction = static_cast<double>(r.degree_histogram[0]) / graph.nodes;
  r.components = components.components();
  r.fully_connected = r.components == 1;
  return r;
}

std::vector<double> EnsembleReport::degree_distribution() const {
  std::uint64_t total = 0;
  for (auto c : degree_histogram) total += c;
  std::vector<double> p(degree_histogram.size(), 0.0);
  if (total == 0) return p;
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = static_cast<double>(degree_histogram[k]) / total;
  return p;
}

EnsembleReport run_ensemble(const SimConfig& config) {
  config.validate();
  struct Trial {
    ConnectivityReport report;
    std::size_t links = 0;
  };
  std::vector<Trial> trials(config.trials);
  parallel_for(trials.size(), [&](std::size_t t) {
    const NetworkSample net = sample_network(config, t);
    const AdjacencyGraph g = sample_graph(net, config, t);
    trials[t] = {analyze(g), g.edges.size()};
  });

  EnsembleReport out;
  out.trials = config.trials;
  out.nodes = config.nodes;
  out.density = config.density();
  const double pairs = 0.5 * config.nodes * (config.nodes - 1.0);
  std::vector<double> degree, isolated, connected, frequency;
  for (const Trial& t : trials) {
    degree.push_back(t.report.mean_degree);
    isolated.push_back(t.report.isolated_fraction);
    connected.push_back(t.report.fully_connected ? 1.0 : 0.0);
    frequency.push_back(static_cast<double>(t.links) / pairs);
    if (out.degree_histogram.size() < t.report.degree_histogram.size())
      out.degree_histogram.resize(t.report.degree_histogram.size(), 0);
    for (std::size_t k = 0; k < t.report.degree_histogram.size(); ++k)
      out.degree_histogram[k] += t.report.degree_histogram[k];
  }
  out.mean_degree = mean(degree);
  out.mean_degree_stderr = standard_error(degree, out.mean_degree);
  out.isolated_fraction = mean(isolated);
  out.isolated_fraction_stderr = standard_error(isolated, out.isolated_fraction);
  out.pfc = mean(connected);
  out.pfc_stderr = standard_error(connected, out.pfc);
  out.pair_link_frequency = mean(frequency);
  out.pair_link_frequency_stderr = standard_error(frequency, out.pair_link_frequency);
  return out;
}

std::vector<SweepRow> sweep_eta(const SimConfig& config, const std::vector<double>& eta_values,
                                const std::vector<GainPattern>& patterns) {
  if (eta_values.empty()) throw DomainError("sweep_eta: eta list is empty");
  if (patterns.empty()) throw DomainError("sweep_eta: pattern list is empty");
  std::vector<SweepRow> rows;
  for (double eta : eta_values) {
    for (const GainPattern& pattern : patterns) {
      SimConfig c = config;
      c.model.eta = eta;
      c.pattern_tx = pattern;
      c.pattern_rx = pattern;
      const EnsembleReport report = run_ensemble(c);
      const double rho = c.density();
      const double mass = analytic::homogeneous_mass(pattern, pattern, c.model).mass;
      rows.push_back({eta, gain::describe(pattern), report.mean_degree / rho, report.mean_degree_stderr / rho, mass});
    }
  }
  return rows;
}

}  // namespace anisonet::mcsim
