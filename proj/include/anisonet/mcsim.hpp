#pragma once

// Seeded Monte Carlo random graphs with soft, gain-dependent links.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "anisonet/analytic.hpp"
#include "anisonet/boundary.hpp"

namespace anisonet::mcsim {

using analytic::PathLossModel;
using boundary::Domain;
using gain::GainPattern;

struct SimConfig {
  Domain domain = Domain::cube(10.0);
  int nodes = 100;
  PathLossModel model;
  GainPattern pattern_tx;  // used at the lower-indexed node of every pair
  GainPattern pattern_rx;  // used at the higher-indexed node of every pair
  int trials = 100;
  std::uint64_t master_seed = 1;
  double probability_floor = 1e-12;  // pairs whose link probability cannot reach this are skipped

  void validate() const;
  double density() const { return nodes / domain.volume(); }
};

struct NetworkSample {
  std::vector<Vec3> positions;
  std::vector<Mat3> rotations;  // body frame -> world; third column is the boresight

  Vec3 boresight(std::size_t i) const { return rotations[i].column(2); }
};

/// Deterministic function of (master_seed, trial_index). Positions are uniform in the domain;
/// symmetric patterns get boresights uniform on the sphere, multi-lobe patterns Haar rotations.
NetworkSample sample_network(const SimConfig& config, std::uint64_t trial_index);

/// Displacement r_j - r_i, wrapped to the minimum image on periodic domains.
Vec3 displacement(const Domain& domain, const Vec3& from, const Vec3& to);

/// Gain of a pattern mounted with `rotation` toward the world direction `direction` (unit).
double oriented_gain(const GainPattern& pattern, const Mat3& rotation, const Vec3& direction);

/// exp(-beta r^eta / (G_i G_j)) with G_i = pattern_tx toward j and G_j = pattern_rx toward i; 1 at r = 0
/// and 0 when the gain product vanishes.
double link_probability(const NetworkSample& network, std::size_t i, std::size_t j, const SimConfig& config);

struct AdjacencyGraph {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted
};

/// One Bernoulli draw per unordered pair.
AdjacencyGraph sample_graph(const NetworkSample& network, const SimConfig& config, std::uint64_t trial_index);

struct ConnectivityReport {
  double mean_degree = 0.0;
  std::vector<std::uint64_t> degree_histogram;  // index k -> number of nodes of degree k
  double isolated_fraction = 0.0;
  bool fully_connected = false;
  int components = 0;
};

ConnectivityReport analyze(const AdjacencyGraph& graph);

struct EnsembleReport {
  int trials = 0;
  int nodes = 0;
  double density = 0.0;
  double mean_degree = 0.0;
  double mean_degree_stderr = 0.0;
  double isolated_fraction = 0.0;
  double isolated_fraction_stderr = 0.0;
  double pfc = 0.0;  // fraction of fully connected trials
  double pfc_stderr = 0.0;
  double pair_link_frequency = 0.0;  // links / (N(N-1)/2), averaged over trials
  double pair_link_frequency_stderr = 0.0;
  std::vector<std::uint64_t> degree_histogram;  // pooled over trials

  /// Pooled histogram normalized to a probability distribution.
  std::vector<double> degree_distribution() const;
};

/// Runs `config.trials` independent trials in parallel and folds them in trial order.
EnsembleReport run_ensemble(const SimConfig& config);

struct SweepRow {
  double eta = 0.0;
  std::string pattern;
  double mean_degree_over_rho = 0.0;
  double standard_error = 0.0;
  double analytic_mass = 0.0;
};

/// One ensemble per (eta, pattern) with identical tx and rx patterns; every ensemble reuses the
/// configured master seed. Rows are ordered by eta, then by pattern.
std::vector<SweepRow> sweep_eta(const SimConfig& config, const std::vector<double>& eta_values,
                                const std::vector<GainPattern>& patterns);

}  // namespace anisonet::mcsim
