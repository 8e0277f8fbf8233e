#pragma once

// Homogeneous connectivity mass and the observables derived from it.

#include <span>
#include <string>

#include "anisonet/gain.hpp"

namespace anisonet::analytic {

using gain::GainPattern;
using specfn::QuadratureSpec;

/// Pair connectedness exp(-beta r^eta / (G_i G_j)).
struct PathLossModel {
  double eta = 2.0;   // path loss exponent
  double beta = 1.0;  // attenuation constant, length^-eta

  void validate() const;
};

enum class Method { closed, quadrature };

struct MassResult {
  double mass = 0.0;
  Method method = Method::closed;
  GainPattern pattern_tx;
  GainPattern pattern_rx;
  PathLossModel model;
};

/// S_eta[G] from its closed form when one exists, by quadrature otherwise.
struct SValue {
  double value = 0.0;
  Method method = Method::closed;
};
SValue s_functional(const GainPattern& pattern, double eta, const QuadratureSpec& spec = {});

/// pi Gamma(3/eta) / (eta beta^{3/eta}), the prefactor multiplying S_eta[G_i] S_eta[G_j].
double mass_prefactor(const PathLossModel& model);

/// M = pi Gamma(3/eta) / (eta beta^{3/eta}) * S_eta[G_tx] * S_eta[G_rx].
MassResult homogeneous_mass(const GainPattern& pattern_tx, const GainPattern& pattern_rx,
                            const PathLossModel& model, const QuadratureSpec& spec = {});

struct DegreeEstimate {
  double mean_degree = 0.0;         // rho M
  double pair_probability = 0.0;    // M / V
  double finite_mean_degree = 0.0;  // (N - 1) M / V
};

DegreeEstimate mean_degree_and_pair_probability(const MassResult& mass, double rho, double volume, int nodes);

struct FullConnectivity {
  double clamped = 0.0;  // max(0, raw)
  double raw = 0.0;      // 1 - N exp(-rho M), may be negative at low density
};

/// High-density full-connectivity probability of a homogeneous network.
FullConnectivity pfc_homogeneous(int nodes, double rho, double mass);

/// Isotropic boundary-component mass omega_B Gamma(3/eta) / (eta beta^{3/eta}), omega_B in (0, 4pi].
double boundary_mass_isotropic(const PathLossModel& model, double omega_b);

/// Radius beyond which exp(-beta r^eta / gain_product) stays below abs_tol * 1e-3.
double radial_truncation(const PathLossModel& model, double gain_product, double abs_tol);

enum class ScalingFamily { donut, narrow, sector };

/// Least-squares slope of log S_eta against log(half-max solid angle) over a parameter sweep
/// (m for donut, lambda for narrow, nu for sector). Needs at least 5 parameter values.
double fit_scaling_exponent(ScalingFamily family, double eta, std::span<const double> parameters,
                            const QuadratureSpec& spec = {});

GainPattern make_family_member(ScalingFamily family, double parameter);

/// Least-squares slope of y on x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace anisonet::analytic
