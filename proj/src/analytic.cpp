#include "anisonet/analytic.hpp"

#include <cmath>
#include <vector>

#include "anisonet/errors.hpp"

namespace anisonet::analytic {

using specfn::pi;

void PathLossModel::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("PathLossModel: eta must be > 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("PathLossModel: beta must be > 0");
}

SValue s_functional(const GainPattern& pattern, double eta, const QuadratureSpec& spec) {
  // Cosine multi-lobe closed form still needs a single-lobe quadrature.
  const bool pure_closed = !(pattern.kind() == gain::Kind::multilobe &&
                             std::get<gain::MultiLobe>(pattern.shape()).profile == gain::LobeProfile::cosine);
  if (const auto closed = gain::s_functional_closed(pattern, eta))
    return {*closed, pure_closed ? Method::closed : Method::quadrature};
  return {gain::s_functional_quadrature(pattern, eta, spec), Method::quadrature};
}

double mass_prefactor(const PathLossModel& model) {
  model.validate();
  const double p = 3.0 / model.eta;
  return pi * specfn::gamma_fn(p) / (model.eta * std::pow(model.beta, p));
}

MassResult homogeneous_mass(const GainPattern& pattern_tx, const GainPattern& pattern_rx,
                            const PathLossModel& model, const QuadratureSpec& spec) {
  const double prefactor = mass_prefactor(model);
  const SValue s_tx = s_functional(pattern_tx, model.eta, spec);
  const SValue s_rx = s_functional(pattern_rx, model.eta, spec);
  const Method method =
      s_tx.method == Method::closed && s_rx.method == Method::closed ? Method::closed : Method::quadrature;
  return {prefactor * s_tx.value * s_rx.value, method, pattern_tx, pattern_rx, model};
}

DegreeEstimate mean_degree_and_pair_probability(const MassResult& mass, double rho, double volume, int nodes) {
  if (!(rho > 0.0) || !(volume > 0.0) || nodes < 2)
    throw DomainError("mean_degree_and_pair_probability: needs rho > 0, volume > 0, N >= 2");
  const double p2 = mass.mass / volume;
  return {rho * mass.mass, p2, (nodes - 1) * p2};
}

FullConnectivity pfc_homogeneous(int nodes, double rho, double mass) {
  if (nodes < 1 || !(rho > 0.0) || !(mass >= 0.0)) throw DomainError("pfc_homogeneous: needs N >= 1, rho > 0, M >= 0");
  const double raw = 1.0 - nodes * std::exp(-rho * mass);
  return {std::fmax(0.0, raw), raw};
}

double boundary_mass_isotropic(const PathLossModel& model, double omega_b) {
  if (!(omega_b > 0.0 && omega_b <= 4.0 * pi * (1.0 + 1e-15)))
    throw DomainError("boundary_mass_isotropic: omega_B must lie in (0, 4pi]");
  // pi Gamma(3/eta)/(eta beta^{3/eta}) carries the factor pi of the bulk; rescale to omega_B.
  return mass_prefactor(model) / pi * omega_b;
}

double radial_truncation(const PathLossModel& model, double gain_product, double abs_tol) {
  model.validate();
  if (!(gain_product > 0.0) || !(abs_tol > 0.0)) throw DomainError("radial_truncation: needs positive inputs");
  const double exponent = -std::log(abs_tol * 1e-3);
  return std::pow(gain_product * exponent / model.beta, 1.0 / model.eta);
}

GainPattern make_family_member(ScalingFamily family, double parameter) {
  switch (family) {
    case ScalingFamily::donut: return GainPattern::donut(parameter);
    case ScalingFamily::narrow: return GainPattern::narrow(parameter);
    case ScalingFamily::sector: return GainPattern::sector(parameter);
  }
  throw DomainError("unknown scaling family");
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw ConvergenceError("least_squares_slope: abscissae are all equal");
  return sxy / sxx;
}

double fit_scaling_exponent(ScalingFamily family, double eta, std::span<const double> parameters,
                            const QuadratureSpec& spec) {
  if (parameters.size() < 5) throw ConvergenceError("fit_scaling_exponent: needs at least 5 sweep points");
  std::vector<double> log_omega, log_s;
  for (double p : parameters) {
    const GainPattern pattern = make_family_member(family, p);
    log_omega.push_back(std::log(gain::half_max_solid_angle(pattern)));
    log_s.push_back(std::log(s_functional(pattern, eta, spec).value));
  }
  return least_squares_slope(log_omega, log_s);
}

}  // namespace anisonet::analytic
