#pragma once

// Bounded domains and the connectivity mass of a node sitting in a right-angled corner.

#include <array>
#include <cstddef>
#include <optional>

#include "anisonet/analytic.hpp"
#include "anisonet/gain.hpp"

namespace anisonet::boundary {

using analytic::PathLossModel;
using gain::GainPattern;
using gain::OrientationSet;
using specfn::QuadratureSpec;

struct Domain {
  enum class Kind { cuboid, square2d };

  Kind kind = Kind::cuboid;
  std::array<double, 3> lengths{1.0, 1.0, 1.0};  // third entry unused for square2d
  bool periodic = false;

  static Domain cube(double side, bool periodic = false);
  static Domain cuboid(double lx, double ly, double lz, bool periodic = false);
  static Domain square(double side);

  int dimension() const { return kind == Kind::cuboid ? 3 : 2; }
  /// Volume (area for square2d).
  double volume() const;
  void validate() const;
};

/// Steps of a (polar, azimuth) grid of boresight directions, in radians.
struct OrientationGrid {
  double polar_step = 10.0 * specfn::pi / 180.0;
  double azimuth_step = 10.0 * specfn::pi / 180.0;
};

/// Distance from `origin` along unit `direction` to the first face of a non-periodic domain; 0 when
/// the direction leaves the domain immediately. For square2d only the x and y components are used.
double ray_exit_distance(const Domain& domain, const Vec3& origin, const Vec3& direction);

/// int over the positive octant of sin(theta) G(chi)^{3/eta} dtheta dphi, chi being the angle between
/// the boresight `orientation` and the direction (theta, phi).
double corner_gain_integral(const GainPattern& pattern, const Vec3& orientation, double eta,
                            const QuadratureSpec& spec = {});

struct CornerMinimum {
  double value = 0.0;
  Vec3 orientation;
};

/// Grid search of corner_gain_integral over boresights, then one shrunken grid around the best point.
CornerMinimum min_corner_gain_integral(const GainPattern& pattern, double eta, const OrientationGrid& grid,
                                       const QuadratureSpec& spec = {});

/// Connectivity mass of a node at the corner of the positive octant. Without `cube_side` the radial
/// integral runs to infinity and the separated form Gamma(3/eta)/(2 eta beta^{3/eta}) I S_eta[G_j] is
/// returned. With a cube side the radial integral is capped at the ray exit distance of the cube and
/// the remaining angular integrals are done by quadrature.
double corner_mass(const GainPattern& pattern_i, const Vec3& orientation_i, const GainPattern& pattern_j,
                   const PathLossModel& model, std::optional<double> cube_side, const QuadratureSpec& spec = {});

/// Sectorized multi-lobe corner mass
///   (4 pi g^{6/eta-2} / (n eta beta^{3/eta})) sum_k gamma(3/eta, beta L_k^eta / g^2),
/// with g = (1/n) csc^2(pi/(6 lambda)) and L_k the cube exit distance along lobe k (0 outside).
/// Throws DomainError when lambda < sqrt(n pi)/3.
double multisector_corner_mass_3d(int n, double lambda, const OrientationSet& directions,
                                  const PathLossModel& model, double cube_side);

/// How far every direction sits outside the closed positive octant: min_k(-min_i v_k[i]).
/// Positive exactly when no direction points into the octant.
double octant_avoidance_margin(const OrientationSet& directions);

struct MultisectorMinimum {
  double value = 0.0;
  Mat3 rotation;                  // argmin, applied to the base configuration
  bool blind_spot = false;        // some rotation leaves every lobe axis outside the octant
  double avoidance_margin = 0.0;  // best octant_avoidance_margin found (grid plus local refinement)
  std::size_t rotations = 0;      // grid size
};

/// Minimum of multisector_corner_mass_3d over rigid ZYZ-Euler rotations of `base` on a grid with
/// step `euler_step` (radians). The blind-spot verdict additionally refines the best grid
/// orientations with a local search on the avoidance margin, so it does not depend on the grid
/// happening to land inside a narrow blind region.
MultisectorMinimum min_multisector_corner_mass(int n, double lambda, const PathLossModel& model, double cube_side,
                                               double euler_step, const OrientationSet& base);

/// 2D analogue with n sectors of width 2pi/(3 lambda), gain g = 3 lambda / n, lobe k at angle
/// 2 pi k / n + offset, corner of a square of side `square_side`. Throws when lambda < 3n.
double multisector_corner_mass_2d(int n, double lambda, double offset, const PathLossModel& model,
                                  double square_side);

struct Multisector2dMinimum {
  double value = 0.0;
  double offset = 0.0;
};

/// Minimum over offset in [0, 2pi/n) on a grid of `grid_points` plus golden-section refinement.
Multisector2dMinimum min_multisector_corner_mass_2d(int n, double lambda, const PathLossModel& model,
                                                    double square_side, int grid_points = 4096);

}  // namespace anisonet::boundary
