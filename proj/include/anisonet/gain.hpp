#pragma once

// Parametric antenna gain patterns and the connectivity functional S_eta[G].
//
// Every pattern is normalized so that its integral over the unit sphere is 4 pi. Rotationally
// symmetric patterns are functions of the polar angle theta measured from the body-frame boresight
// +z. Multi-lobe patterns are a sum of identical, non-overlapping lobes around explicit body-frame
// directions.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "anisonet/specfn.hpp"
#include "anisonet/vec3.hpp"

namespace anisonet::gain {

using specfn::QuadratureSpec;

struct Isotropic {};

/// G(theta) = 1 + epsilon cos(theta), epsilon in [0, 1].
struct Cardioid {
  double epsilon = 1.0;
};

/// G(theta) = A(m) sin^m(theta), m > 0.
struct Donut {
  double m = 2.0;
  double amplitude = 0.0;  // cached by GainPattern::donut
};

/// G(theta) = A(lambda) cos(lambda theta) on theta < pi / (2 lambda), lambda >= 1.
struct NarrowLobe {
  double lambda = 2.0;
  double amplitude = 0.0;  // cached by GainPattern::narrow
};

/// G(theta) = csc^2(nu pi / 2) on theta < nu pi, nu in (0, 1].
struct Sector {
  double nu = 0.5;
};

/// A list of unit vectors, each of norm 1 +- 1e-12.
class OrientationSet {
 public:
  OrientationSet() = default;
  explicit OrientationSet(std::vector<Vec3> vectors);

  /// Normalizes every vector before validation.
  static OrientationSet from_unnormalized(std::vector<Vec3> vectors);

  std::size_t size() const { return vectors_.size(); }
  const std::vector<Vec3>& vectors() const { return vectors_; }
  const Vec3& operator[](std::size_t i) const { return vectors_[i]; }

  /// The same set rotated rigidly.
  OrientationSet rotated(const Mat3& rotation) const;

  /// Smallest pairwise angle (pi for fewer than two vectors).
  double min_separation() const;

 private:
  std::vector<Vec3> vectors_;
};

enum class LobeProfile {
  cosine,      // each lobe (A(lambda)/n) cos(lambda theta) on theta < pi/(2 lambda)
  sectorized,  // each lobe a constant cap (1/n) csc^2(pi/(6 lambda)) on theta < pi/(3 lambda)
};

struct MultiLobe {
  double lambda = 2.0;
  OrientationSet directions;
  LobeProfile profile = LobeProfile::sectorized;
  double lobe_peak = 0.0;  // cached peak gain of one lobe

  int n() const { return static_cast<int>(directions.size()); }
};

enum class Kind { isotropic, cardioid, donut, narrow, sector, multilobe };

class GainPattern {
 public:
  using Shape = std::variant<Isotropic, Cardioid, Donut, NarrowLobe, Sector, MultiLobe>;

  /// Isotropic pattern.
  GainPattern() = default;

  static GainPattern isotropic() { return GainPattern{}; }
  static GainPattern cardioid(double epsilon);
  static GainPattern donut(double m);
  static GainPattern narrow(double lambda);
  static GainPattern sector(double nu);
  /// Lobes around `directions`; throws DomainError if lobe supports overlap.
  static GainPattern multilobe(double lambda, OrientationSet directions, LobeProfile profile);

  const Shape& shape() const { return shape_; }
  Kind kind() const { return static_cast<Kind>(shape_.index()); }
  bool rotationally_symmetric() const { return kind() != Kind::multilobe; }

 private:
  explicit GainPattern(Shape s) : shape_(std::move(s)) {}
  Shape shape_{Isotropic{}};
};

/// Donut amplitude 2 Gamma((3+m)/2) / (sqrt(pi) Gamma((2+m)/2)).
double donut_amplitude(double m);
/// Narrow-lobe amplitude 2(lambda^2-1)/(lambda sin(pi/(2 lambda)) - 1), with the lambda -> 1 limit 4.
double narrow_amplitude(double lambda);
/// Height of one sectorized lobe cap, (1/n) csc^2(pi/(6 lambda)).
double sectorized_lobe_gain(int n, double lambda);
/// Half-angle of a single lobe's support: pi/(2 lambda) for cosine lobes, pi/(3 lambda) for caps.
double lobe_half_angle(double lambda, LobeProfile profile);

/// Gain as a function of polar angle. For MultiLobe this is the profile of a single lobe.
double polar_gain(const GainPattern& pattern, double theta);

/// Gain toward a unit direction expressed in the pattern's body frame.
double gain_at(const GainPattern& pattern, const Vec3& body_direction);

double max_gain(const GainPattern& pattern);

/// Polar angle beyond which a rotationally symmetric pattern (or a single lobe) is zero; pi if none.
double support_half_angle(const GainPattern& pattern);

/// Circles and points on the sphere where G or G^p loses smoothness, in world coordinates for a
/// pattern whose body frame is rotated by `orientation`.
std::vector<specfn::Cap> feature_caps(const GainPattern& pattern, const Mat3& orientation = Mat3::identity());

/// Polar-angle breakpoints for 1D integrals of G(theta)^power (support edges, narrow peaks).
std::vector<double> polar_breakpoints(const GainPattern& pattern, double power);

/// int G^power dOmega over the whole sphere, by quadrature.
double sphere_integral(const GainPattern& pattern, double power, const QuadratureSpec& spec = {});

/// int_0^{2pi} int_0^pi G sin(theta) dtheta dphi; 4 pi for every valid pattern.
double verify_normalization(const GainPattern& pattern, const QuadratureSpec& spec = {});

/// S_eta[G] = int_0^pi sin(theta) G(theta)^{3/eta} dtheta by quadrature. Multi-lobe patterns are
/// integrated over the full sphere and divided by 2 pi, which equals the sum of per-lobe integrals
/// when lobes do not overlap.
double s_functional_quadrature(const GainPattern& pattern, double eta, const QuadratureSpec& spec = {});

/// Closed form of S_eta[G]; std::nullopt (unsupported) for NarrowLobe.
std::optional<double> s_functional_closed(const GainPattern& pattern, double eta);

/// Solid angle over which G is at least half its maximum, measured numerically.
double half_max_solid_angle(const GainPattern& pattern);

/// Short human-readable label, e.g. "cardioid(epsilon=1)".
std::string describe(const GainPattern& pattern);

}  // namespace anisonet::gain
