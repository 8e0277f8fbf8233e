#include "anisonet/gain.hpp"

#include <cmath>
#include <cstdio>

#include "anisonet/errors.hpp"

namespace anisonet::gain {

using specfn::pi;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double clamp_unit(double c) { return std::fmax(-1.0, std::fmin(1.0, c)); }

std::string fmt_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

OrientationSet::OrientationSet(std::vector<Vec3> vectors) : vectors_(std::move(vectors)) {
  for (const Vec3& v : vectors_) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z) || std::fabs(norm(v) - 1.0) > 1e-12)
      throw DomainError("OrientationSet: every vector must have unit norm");
  }
}

OrientationSet OrientationSet::from_unnormalized(std::vector<Vec3> vectors) {
  for (Vec3& v : vectors) {
    const double len = norm(v);
    if (!(len > 0.0) || !std::isfinite(len)) throw DomainError("OrientationSet: zero or non-finite vector");
    v = (1.0 / len) * v;
  }
  return OrientationSet(std::move(vectors));
}

OrientationSet OrientationSet::rotated(const Mat3& rotation) const {
  std::vector<Vec3> out;
  out.reserve(vectors_.size());
  for (const Vec3& v : vectors_) out.push_back(normalized(rotation * v));
  return OrientationSet(std::move(out));
}

double OrientationSet::min_separation() const {
  double best = pi;
  for (std::size_t i = 0; i < vectors_.size(); ++i)
    for (std::size_t j = i + 1; j < vectors_.size(); ++j) best = std::fmin(best, angle_between(vectors_[i], vectors_[j]));
  return best;
}

GainPattern GainPattern::cardioid(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("cardioid: epsilon must lie in [0, 1]");
  return GainPattern(Cardioid{epsilon});
}

GainPattern GainPattern::donut(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("donut: m must be > 0");
  return GainPattern(Donut{m, donut_amplitude(m)});
}

GainPattern GainPattern::narrow(double lambda) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw DomainError("narrow: lambda must be >= 1");
  return GainPattern(NarrowLobe{lambda, narrow_amplitude(lambda)});
}

GainPattern GainPattern::sector(double nu) {
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("sector: nu must lie in (0, 1]");
  return GainPattern(Sector{nu});
}

GainPattern GainPattern::multilobe(double lambda, OrientationSet directions, LobeProfile profile) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw DomainError("multilobe: lambda must be >= 1");
  if (directions.size() < 1) throw DomainError("multilobe: needs at least one direction");
  const double width = lobe_half_angle(lambda, profile);
  if (directions.min_separation() < 2.0 * width - 1e-12)
    throw DomainError("multilobe: lobes overlap (pairwise separation below " + fmt_number(2.0 * width) + " rad)");
  const int n = static_cast<int>(directions.size());
  const double peak =
      profile == LobeProfile::sectorized ? sectorized_lobe_gain(n, lambda) : narrow_amplitude(lambda) / n;
  return GainPattern(MultiLobe{lambda, std::move(directions), profile, peak});
}

double donut_amplitude(double m) {
  return 2.0 * std::exp(std::lgamma(0.5 * (3.0 + m)) - std::lgamma(0.5 * (2.0 + m))) / std::sqrt(pi);
}

double narrow_amplitude(double lambda) {
  const double d = lambda - 1.0;
  // int_0^{pi/(2 lambda)} sin(t) cos(lambda t) dt, expanded near lambda = 1 where it is 0/0.
  const double overlap = d < 1e-5 ? (1.0 - (pi * pi / 8.0) * d) / (2.0 + d)
                                  : (lambda * std::sin(pi / (2.0 * lambda)) - 1.0) / (lambda * lambda - 1.0);
  return 2.0 / overlap;
}

double sectorized_lobe_gain(int n, double lambda) {
  const double s = std::sin(pi / (6.0 * lambda));
  return 1.0 / (n * s * s);
}

double lobe_half_angle(double lambda, LobeProfile profile) {
  return profile == LobeProfile::cosine ? pi / (2.0 * lambda) : pi / (3.0 * lambda);
}

double polar_gain(const GainPattern& pattern, double theta) {
  return std::visit(
      overloaded{
          [](const Isotropic&) { return 1.0; },
          [&](const Cardioid& c) { return 1.0 + c.epsilon * std::cos(theta); },
          [&](const Donut& d) {
            const double s = std::fabs(std::sin(theta));
            return d.amplitude * std::pow(s, d.m);
          },
          [&](const NarrowLobe& l) {
            if (theta >= pi / (2.0 * l.lambda)) return 0.0;
            return l.amplitude * std::cos(l.lambda * theta);
          },
          [&](const Sector& s) {
            if (theta >= s.nu * pi) return 0.0;
            const double h = std::sin(0.5 * s.nu * pi);
            return 1.0 / (h * h);
          },
          [&](const MultiLobe& ml) {
            if (theta >= lobe_half_angle(ml.lambda, ml.profile)) return 0.0;
            if (ml.profile == LobeProfile::sectorized) return ml.lobe_peak;
            return ml.lobe_peak * std::cos(ml.lambda * theta);
          },
      },
      pattern.shape());
}

double gain_at(const GainPattern& pattern, const Vec3& body_direction) {
  if (const auto* ml = std::get_if<MultiLobe>(&pattern.shape())) {
    const double width = lobe_half_angle(ml->lambda, ml->profile);
    const double cos_width = std::cos(width);
    double total = 0.0;
    for (const Vec3& axis : ml->directions.vectors()) {
      const double c = dot(axis, body_direction);
      if (c <= cos_width) continue;
      total += polar_gain(pattern, std::acos(clamp_unit(c)));
    }
    return total;
  }
  return polar_gain(pattern, std::acos(clamp_unit(body_direction.z)));
}

double max_gain(const GainPattern& pattern) {
  return std::visit(overloaded{
                        [](const Isotropic&) { return 1.0; },
                        [](const Cardioid& c) { return 1.0 + c.epsilon; },
                        [](const Donut& d) { return d.amplitude; },
                        [](const NarrowLobe& l) { return l.amplitude; },
                        [&](const Sector&) { return polar_gain(pattern, 0.0); },
                        [&](const MultiLobe&) { return polar_gain(pattern, 0.0); },
                    },
                    pattern.shape());
}

double support_half_angle(const GainPattern& pattern) {
  return std::visit(overloaded{
                        [](const NarrowLobe& l) { return pi / (2.0 * l.lambda); },
                        [](const Sector& s) { return s.nu * pi; },
                        [](const MultiLobe& ml) { return lobe_half_angle(ml.lambda, ml.profile); },
                        [](const auto&) { return pi; },
                    },
                    pattern.shape());
}

std::vector<specfn::Cap> feature_caps(const GainPattern& pattern, const Mat3& orientation) {
  const Vec3 boresight = orientation.column(2);
  std::vector<specfn::Cap> caps;
  std::visit(overloaded{
                 [](const Isotropic&) {},
                 [&](const Cardioid&) {
                   caps.push_back({boresight, 0.0});
                   caps.push_back({-boresight, 0.0});
                 },
                 [&](const Donut&) {
                   caps.push_back({boresight, 0.0});
                   caps.push_back({-boresight, 0.0});
                   caps.push_back({boresight, pi / 2.0});
                 },
                 [&](const NarrowLobe& l) {
                   caps.push_back({boresight, 0.0});
                   caps.push_back({boresight, pi / (2.0 * l.lambda)});
                 },
                 [&](const Sector& s) {
                   if (s.nu < 1.0) caps.push_back({boresight, s.nu * pi});
                 },
                 [&](const MultiLobe& ml) {
                   const double width = lobe_half_angle(ml.lambda, ml.profile);
                   for (const Vec3& axis : ml.directions.vectors()) {
                     const Vec3 world = normalized(orientation * axis);
                     caps.push_back({world, 0.0});
                     caps.push_back({world, width});
                   }
                 },
             },
             pattern.shape());
  return caps;
}

std::vector<double> polar_breakpoints(const GainPattern& pattern, double power) {
  std::vector<double> pts;
  std::visit(overloaded{
                 [](const Isotropic&) {},
                 [](const Cardioid&) {},
                 [&](const Donut& d) {
                   // sin^(m p) is a narrow bump of width ~ 1/sqrt(m p) around the equator.
                   const double width = 1.0 / std::sqrt(std::fmax(d.m * power, 1e-300));
                   pts.push_back(pi / 2.0);
                   for (double k : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
                     pts.push_back(pi / 2.0 - k * width);
                     pts.push_back(pi / 2.0 + k * width);
                   }
                 },
                 [&](const auto&) { pts.push_back(support_half_angle(pattern)); },
             },
             pattern.shape());
  return pts;
}

double sphere_integral(const GainPattern& pattern, double power, const QuadratureSpec& spec) {
  if (pattern.rotationally_symmetric()) {
    const auto bps = polar_breakpoints(pattern, power);
    const double support = support_half_angle(pattern);
    auto f = [&](double t) {
      const double g = polar_gain(pattern, t);
      return g > 0.0 ? std::sin(t) * std::pow(g, power) : 0.0;
    };
    return 2.0 * pi * specfn::integrate_1d(f, 0.0, support, spec, bps);
  }
  const auto caps = feature_caps(pattern);
  auto f = [&](double theta, double phi) {
    const double g = gain_at(pattern, from_spherical(theta, phi));
    return g > 0.0 ? std::sin(theta) * std::pow(g, power) : 0.0;
  };
  return specfn::integrate_patch(f, {0.0, pi}, {0.0, 2.0 * pi}, spec, caps);
}

double verify_normalization(const GainPattern& pattern, const QuadratureSpec& spec) {
  return sphere_integral(pattern, 1.0, spec);
}

double s_functional_quadrature(const GainPattern& pattern, double eta, const QuadratureSpec& spec) {
  if (!(eta > 0.0)) throw DomainError("s_functional: eta must be > 0");
  return sphere_integral(pattern, 3.0 / eta, spec) / (2.0 * pi);
}

std::optional<double> s_functional_closed(const GainPattern& pattern, double eta) {
  if (!(eta > 0.0)) throw DomainError("s_functional: eta must be > 0");
  const double p = 3.0 / eta;
  return std::visit(
      overloaded{
          [](const Isotropic&) -> std::optional<double> { return 2.0; },
          [&](const Cardioid& c) -> std::optional<double> {
            const double e = c.epsilon;
            const double q = 1.0 + p;
            if (e < 1e-3) {
              // Taylor series of the closed form; exact 2 at epsilon = 0.
              const double e2 = e * e;
              return 2.0 * (1.0 + p * (p - 1.0) / 6.0 * e2 + p * (p - 1.0) * (p - 2.0) * (p - 3.0) / 120.0 * e2 * e2);
            }
            return eta * (std::pow(1.0 + e, q) - std::pow(1.0 - e, q)) / (e * (eta + 3.0));
          },
          [&](const Donut& d) -> std::optional<double> {
            return std::pow(d.amplitude, p) * std::sqrt(pi) *
                   std::exp(std::lgamma(1.0 + 1.5 * d.m / eta) - std::lgamma(1.5 * (d.m + eta) / eta));
          },
          [](const NarrowLobe&) -> std::optional<double> { return std::nullopt; },
          [&](const Sector& s) -> std::optional<double> {
            return 2.0 * std::pow(std::sin(0.5 * s.nu * pi), 2.0 - 6.0 / eta);
          },
          [&](const MultiLobe& ml) -> std::optional<double> {
            const int n = ml.n();
            if (ml.profile == LobeProfile::sectorized) {
              const double width = lobe_half_angle(ml.lambda, ml.profile);
              return n * std::pow(sectorized_lobe_gain(n, ml.lambda), p) * (1.0 - std::cos(width));
            }
            const double single = s_functional_quadrature(GainPattern::narrow(ml.lambda), eta);
            return std::pow(static_cast<double>(n), 1.0 - p) * single;
          },
      },
      pattern.shape());
}

double half_max_solid_angle(const GainPattern& pattern) {
  if (pattern.kind() == Kind::isotropic) return 4.0 * pi;
  const double threshold = 0.5 * max_gain(pattern);
  const double support = support_half_angle(pattern);
  auto above = [&](double t) { return polar_gain(pattern, t) >= threshold; };

  constexpr int samples = 20000;
  double solid = 0.0;
  double start = 0.0;
  bool inside = above(0.0);
  double prev = 0.0;
  auto crossing = [&](double lo, double hi) {
    const bool lo_state = above(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (above(mid) == lo_state ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  for (int i = 1; i <= samples; ++i) {
    const double t = support * i / samples;
    const bool state = i == samples && support < pi ? false : above(t);
    if (state != inside) {
      const double edge = crossing(prev, t);
      if (inside) solid += 2.0 * pi * (std::cos(start) - std::cos(edge));
      start = edge;
      inside = state;
    }
    prev = t;
  }
  if (inside) solid += 2.0 * pi * (std::cos(start) - std::cos(support));
  if (const auto* ml = std::get_if<MultiLobe>(&pattern.shape())) solid *= ml->n();
  return solid;
}

std::string describe(const GainPattern& pattern) {
  return std::visit(overloaded{
                        [](const Isotropic&) { return std::string("isotropic"); },
                        [](const Cardioid& c) { return "cardioid(epsilon=" + fmt_number(c.epsilon) + ")"; },
                        [](const Donut& d) { return "donut(m=" + fmt_number(d.m) + ")"; },
                        [](const NarrowLobe& l) { return "narrow(lambda=" + fmt_number(l.lambda) + ")"; },
                        [](const Sector& s) { return "sector(nu=" + fmt_number(s.nu) + ")"; },
                        [](const MultiLobe& ml) {
                          return "multilobe(n=" + std::to_string(ml.n()) + ";lambda=" + fmt_number(ml.lambda) +
                                 ";profile=" + (ml.profile == LobeProfile::cosine ? "cosine" : "sectorized") + ")";
                        },
                    },
                    pattern.shape());
}

}  // namespace anisonet::gain
