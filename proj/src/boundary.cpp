#include "anisonet/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "anisonet/errors.hpp"
#include "anisonet/parallel.hpp"

namespace anisonet::boundary {

using specfn::pi;

Domain Domain::cube(double side, bool periodic) { return cuboid(side, side, side, periodic); }

Domain Domain::cuboid(double lx, double ly, double lz, bool periodic) {
  Domain d{Kind::cuboid, {lx, ly, lz}, periodic};
  d.validate();
  return d;
}

Domain Domain::square(double side) {
  Domain d{Kind::square2d, {side, side, 0.0}, false};
  d.validate();
  return d;
}

double Domain::volume() const {
  return kind == Kind::cuboid ? lengths[0] * lengths[1] * lengths[2] : lengths[0] * lengths[1];
}

void Domain::validate() const {
  for (int i = 0; i < dimension(); ++i)
    if (!(lengths[i] > 0.0) || !std::isfinite(lengths[i])) throw DomainError("Domain: lengths must be > 0");
}

double ray_exit_distance(const Domain& domain, const Vec3& origin, const Vec3& direction) {
  if (domain.periodic) throw DomainError("ray_exit_distance: periodic domains have no boundary");
  domain.validate();
  double t = std::numeric_limits<double>::infinity();
  for (int i = 0; i < domain.dimension(); ++i) {
    const double d = direction[i];
    const double o = origin[i];
    if (d > 0.0) t = std::min(t, (domain.lengths[i] - o) / d);
    else if (d < 0.0) t = std::min(t, -o / d);
  }
  return std::isfinite(t) ? std::max(0.0, t) : 0.0;
}

namespace {

void require_symmetric(const GainPattern& pattern, const char* who) {
  if (!pattern.rotationally_symmetric())
    throw DomainError(std::string(who) + ": pattern must be rotationally symmetric");
}

/// Great circles where the exit face of a cuboid seen from its corner changes.
std::vector<specfn::Cap> exit_face_kinks(const std::array<double, 3>& l) {
  return {{normalized(Vec3{l[2], 0.0, -l[0]}), pi / 2.0},
          {normalized(Vec3{0.0, l[2], -l[1]}), pi / 2.0},
          {normalized(Vec3{l[1], -l[0], 0.0}), pi / 2.0}};
}

}  // namespace

double corner_gain_integral(const GainPattern& pattern, const Vec3& orientation, double eta,
                            const QuadratureSpec& spec) {
  require_symmetric(pattern, "corner_gain_integral");
  if (!(eta > 0.0)) throw DomainError("corner_gain_integral: eta must be > 0");
  const Vec3 v = normalized(orientation);
  const double p = 3.0 / eta;
  const auto caps = gain::feature_caps(pattern, frame_from_boresight(v));
  auto f = [&](double theta, double phi) {
    const double chi = angle_between(v, from_spherical(theta, phi));
    const double g = gain::polar_gain(pattern, chi);
    return g > 0.0 ? std::sin(theta) * std::pow(g, p) : 0.0;
  };
  return specfn::integrate_patch(f, {0.0, pi / 2.0}, {0.0, pi / 2.0}, spec, caps);
}

CornerMinimum min_corner_gain_integral(const GainPattern& pattern, double eta, const OrientationGrid& grid,
                                       const QuadratureSpec& spec) {
  require_symmetric(pattern, "min_corner_gain_integral");
  if (!(grid.polar_step > 0.0) || !(grid.azimuth_step > 0.0))
    throw DomainError("OrientationGrid: steps must be > 0");

  std::vector<Vec3> candidates;
  const int n_polar = static_cast<int>(std::floor(pi / grid.polar_step + 1e-9));
  const int n_azimuth = std::max(1, static_cast<int>(std::ceil(2.0 * pi / grid.azimuth_step - 1e-9)));
  for (int i = 0; i <= n_polar; ++i) {
    const double theta = std::min(pi, i * grid.polar_step);
    const bool pole = i == 0 || theta >= pi;
    for (int j = 0; j < (pole ? 1 : n_azimuth); ++j) candidates.push_back(from_spherical(theta, j * grid.azimuth_step));
  }
  if (n_polar * grid.polar_step < pi - 1e-9) candidates.push_back({0.0, 0.0, -1.0});

  auto search = [&](const std::vector<Vec3>& dirs) {
    std::vector<double> values(dirs.size());
    parallel_for(dirs.size(), [&](std::size_t k) { values[k] = corner_gain_integral(pattern, dirs[k], eta, spec); });
    const auto best = std::min_element(values.begin(), values.end()) - values.begin();
    return CornerMinimum{values[best], dirs[best]};
  };

  CornerMinimum best = search(candidates);

  // One shrink step: a 5 x 5 grid at a quarter of the step around the incumbent.
  const auto [t0, p0] = to_spherical(best.orientation);
  std::vector<Vec3> local;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) {
      const double theta = std::clamp(t0 + 0.25 * i * grid.polar_step, 0.0, pi);
      local.push_back(from_spherical(theta, p0 + 0.25 * j * grid.azimuth_step));
    }
  const CornerMinimum refined = search(local);
  return refined.value < best.value ? refined : best;
}

double corner_mass(const GainPattern& pattern_i, const Vec3& orientation_i, const GainPattern& pattern_j,
                   const PathLossModel& model, std::optional<double> cube_side, const QuadratureSpec& spec) {
  require_symmetric(pattern_i, "corner_mass");
  require_symmetric(pattern_j, "corner_mass");
  model.validate();
  const double s = 3.0 / model.eta;
  const double scale = 1.0 / (2.0 * model.eta * std::pow(model.beta, s));

  if (!cube_side) {
    const double integral = corner_gain_integral(pattern_i, orientation_i, model.eta, spec);
    const double s_j = analytic::s_functional(pattern_j, model.eta, spec).value;
    return specfn::gamma_fn(s) * scale * integral * s_j;
  }

  const Domain cube = Domain::cube(*cube_side);
  const Vec3 v = normalized(orientation_i);
  auto caps = gain::feature_caps(pattern_i, frame_from_boresight(v));
  for (const auto& k : exit_face_kinks(cube.lengths)) caps.push_back(k);

  // Angular integrand over the octant for a fixed partner gain g_j.
  auto octant_integral = [&](double g_j) {
    auto f = [&](double theta, double phi) {
      const Vec3 dir = from_spherical(theta, phi);
      const double gg = gain::polar_gain(pattern_i, angle_between(v, dir)) * g_j;
      if (!(gg > 0.0)) return 0.0;
      const double exit = ray_exit_distance(cube, {0.0, 0.0, 0.0}, dir);
      return std::sin(theta) * std::pow(gg, s) *
             specfn::lower_incomplete_gamma(s, model.beta * std::pow(exit, model.eta) / gg);
    };
    return specfn::integrate_patch(f, {0.0, pi / 2.0}, {0.0, pi / 2.0}, spec, caps);
  };

  if (pattern_j.kind() == gain::Kind::isotropic) return scale * 2.0 * octant_integral(1.0);

  auto outer = [&](double vartheta) {
    const double g_j = gain::polar_gain(pattern_j, vartheta);
    return g_j > 0.0 ? std::sin(vartheta) * octant_integral(g_j) : 0.0;
  };
  const auto bps = gain::polar_breakpoints(pattern_j, s);
  return scale * specfn::integrate_1d(outer, 0.0, gain::support_half_angle(pattern_j), spec, bps);
}

namespace {

void check_multisector(int n, double lambda, const PathLossModel& model) {
  model.validate();
  if (n < 2) throw DomainError("multisector: n must be >= 2");
  if (!(lambda >= std::sqrt(n * pi) / 3.0 * (1.0 - 1e-12)))
    throw DomainError("multisector: lobes overlap, lambda must be >= sqrt(n pi)/3");
}

struct SectorSum {
  double s;       // 3/eta
  double beta;
  double eta;
  double inv_g2;  // 1/g^2
  double side;

  // Contribution of one lobe axis at the corner of a cube.
  double lobe(const Vec3& u) const {
    if (u.x < 0.0 || u.y < 0.0 || u.z < 0.0) return 0.0;
    const double exit = side / std::max({u.x, u.y, u.z});
    return specfn::lower_incomplete_gamma(s, beta * std::pow(exit, eta) * inv_g2);
  }
};

}  // namespace

double multisector_corner_mass_3d(int n, double lambda, const OrientationSet& directions,
                                  const PathLossModel& model, double cube_side) {
  check_multisector(n, lambda, model);
  if (static_cast<int>(directions.size()) != n) throw DomainError("multisector: need exactly n directions");
  const Domain cube = Domain::cube(cube_side);
  const double s = 3.0 / model.eta;
  const double g = gain::sectorized_lobe_gain(n, lambda);
  double sum = 0.0;
  for (const Vec3& u : directions.vectors()) {
    const double exit = ray_exit_distance(cube, {0.0, 0.0, 0.0}, u);
    if (exit > 0.0) sum += specfn::lower_incomplete_gamma(s, model.beta * std::pow(exit, model.eta) / (g * g));
  }
  return 4.0 * pi * std::pow(g, 2.0 * s - 2.0) / (n * model.eta * std::pow(model.beta, s)) * sum;
}

double octant_avoidance_margin(const OrientationSet& directions) {
  double margin = std::numeric_limits<double>::infinity();
  for (const Vec3& u : directions.vectors()) margin = std::min(margin, -std::min({u.x, u.y, u.z}));
  return margin;
}

namespace {

double rotated_margin(const Mat3& r, const std::vector<Vec3>& base) {
  double margin = std::numeric_limits<double>::infinity();
  for (const Vec3& b : base) {
    const Vec3 u = r * b;
    margin = std::min(margin, -std::min({u.x, u.y, u.z}));
  }
  return margin;
}

struct GridCandidate {
  double margin;
  std::size_t index;
};

bool better_margin(const GridCandidate& a, const GridCandidate& b) {
  return a.margin > b.margin || (a.margin == b.margin && a.index < b.index);
}

}  // namespace

MultisectorMinimum min_multisector_corner_mass(int n, double lambda, const PathLossModel& model, double cube_side,
                                               double euler_step, const OrientationSet& base) {
  check_multisector(n, lambda, model);
  if (static_cast<int>(base.size()) != n) throw DomainError("multisector: need exactly n base directions");
  if (!(euler_step > 0.0)) throw DomainError("multisector: euler step must be > 0");
  Domain::cube(cube_side);

  const int n_alpha = std::max(1, static_cast<int>(std::ceil(2.0 * pi / euler_step - 1e-9)));
  const int n_beta = static_cast<int>(std::floor(pi / euler_step + 1e-9)) + 1;
  const int n_gamma = n_alpha;
  const std::size_t total = static_cast<std::size_t>(n_alpha) * n_beta * n_gamma;
  auto angles = [&](std::size_t idx) {
    const std::size_t a = idx / (static_cast<std::size_t>(n_beta) * n_gamma);
    const std::size_t b = (idx / n_gamma) % n_beta;
    const std::size_t c = idx % n_gamma;
    return std::array<double, 3>{a * euler_step, std::min(pi, b * euler_step), c * euler_step};
  };

  const double s = 3.0 / model.eta;
  const double g = gain::sectorized_lobe_gain(n, lambda);
  const double prefactor = 4.0 * pi * std::pow(g, 2.0 * s - 2.0) / (n * model.eta * std::pow(model.beta, s));
  const SectorSum lobe{s, model.beta, model.eta, 1.0 / (g * g), cube_side};
  const std::vector<Vec3>& dirs = base.vectors();

  // One block per worker over the outer Euler angle; reductions are in block order.
  constexpr std::size_t keep = 12;
  struct Block {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    std::vector<GridCandidate> top;
  };
  const std::size_t blocks = static_cast<std::size_t>(n_alpha);
  std::vector<Block> results(blocks);
  parallel_for(blocks, [&](std::size_t a) {
    Block& out = results[a];
    const Mat3 ra = rotation_z(a * euler_step);
    for (int b = 0; b < n_beta; ++b) {
      const Mat3 rab = ra * rotation_y(std::min(pi, b * euler_step));
      for (int c = 0; c < n_gamma; ++c) {
        const std::size_t idx = (a * n_beta + b) * static_cast<std::size_t>(n_gamma) + c;
        const Mat3 r = rab * rotation_z(c * euler_step);
        double sum = 0.0;
        double margin = std::numeric_limits<double>::infinity();
        for (const Vec3& d : dirs) {
          const Vec3 u = r * d;
          margin = std::min(margin, -std::min({u.x, u.y, u.z}));
          sum += lobe.lobe(u);
        }
        const double value = prefactor * sum;
        if (value < out.best) {
          out.best = value;
          out.best_index = idx;
        }
        const GridCandidate cand{margin, idx};
        if (out.top.size() < keep || better_margin(cand, out.top.back())) {
          out.top.insert(std::upper_bound(out.top.begin(), out.top.end(), cand, better_margin), cand);
          if (out.top.size() > keep) out.top.pop_back();
        }
      }
    }
  });

  MultisectorMinimum result;
  result.rotations = total;
  result.value = std::numeric_limits<double>::infinity();
  std::vector<GridCandidate> top;
  for (const Block& blk : results) {
    if (blk.best < result.value) {
      result.value = blk.best;
      const auto [a, b, c] = angles(blk.best_index);
      result.rotation = euler_zyz(a, b, c);
    }
    top.insert(top.end(), blk.top.begin(), blk.top.end());
  }
  std::sort(top.begin(), top.end(), better_margin);
  if (top.size() > keep) top.resize(keep);

  // Compass search on the Euler angles, maximizing the avoidance margin from each top candidate.
  double best_margin = -std::numeric_limits<double>::infinity();
  Mat3 best_rotation;
  for (const GridCandidate& cand : top) {
    std::array<double, 3> x = angles(cand.index);
    double fx = rotated_margin(euler_zyz(x[0], x[1], x[2]), dirs);
    double step = euler_step;
    while (step > 1e-10) {
      bool improved = false;
      for (int k = 0; k < 3 && !improved; ++k)
        for (double sign : {1.0, -1.0}) {
          std::array<double, 3> y = x;
          y[k] += sign * step;
          const double fy = rotated_margin(euler_zyz(y[0], y[1], y[2]), dirs);
          if (fy > fx) {
            x = y;
            fx = fy;
            improved = true;
            break;
          }
        }
      if (!improved) step *= 0.5;
    }
    if (fx > best_margin) {
      best_margin = fx;
      best_rotation = euler_zyz(x[0], x[1], x[2]);
    }
  }
  result.avoidance_margin = best_margin;
  result.blind_spot = best_margin > 0.0 || result.value == 0.0;
  if (result.blind_spot && result.value > 0.0) {
    result.value = 0.0;
    result.rotation = best_rotation;
  }
  return result;
}

double multisector_corner_mass_2d(int n, double lambda, double offset, const PathLossModel& model,
                                  double square_side) {
  model.validate();
  if (n < 2) throw DomainError("multisector_2d: n must be >= 2");
  if (!(lambda >= 3.0 * n * (1.0 - 1e-12))) throw DomainError("multisector_2d: lobes overlap, lambda must be >= 3n");
  const Domain square = Domain::square(square_side);
  const double s = 2.0 / model.eta;
  const double g = 3.0 * lambda / n;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * pi * k / n + offset;
    const Vec3 u{std::cos(a), std::sin(a), 0.0};
    const double exit = ray_exit_distance(square, {0.0, 0.0, 0.0}, u);
    if (exit > 0.0) sum += specfn::lower_incomplete_gamma(s, model.beta * std::pow(exit, model.eta) / (g * g));
  }
  return 2.0 * pi * std::pow(g, 2.0 * s - 2.0) / (n * model.eta * std::pow(model.beta, s)) * sum;
}

Multisector2dMinimum min_multisector_corner_mass_2d(int n, double lambda, const PathLossModel& model,
                                                    double square_side, int grid_points) {
  if (grid_points < 2) throw DomainError("multisector_2d: grid needs at least 2 points");
  const double period = 2.0 * pi / n;
  const double h = period / grid_points;
  Multisector2dMinimum best{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < grid_points; ++i) {
    const double x = i * h;
    const double v = multisector_corner_mass_2d(n, lambda, x, model, square_side);
    if (v < best.value) best = {v, x};
  }
  // Golden-section refinement inside the neighbouring grid cells.
  double lo = best.offset - h, hi = best.offset + h;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  auto eval = [&](double x) {
    const double wrapped = std::fmod(std::fmod(x, period) + period, period);
    return multisector_corner_mass_2d(n, lambda, wrapped, model, square_side);
  };
  double c = hi - ratio * (hi - lo), d = lo + ratio * (hi - lo);
  double fc = eval(c), fd = eval(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = eval(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  const double fx = eval(x);
  if (fx < best.value) best = {fx, std::fmod(std::fmod(x, period) + period, period)};
  return best;
}

}  // namespace anisonet::boundary
