#include "anisonet/thomson.hpp"

#include <cmath>
#include <limits>

#include "anisonet/errors.hpp"
#include "anisonet/parallel.hpp"
#include "anisonet/rng.hpp"

namespace anisonet::thomson {

namespace {

double energy_of(const std::vector<Vec3>& x) {
  double e = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double d = norm(x[i] - x[j]);
      if (!(d > 0.0)) throw DomainError("coulomb_energy: coincident points");
      e += 1.0 / d;
    }
  return e;
}

/// Tangential components of the Coulomb force (minus the energy gradient) on every charge.
std::vector<Vec3> tangential_force(const std::vector<Vec3>& x) {
  std::vector<Vec3> f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const Vec3 d = x[i] - x[j];
      const double r = norm(d);
      const Vec3 c = (1.0 / (r * r * r)) * d;
      f[i] = f[i] + c;
      f[j] = f[j] - c;
    }
  for (std::size_t i = 0; i < x.size(); ++i) f[i] = f[i] - dot(f[i], x[i]) * x[i];
  return f;
}

double total_norm(const std::vector<Vec3>& f) {
  double s = 0.0;
  for (const Vec3& v : f) s += dot(v, v);
  return std::sqrt(s);
}

}  // namespace

double coulomb_energy(const OrientationSet& points) {
  if (points.size() < 2) throw DomainError("coulomb_energy: needs at least two points");
  return energy_of(points.vectors());
}

Relaxation relax_points(std::vector<Vec3> start, double tol, int max_iterations) {
  if (start.size() < 2) throw DomainError("relax_points: needs at least two points");
  for (Vec3& p : start) p = normalized(p);
  Relaxation out;
  out.points = std::move(start);
  out.energy = energy_of(out.points);
  out.energy_trace.push_back(out.energy);
  std::vector<Vec3> force = tangential_force(out.points);
  out.gradient_norm = total_norm(force);
  double step = 0.1 / static_cast<double>(out.points.size());
  std::vector<Vec3> trial(out.points.size());
  while (out.gradient_norm > tol && out.iterations < max_iterations && step > 1e-18) {
    ++out.iterations;
    for (std::size_t i = 0; i < trial.size(); ++i) trial[i] = normalized(out.points[i] + step * force[i]);
    double e = std::numeric_limits<double>::infinity();
    try {
      e = energy_of(trial);
    } catch (const DomainError&) {
    }
    // Within roundoff of the current energy the decrease is not resolvable; fall back to the gradient.
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * out.energy;
    bool accept = e < out.energy - roundoff;
    std::vector<Vec3> trial_force;
    if (!accept && e <= out.energy + roundoff) {
      trial_force = tangential_force(trial);
      accept = total_norm(trial_force) < out.gradient_norm;
    }
    if (accept) {
      out.points.swap(trial);
      out.energy = e;
      out.energy_trace.push_back(out.energy);
      force = trial_force.empty() ? tangential_force(out.points) : std::move(trial_force);
      out.gradient_norm = total_norm(force);
      step *= 1.2;
    } else {
      step *= 0.5;
    }
  }
  return out;
}

OrientationSet thomson_points(int n, const ThomsonOptions& options) {
  if (n < 2) throw DomainError("thomson_points: n must be >= 2");
  if (options.restarts < 1) throw DomainError("thomson_points: restarts must be >= 1");
  if (!(options.tol > 0.0)) throw DomainError("thomson_points: tol must be > 0");

  std::vector<Relaxation> runs(options.restarts);
  parallel_for(runs.size(), [&](std::size_t r) {
    CounterRng rng = CounterRng::stream(options.seed, {0x7401, r});
    std::vector<Vec3> start(n);
    for (Vec3& p : start) p = rng.unit_vector();
    runs[r] = relax_points(std::move(start), options.tol, options.max_iterations);
  });

  const Relaxation* best = nullptr;
  for (const Relaxation& run : runs)
    if (run.gradient_norm <= options.tol && (!best || run.energy < best->energy)) best = &run;
  if (!best) throw ConvergenceError("thomson_points: no restart reached the gradient tolerance");
  return OrientationSet::from_unnormalized(best->points);
}

}  // namespace anisonet::thomson
