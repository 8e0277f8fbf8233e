#pragma once

// Minimum-energy configurations of n unit charges on the sphere, used to spread antenna lobes evenly.

#include <cstdint>
#include <vector>

#include "anisonet/gain.hpp"

namespace anisonet::thomson {

using gain::OrientationSet;

struct ThomsonOptions {
  int restarts = 20;
  double tol = 1e-8;          // tangential gradient norm at return
  int max_iterations = 200000;
  std::uint64_t seed = 1;
};

/// sum_{i<j} 1 / |x_i - x_j|. Throws DomainError for fewer than two points or coincident points.
double coulomb_energy(const OrientationSet& points);

struct Relaxation {
  std::vector<Vec3> points;
  double energy = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  std::vector<double> energy_trace;  // energy after every accepted step, starting at the initial energy
};

/// Projected gradient descent with an adaptive step from the given start. The energy never increases
/// by more than 64 ulp of its value; steps inside that band are accepted only if they shrink the gradient.
Relaxation relax_points(std::vector<Vec3> start, double tol, int max_iterations);

/// Best local minimum over `restarts` seeded random starts. Throws ConvergenceError if no restart
/// reaches the gradient tolerance.
OrientationSet thomson_points(int n, const ThomsonOptions& options = {});

}  // namespace anisonet::thomson
