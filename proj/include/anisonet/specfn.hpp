#pragma once

// Special functions and adaptive quadrature shared by every analytic formula in the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "anisonet/errors.hpp"
#include "anisonet/vec3.hpp"

namespace anisonet::specfn {

inline constexpr double pi = 3.141592653589793238462643383279502884;

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 2000;

  /// Throws DomainError unless at least one tolerance is positive and max_subdivisions >= 1.
  void validate() const;
};

/// Gamma function for x > 0.
double gamma_fn(double x);

/// Lower incomplete gamma function gamma(s, x) = int_0^x t^{s-1} e^{-t} dt for s > 0, x >= 0.
/// x may be +infinity, in which case Gamma(s) is returned.
double lower_incomplete_gamma(double s, double x);

/// Boundary circle of a spherical cap: the set of unit vectors at angle `half_angle` from `axis`.
/// A zero half-angle marks an isolated point feature (a gain zero or peak) of the integrand.
struct Cap {
  Vec3 axis;
  double half_angle = 0.0;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

/// 15-point Kronrod estimate with the QUADPACK error heuristic against the embedded 7-point Gauss rule.
template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  double abs_sum = std::fabs(kronrod);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    kronrod += kronrod_weights[j] * (f1[j] + f2[j]);
    abs_sum += kronrod_weights[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kronrod_weights[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j) asc += kronrod_weights[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));

  const double value = kronrod * half;
  const double resabs = abs_sum * std::fabs(half);
  const double resasc = asc * std::fabs(half);
  double err = std::fabs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, value, err};
}

/// Sorted breakpoints strictly inside (a, b), with near-duplicates merged.
std::vector<double> clean_breakpoints(double a, double b, std::span<const double> points);

/// Azimuths at which the cap boundaries cross the colatitude circle `theta`.
void cap_azimuth_crossings(std::span<const Cap> caps, double theta, std::vector<double>& out);

/// Colatitudes at which the integrand may lose smoothness because of the given caps.
std::vector<double> cap_polar_breakpoints(std::span<const Cap> caps);

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b], pre-split at `breakpoints`.
/// Returns 0 when a == b. Throws QuadratureError when the subdivision budget is exhausted.
template <class F>
double integrate_1d(F&& f, double a, double b, const QuadratureSpec& spec = {},
                    std::span<const double> breakpoints = {}) {
  if (!(a <= b)) throw DomainError("integrate_1d: requires a <= b");
  if (a == b) return 0.0;
  spec.validate();

  std::priority_queue<detail::Segment> heap;
  double total = 0.0;
  double total_error = 0.0;
  double previous = a;
  std::vector<double> cuts = detail::clean_breakpoints(a, b, breakpoints);
  cuts.push_back(b);
  for (double cut : cuts) {
    detail::Segment s = detail::gauss_kronrod_15(f, previous, cut);
    total += s.value;
    total_error += s.error;
    heap.push(s);
    previous = cut;
  }

  // Segments too narrow to bisect are dropped from the heap but keep contributing their error.
  int subdivisions = 0;
  while (true) {
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
    if (total_error <= target) return total;
    if (heap.empty()) break;
    detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(mid))) {
      continue;
    }
    if (subdivisions >= spec.max_subdivisions) {
      heap.push(worst);
      break;
    }
    ++subdivisions;
    const detail::Segment left = detail::gauss_kronrod_15(f, worst.a, mid);
    const detail::Segment right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (!std::isfinite(total)) throw QuadratureError("integrate_1d: integrand is not finite");
  }
  throw QuadratureError("integrate_1d: tolerance not met after " + std::to_string(subdivisions) +
                        " subdivisions (error estimate " + std::to_string(total_error) + ")");
}

/// Nested adaptive integral of f(theta, phi) over a (theta, phi) rectangle. The integrand is taken as
/// given: callers include the sin(theta) measure themselves. Cap boundaries listed in `caps` are used
/// as breakpoints so that integrands with jumps or kinks along those circles converge.
template <class F>
double integrate_patch(F&& f, std::array<double, 2> theta_range, std::array<double, 2> phi_range,
                       const QuadratureSpec& spec = {}, std::span<const Cap> caps = {}) {
  if (theta_range[0] < -1e-15 || theta_range[1] > pi + 1e-12 || phi_range[0] < -1e-15 ||
      phi_range[1] > 2.0 * pi + 1e-12)
    throw DomainError("integrate_patch: ranges must lie within [0, pi] x [0, 2pi]");
  spec.validate();
  const double phi_width = phi_range[1] - phi_range[0];
  QuadratureSpec inner = spec;
  inner.abs_tol = spec.abs_tol / std::max(1.0, 4.0 * (theta_range[1] - theta_range[0]));
  inner.rel_tol = spec.rel_tol * 0.25;

  std::vector<double> crossings;
  auto outer = [&](double theta) {
    crossings.clear();
    detail::cap_azimuth_crossings(caps, theta, crossings);
    auto row = [&](double phi) { return f(theta, phi); };
    if (phi_width == 0.0) return 0.0;
    return integrate_1d(row, phi_range[0], phi_range[1], inner, std::span<const double>(crossings));
  };
  const std::vector<double> polar = detail::cap_polar_breakpoints(caps);
  return integrate_1d(outer, theta_range[0], theta_range[1], spec, std::span<const double>(polar));
}

}  // namespace anisonet::specfn
