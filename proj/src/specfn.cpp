#include "anisonet/specfn.hpp"

#include <cmath>

namespace anisonet::specfn {

void QuadratureSpec::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) throw DomainError("QuadratureSpec: tolerances must be >= 0");
  if (!(abs_tol > 0.0 || rel_tol > 0.0)) throw DomainError("QuadratureSpec: one tolerance must be positive");
  if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: requires x > 0");
  return std::tgamma(x);
}

namespace {

// Series expansion, converges quickly for x < s + 1.
double lower_gamma_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + s * std::log(x));
}

// Upper incomplete gamma by the modified Lentz continued fraction, for x >= s + 1.
double upper_gamma_continued_fraction(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + s * std::log(x)) * h;
}

}  // namespace

double lower_incomplete_gamma(double s, double x) {
  if (!(s > 0.0)) throw DomainError("lower_incomplete_gamma: requires s > 0");
  if (!(x >= 0.0)) throw DomainError("lower_incomplete_gamma: requires x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(s);
  if (x < s + 1.0) return lower_gamma_series(s, x);
  return std::tgamma(s) - upper_gamma_continued_fraction(s, x);
}

namespace detail {

std::vector<double> clean_breakpoints(double a, double b, std::span<const double> points) {
  std::vector<double> out;
  const double margin = 1e-13 * std::max(1.0, std::fabs(b - a));
  for (double p : points)
    if (std::isfinite(p) && p > a + margin && p < b - margin) out.push_back(p);
  std::sort(out.begin(), out.end());
  std::vector<double> merged;
  for (double p : out)
    if (merged.empty() || p - merged.back() > margin) merged.push_back(p);
  return merged;
}

void cap_azimuth_crossings(std::span<const Cap> caps, double theta, std::vector<double>& out) {
  const double st = std::sin(theta), ct = std::cos(theta);
  for (const Cap& cap : caps) {
    const auto [tk, pk] = to_spherical(cap.axis);
    const double stk = std::sin(tk), ctk = std::cos(tk);
    // The cap axis azimuth is where the circle is closest to the axis (point features, kinks).
    for (int m = -1; m <= 1; ++m) out.push_back(pk + 2.0 * pi * m);
    if (st * stk < 1e-14) continue;
    const double c = (std::cos(cap.half_angle) - ct * ctk) / (st * stk);
    if (c < -1.0 || c > 1.0) continue;
    const double delta = std::acos(c);
    for (int m = -1; m <= 1; ++m) {
      out.push_back(pk + delta + 2.0 * pi * m);
      out.push_back(pk - delta + 2.0 * pi * m);
    }
  }
}

std::vector<double> cap_polar_breakpoints(std::span<const Cap> caps) {
  std::vector<double> out;
  for (const Cap& cap : caps) {
    const double tk = to_spherical(cap.axis)[0];
    const double a = cap.half_angle;
    out.insert(out.end(), {tk, tk - a, a - tk, tk + a, 2.0 * pi - tk - a});
  }
  return out;
}

}  // namespace detail
}  // namespace anisonet::specfn
