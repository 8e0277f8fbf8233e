#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "anisonet/specfn.hpp"

using namespace anisonet;
using namespace anisonet::specfn;

namespace {

/// Composite Simpson rule with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("gamma_fn at known points") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
  CHECK(gamma_fn(1.5) == doctest::Approx(std::sqrt(pi) / 2.0).epsilon(1e-13));
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("gamma_fn recurrence on a grid") {
  for (double x = 0.1; x <= 10.0 + 1e-12; x += 0.05)
    CHECK(std::fabs(gamma_fn(x + 1.0) - x * gamma_fn(x)) <= 1e-11 * gamma_fn(x + 1.0));
}

TEST_CASE("lower incomplete gamma elementary cases") {
  for (double x : {0.0, 1.0, 5.0}) CHECK(lower_incomplete_gamma(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
  for (double s : {0.3, 1.0, 2.5}) CHECK(lower_incomplete_gamma(s, 0.0) == 0.0);
  CHECK_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(lower_incomplete_gamma(1.0, -0.1), DomainError);
}

TEST_CASE("lower incomplete gamma at (0.5, 1) against two oracles") {
  const double erf_oracle = std::sqrt(pi) * std::erf(1.0);
  // t = u^2 removes the endpoint singularity: gamma(1/2, 1) = 2 int_0^1 exp(-u^2) du.
  const double simpson_oracle = 2.0 * simpson([](double u) { return std::exp(-u * u); }, 0.0, 1.0, 2000);
  CHECK(erf_oracle == doctest::Approx(simpson_oracle).epsilon(1e-12));
  CHECK(lower_incomplete_gamma(0.5, 1.0) == doctest::Approx(erf_oracle).epsilon(1e-10));
  CHECK(lower_incomplete_gamma(0.5, 1.0) == doctest::Approx(1.4936482656).epsilon(1e-10));
}

TEST_CASE("lower incomplete gamma against Simpson on the defining integral") {
  for (double s : {1.5, 2.0, 3.0, 0.75 + 1.0})
    for (double x : {0.3, 1.7, 4.0, 12.0}) {
      // t = u^2 keeps the integrand smooth at the origin.
      const double oracle =
          2.0 * simpson([s](double u) { return std::pow(u, 2.0 * s - 1.0) * std::exp(-u * u); }, 0.0, std::sqrt(x), 20000);
      CHECK(lower_incomplete_gamma(s, x) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("lower incomplete gamma tends to gamma and is monotone") {
  for (double s : {0.5, 1.0, 1.5}) CHECK(std::fabs(lower_incomplete_gamma(s, 50.0) - gamma_fn(s)) < 1e-10);
  CHECK(lower_incomplete_gamma(1.5, INFINITY) == doctest::Approx(gamma_fn(1.5)));
  for (double s : {0.33, 1.0, 1.5, 3.0}) {
    double prev = 0.0;
    for (double x = 0.0; x < 40.0; x += 0.37) {
      const double v = lower_incomplete_gamma(s, x);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("integrate_1d basic integrals") {
  CHECK(integrate_1d([](double t) { return std::sin(t); }, 0.0, pi) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_1d([](double r) { return 4.0 * pi * r * r * std::exp(-r * r * r); }, 0.0, 50.0) ==
        doctest::Approx(4.0 * pi / 3.0).epsilon(1e-10));
  CHECK(integrate_1d([](double) { return 1.0; }, 3.0, 3.0) == 0.0);
  CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 1.0, 0.0), DomainError);
}

TEST_CASE("integrate_1d cardioid integrand matches the closed form") {
  const double v = integrate_1d([](double t) { return std::sin(t) * std::pow(1.0 + std::cos(t), 1.5); }, 0.0, pi);
  CHECK(v == doctest::Approx(std::pow(2.0, 2.5) / 2.5).epsilon(1e-10));
}

TEST_CASE("integrate_1d splits at breakpoints of a discontinuous integrand") {
  const double edge = 0.3 * pi;
  auto step = [edge](double t) { return t < edge ? std::sin(t) : 0.0; };
  const std::vector<double> bps{edge};
  CHECK(integrate_1d(step, 0.0, pi, {}, bps) == doctest::Approx(1.0 - std::cos(edge)).epsilon(1e-12));
}

TEST_CASE("integrate_1d reports an exhausted budget") {
  QuadratureSpec tight{0.0, 1e-15, 3};
  CHECK_THROWS_AS(integrate_1d([](double t) { return std::sqrt(std::fabs(t - 0.3337)); }, 0.0, 1.0, tight),
                  QuadratureError);
  CHECK_THROWS_AS((QuadratureSpec{0.0, 0.0, 10}.validate()), DomainError);
  CHECK_THROWS_AS((QuadratureSpec{1e-8, 0.0, 0}.validate()), DomainError);
}

TEST_CASE("integrate_1d is linear on random polynomials") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  const QuadratureSpec spec{};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(6), q(6);
    for (auto& c : p) c = coef(gen);
    for (auto& c : q) c = coef(gen);
    const double alpha = coef(gen), beta = coef(gen);
    auto poly = [](const std::vector<double>& c) {
      return [c](double x) {
        double v = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
        return v;
      };
    };
    const auto fp = poly(p), fq = poly(q);
    const double a = -1.2, b = 2.1;
    const double lhs = integrate_1d([&](double x) { return alpha * fp(x) + beta * fq(x); }, a, b, spec);
    const double rhs = alpha * integrate_1d(fp, a, b, spec) + beta * integrate_1d(fq, a, b, spec);
    const double tol = 2.0 * std::max(spec.abs_tol, spec.rel_tol * std::fabs(lhs)) * (1.0 + std::fabs(alpha) + std::fabs(beta));
    CHECK(std::fabs(lhs - rhs) <= tol);
  }
}

TEST_CASE("integrate_patch solid angles") {
  auto area = [](double t, double) { return std::sin(t); };
  CHECK(integrate_patch(area, {0.0, pi}, {0.0, 2.0 * pi}) == doctest::Approx(4.0 * pi).epsilon(1e-12));
  CHECK(integrate_patch(area, {0.0, pi / 2}, {0.0, pi / 2}) == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK_THROWS_AS(integrate_patch(area, {0.0, 4.0}, {0.0, 1.0}), DomainError);
}

TEST_CASE("integrate_patch of cos(chi) over the octant reduces to a dot product") {
  const Vec3 axis = normalized(Vec3{1, 1, 1});
  auto f = [&](double t, double p) { return std::sin(t) * dot(axis, from_spherical(t, p)); };
  // int_octant r dOmega = (pi/4)(1,1,1).
  const double oracle = dot(axis, (pi / 4.0) * Vec3{1, 1, 1});
  CHECK(oracle == doctest::Approx(pi * std::sqrt(3.0) / 4.0).epsilon(1e-14));
  CHECK(integrate_patch(f, {0.0, pi / 2}, {0.0, pi / 2}) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("integrate_patch uses cap boundaries as breakpoints") {
  const Cap cap{normalized(Vec3{0.3, -0.2, 0.9}), 0.4};
  const Cap caps[] = {cap};
  auto inside = [&](double t, double p) {
    return angle_between(cap.axis, from_spherical(t, p)) < cap.half_angle ? std::sin(t) : 0.0;
  };
  const double v = integrate_patch(inside, {0.0, pi}, {0.0, 2.0 * pi}, {}, caps);
  CHECK(v == doctest::Approx(2.0 * pi * (1.0 - std::cos(0.4))).epsilon(1e-9));
}
