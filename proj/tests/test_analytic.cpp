#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "anisonet/analytic.hpp"
#include "anisonet/errors.hpp"

using namespace anisonet;
using namespace anisonet::analytic;
using gain::GainPattern;
using specfn::pi;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Mass with the radial integral done numerically and node j's orientation averaged:
/// 2 pi int sin(t) dt (1/2) int sin(t') dt' int r^2 exp(-beta r^eta / (G_i(t) G_j(t'))) dr.
double mass_by_direct_quadrature(const GainPattern& gi, const GainPattern& gj, double eta, double beta) {
  const double rmax = std::pow(gain::max_gain(gi) * gain::max_gain(gj) * 45.0 / beta, 1.0 / eta);
  auto radial = [&](double g) {
    if (g <= 0.0) return 0.0;
    return simpson([&](double r) { return r * r * std::exp(-beta * std::pow(r, eta) / g); }, 0.0, rmax, 1200);
  };
  auto inner = [&](double t) {
    const double a = gain::polar_gain(gi, t);
    return std::sin(t) * 0.5 * simpson([&](double tp) { return std::sin(tp) * radial(a * gain::polar_gain(gj, tp)); }, 0.0, pi, 160);
  };
  return 2.0 * pi * simpson(inner, 0.0, pi, 160);
}

}  // namespace

TEST_CASE("homogeneous mass reference values") {
  const auto iso = GainPattern::isotropic();
  CHECK(homogeneous_mass(iso, iso, {3.0, 1.0}).mass == doctest::Approx(4 * pi / 3).epsilon(1e-13));
  CHECK(homogeneous_mass(iso, iso, {2.0, 1.0}).mass == doctest::Approx(std::pow(pi, 1.5)).epsilon(1e-13));
  const auto c = GainPattern::cardioid(1.0);
  const auto m = homogeneous_mass(c, c, {3.0, 1.0});
  CHECK(m.mass == doctest::Approx(4 * pi / 3).epsilon(1e-12));
  CHECK(m.method == Method::closed);
  CHECK(homogeneous_mass(GainPattern::narrow(2.0), iso, {2.0, 1.0}).method == Method::quadrature);
  CHECK_THROWS_AS(homogeneous_mass(iso, iso, {0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(homogeneous_mass(iso, iso, {2.0, -1.0}), DomainError);
}

TEST_CASE("separated mass equals direct quadrature of the pair integral") {
  struct Case {
    GainPattern a, b;
    double eta, beta;
  };
  const Case cases[] = {{GainPattern::cardioid(0.6), GainPattern::isotropic(), 2.5, 1.3},
                        {GainPattern::cardioid(0.6), GainPattern::donut(2.0), 2.0, 1.0},
                        {GainPattern::donut(3.0), GainPattern::donut(1.0), 4.0, 0.7}};
  for (const auto& c : cases) {
    const double direct = mass_by_direct_quadrature(c.a, c.b, c.eta, c.beta);
    CHECK(homogeneous_mass(c.a, c.b, {c.eta, c.beta}).mass == doctest::Approx(direct).epsilon(1e-6));
  }
}

TEST_CASE("mass factorizes over tx and rx patterns") {
  const auto iso = GainPattern::isotropic();
  const GainPattern a = GainPattern::donut(4.0), b = GainPattern::narrow(3.0);
  for (double eta : {2.0, 3.5, 5.0}) {
    const PathLossModel m{eta, 2.0};
    const double lhs = homogeneous_mass(a, b, m).mass * homogeneous_mass(iso, iso, m).mass;
    const double rhs = homogeneous_mass(a, iso, m).mass * homogeneous_mass(iso, b, m).mass;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("mixed directional and isotropic links are inferior") {
  const auto iso = GainPattern::isotropic();
  const auto sec = GainPattern::sector(0.4);
  const PathLossModel low{2.0, 1.0}, high{5.0, 1.0};
  CHECK(homogeneous_mass(sec, sec, low).mass > homogeneous_mass(sec, iso, low).mass);
  CHECK(homogeneous_mass(sec, iso, low).mass > homogeneous_mass(iso, iso, low).mass);
  CHECK(homogeneous_mass(sec, sec, high).mass < homogeneous_mass(sec, iso, high).mass);
  CHECK(homogeneous_mass(sec, iso, high).mass < homogeneous_mass(iso, iso, high).mass);
}

TEST_CASE("mean degree and pair probability") {
  const auto iso = GainPattern::isotropic();
  const auto m = homogeneous_mass(iso, iso, {3.0, 1.0});
  const auto d = mean_degree_and_pair_probability(m, 0.1, 1000.0, 100);
  CHECK(d.mean_degree == doctest::Approx(0.41888).epsilon(1e-5));
  CHECK(d.pair_probability == doctest::Approx(4 * pi / 3 / 1000.0));
  CHECK(d.finite_mean_degree == doctest::Approx(99.0 / 1000.0 * 4 * pi / 3));
  CHECK(d.finite_mean_degree == doctest::Approx(0.41469).epsilon(1e-5));
  MassResult zero = m;
  zero.mass = 0.0;
  const auto z = mean_degree_and_pair_probability(zero, 0.1, 1000.0, 100);
  CHECK(z.mean_degree == 0.0);
  CHECK(z.pair_probability == 0.0);
  CHECK_THROWS_AS(mean_degree_and_pair_probability(m, 0.0, 1000.0, 100), DomainError);
}

TEST_CASE("full connectivity probability") {
  CHECK(pfc_homogeneous(100, 1.0, 1e6).clamped == doctest::Approx(1.0));
  CHECK(pfc_homogeneous(100, 1.0, std::log(100.0)).clamped == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pfc_homogeneous(100, 1.0, std::log(1000.0)).clamped == doctest::Approx(0.9));
  const auto low = pfc_homogeneous(100, 0.01, 1.0);
  CHECK(low.clamped == 0.0);
  CHECK(low.raw < 0.0);
}

TEST_CASE("isotropic boundary masses") {
  const PathLossModel m{3.0, 1.0};
  CHECK(boundary_mass_isotropic(m, 4 * pi) == doctest::Approx(4 * pi / 3));
  CHECK(boundary_mass_isotropic(m, pi / 2) == doctest::Approx(pi / 6).epsilon(1e-13));
  CHECK(boundary_mass_isotropic({2.4, 0.8}, 2 * pi) ==
        doctest::Approx(0.5 * homogeneous_mass(GainPattern(), GainPattern(), {2.4, 0.8}).mass));
  CHECK_THROWS_AS(boundary_mass_isotropic(m, 0.0), DomainError);
  CHECK_THROWS_AS(boundary_mass_isotropic(m, 4 * pi + 0.1), DomainError);
}

TEST_CASE("radial truncation radius") {
  const PathLossModel m{2.0, 1.0};
  const double r = radial_truncation(m, 4.0, 1e-10);
  CHECK(std::exp(-m.beta * r * r / 4.0) == doctest::Approx(1e-13).epsilon(1e-9));
  CHECK(radial_truncation({2.0, 4.0}, 4.0, 1e-10) < r);
}

TEST_CASE("sector scaling exponent is 1 - 3/eta") {
  std::vector<double> nus;
  for (double nu = 0.02; nu <= 0.1 + 1e-12; nu += 0.01) nus.push_back(nu);
  CHECK(std::fabs(fit_scaling_exponent(ScalingFamily::sector, 2.0, nus) + 0.5) <= 0.02);
  CHECK(std::fabs(fit_scaling_exponent(ScalingFamily::sector, 3.0, nus)) < 1e-6);
  CHECK(std::fabs(fit_scaling_exponent(ScalingFamily::sector, 6.0, nus) - 0.5) <= 0.02);
  const std::vector<double> few{0.02, 0.03, 0.04, 0.05};
  CHECK_THROWS_AS(fit_scaling_exponent(ScalingFamily::sector, 2.0, few), ConvergenceError);
}

TEST_CASE("mass scales as omega^(2 - 6/eta) for equal patterns") {
  for (double eta : {2.0, 4.0, 6.0}) {
    std::vector<double> lo, lm;
    for (double nu = 0.02; nu <= 0.1 + 1e-12; nu += 0.01) {
      const auto p = GainPattern::sector(nu);
      lo.push_back(std::log(gain::half_max_solid_angle(p)));
      lm.push_back(std::log(homogeneous_mass(p, p, {eta, 1.0}).mass));
    }
    CHECK(std::fabs(least_squares_slope(lo, lm) - (2.0 - 6.0 / eta)) <= 0.05);
  }
}

TEST_CASE("least squares slope") {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  CHECK(least_squares_slope(x, y) == doctest::Approx(2.0));
  const std::vector<double> flat{1, 1, 1};
  CHECK_THROWS_AS(least_squares_slope(flat, flat), ConvergenceError);
}
