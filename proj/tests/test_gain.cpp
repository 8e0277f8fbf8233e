#include <doctest.h>

#include <cmath>
#include <random>

#include "anisonet/errors.hpp"
#include "anisonet/gain.hpp"
#include "anisonet/thomson.hpp"

using namespace anisonet;
using namespace anisonet::gain;
using specfn::pi;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

OrientationSet axes6() {
  return OrientationSet({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
}

}  // namespace

TEST_CASE("gain values at reference angles") {
  CHECK(gain_at(GainPattern::isotropic(), normalized(Vec3{0.3, -0.4, 0.2})) == 1.0);
  const auto c = GainPattern::cardioid(1.0);
  CHECK(gain_at(c, {0, 0, 1}) == doctest::Approx(2.0));
  CHECK(gain_at(c, {0, 0, -1}) == doctest::Approx(0.0));
  CHECK(polar_gain(GainPattern::narrow(2.0), pi / 4) == 0.0);
  CHECK(polar_gain(GainPattern::narrow(2.0), pi / 4 - 1e-9) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(polar_gain(GainPattern::sector(0.5), 0.1) == doctest::Approx(2.0));
  CHECK(polar_gain(GainPattern::sector(0.5), pi / 2 + 0.01) == 0.0);
}

TEST_CASE("factories reject parameters outside their ranges") {
  CHECK_THROWS_AS(GainPattern::cardioid(1.1), DomainError);
  CHECK_THROWS_AS(GainPattern::cardioid(-0.1), DomainError);
  CHECK_THROWS_AS(GainPattern::donut(0.0), DomainError);
  CHECK_THROWS_AS(GainPattern::narrow(0.9), DomainError);
  CHECK_THROWS_AS(GainPattern::sector(0.0), DomainError);
  CHECK_THROWS_AS(GainPattern::sector(1.01), DomainError);
  CHECK_THROWS_AS(OrientationSet({{1.0, 0.0, 1e-3}}), DomainError);
  // Axis lobes are 90 degrees apart; cosine lobes with lambda = 1.5 are 120 degrees wide.
  CHECK_THROWS_AS(GainPattern::multilobe(1.5, axes6(), LobeProfile::cosine), DomainError);
  CHECK_NOTHROW(GainPattern::multilobe(2.0, axes6(), LobeProfile::cosine));
}

TEST_CASE("amplitudes") {
  CHECK(donut_amplitude(2.0) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(donut_amplitude(1.0) == doctest::Approx(4.0 / pi).epsilon(1e-13));
  // At lambda = 2: 2 * 3 / (2 sin(pi/4) - 1).
  CHECK(narrow_amplitude(2.0) == doctest::Approx(6.0 / (std::sqrt(2.0) - 1.0)).epsilon(1e-13));
  CHECK(narrow_amplitude(1.0) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(narrow_amplitude(1.0 + 1e-6) == doctest::Approx(narrow_amplitude(1.0 + 2e-5)).epsilon(1e-4));
}

TEST_CASE("normalization of reference patterns") {
  CHECK(verify_normalization(GainPattern::isotropic()) == doctest::Approx(4 * pi).epsilon(1e-12));
  CHECK(verify_normalization(GainPattern::sector(0.5)) == doctest::Approx(4 * pi).epsilon(1e-10));
  CHECK(verify_normalization(GainPattern::narrow(3.0)) == doctest::Approx(4 * pi).epsilon(1e-10));
  CHECK(verify_normalization(GainPattern::donut(37.5)) == doctest::Approx(4 * pi).epsilon(1e-10));
  const auto pts = thomson::thomson_points(5);
  CHECK(verify_normalization(GainPattern::multilobe(2.0, pts, LobeProfile::sectorized)) ==
        doctest::Approx(4 * pi).epsilon(1e-9));
  CHECK(verify_normalization(GainPattern::multilobe(2.5, pts, LobeProfile::cosine)) ==
        doctest::Approx(4 * pi).epsilon(1e-9));
}

TEST_CASE("normalization property over random parameters") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const GainPattern patterns[] = {GainPattern::cardioid(u(gen)), GainPattern::donut(0.05 + 60.0 * u(gen)),
                                    GainPattern::narrow(1.0 + 30.0 * u(gen)), GainPattern::sector(0.01 + 0.99 * u(gen))};
    for (const auto& p : patterns) CHECK(verify_normalization(p) == doctest::Approx(4 * pi).epsilon(1e-7));
  }
}

TEST_CASE("S functional at eta = 3 is 2 for every family") {
  const GainPattern patterns[] = {GainPattern::isotropic(), GainPattern::cardioid(0.7), GainPattern::donut(5.0),
                                  GainPattern::narrow(4.0), GainPattern::sector(0.2),
                                  GainPattern::multilobe(3.0, axes6(), LobeProfile::sectorized)};
  for (const auto& p : patterns) CHECK(s_functional_quadrature(p, 3.0) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("closed forms against independent oracles") {
  CHECK(*s_functional_closed(GainPattern::cardioid(1.0), 2.0) == doctest::Approx(std::pow(2.0, 2.5) / 2.5).epsilon(1e-13));
  CHECK(*s_functional_closed(GainPattern::cardioid(0.0), 4.2) == 2.0);
  CHECK(*s_functional_closed(GainPattern::cardioid(1e-7), 4.2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(*s_functional_closed(GainPattern::sector(0.5), 2.0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(s_functional_quadrature(GainPattern::sector(0.5), 2.0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-10));
  CHECK_FALSE(s_functional_closed(GainPattern::narrow(2.0), 2.0).has_value());

  // Donut m = 2, eta = 2: int sin(t) (1.5 sin^2 t)^{3/2} dt by Simpson.
  const double oracle = simpson([](double t) { return std::sin(t) * std::pow(1.5 * std::sin(t) * std::sin(t), 1.5); },
                                0.0, pi, 4000);
  CHECK(*s_functional_closed(GainPattern::donut(2.0), 2.0) == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(oracle == doctest::Approx(2.1643).epsilon(1e-4));
}

TEST_CASE("closed and quadrature agree over eta and parameter grids") {
  for (double eta : {2.0, 2.5, 3.0, 4.0, 6.0}) {
    for (double e : {0.0, 0.1, 0.5, 0.9, 1.0}) {
      const auto p = GainPattern::cardioid(e);
      CHECK(*s_functional_closed(p, eta) == doctest::Approx(s_functional_quadrature(p, eta)).epsilon(1e-8));
    }
    for (double m : {0.5, 1.0, 2.0, 8.0, 50.0}) {
      const auto p = GainPattern::donut(m);
      CHECK(*s_functional_closed(p, eta) == doctest::Approx(s_functional_quadrature(p, eta)).epsilon(1e-8));
    }
    for (double nu : {0.05, 0.3, 0.5, 1.0}) {
      const auto p = GainPattern::sector(nu);
      CHECK(*s_functional_closed(p, eta) == doctest::Approx(s_functional_quadrature(p, eta)).epsilon(1e-8));
    }
  }
}

TEST_CASE("multi-lobe S scales as n^(1 - 3/eta)") {
  const double lambda = 3.0;
  const auto single = GainPattern::narrow(lambda);
  for (int n : {2, 4, 8}) {
    const auto pts = thomson::thomson_points(n);
    const auto ml = GainPattern::multilobe(lambda, pts, LobeProfile::cosine);
    for (double eta : {2.0, 3.0, 6.0}) {
      const double expected = std::pow(n, 1.0 - 3.0 / eta) * s_functional_quadrature(single, eta);
      CHECK(s_functional_quadrature(ml, eta) == doctest::Approx(expected).epsilon(1e-8));
      CHECK(*s_functional_closed(ml, eta) == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("sectorized multi-lobe closed form") {
  const auto pts = thomson::thomson_points(4);
  const auto ml = GainPattern::multilobe(2.5, pts, LobeProfile::sectorized);
  for (double eta : {2.0, 4.0}) CHECK(*s_functional_closed(ml, eta) == doctest::Approx(s_functional_quadrature(ml, eta)).epsilon(1e-8));
}

TEST_CASE("sector S is monotone in nu on either side of eta = 3") {
  double prev_low = 0.0, prev_high = INFINITY;
  for (double nu = 1.0; nu > 0.05; nu -= 0.05) {
    const double low = *s_functional_closed(GainPattern::sector(nu), 2.0);
    const double high = *s_functional_closed(GainPattern::sector(nu), 5.0);
    CHECK(low >= prev_low);
    CHECK(high <= prev_high);
    prev_low = low;
    prev_high = high;
  }
}

TEST_CASE("half-maximum solid angle") {
  CHECK(half_max_solid_angle(GainPattern::isotropic()) == doctest::Approx(4 * pi));
  const double s = std::sin(pi / 12.0);
  CHECK(half_max_solid_angle(GainPattern::narrow(2.0)) == doctest::Approx(4 * pi * s * s).epsilon(1e-6));
  CHECK(half_max_solid_angle(GainPattern::narrow(2.0)) == doctest::Approx(0.8418).epsilon(1e-3));
  // Sector: the whole support is at the maximum.
  CHECK(half_max_solid_angle(GainPattern::sector(0.3)) == doctest::Approx(2 * pi * (1 - std::cos(0.3 * pi))).epsilon(1e-6));
  // Cardioid eps = 1: G >= 1 exactly on the upper hemisphere.
  CHECK(half_max_solid_angle(GainPattern::cardioid(1.0)) == doctest::Approx(2 * pi).epsilon(1e-6));
  const double asymptote = std::sqrt(32.0 * pi * pi * std::log(2.0) / 1e4);
  CHECK(half_max_solid_angle(GainPattern::donut(1e4)) == doctest::Approx(asymptote).epsilon(0.05));
}

TEST_CASE("describe labels") {
  CHECK(describe(GainPattern::cardioid(1.0)) == "cardioid(epsilon=1)");
  CHECK(describe(GainPattern::isotropic()) == "isotropic");
  CHECK(describe(GainPattern::narrow(2.0)) == "narrow(lambda=2)");
  CHECK(describe(GainPattern::multilobe(2.0, axes6(), LobeProfile::cosine)).find(',') == std::string::npos);
}

TEST_CASE("orientation sets") {
  const auto set = OrientationSet::from_unnormalized({{2, 0, 0}, {0, 3, 0}});
  CHECK(set[0].x == 1.0);
  CHECK(set.min_separation() == doctest::Approx(pi / 2));
  const auto r = set.rotated(rotation_z(0.3));
  CHECK(r.min_separation() == doctest::Approx(pi / 2));
}
