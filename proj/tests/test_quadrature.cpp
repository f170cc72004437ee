#include <doctest.h>

#include <cmath>

#include "stabgeo/quadrature.hpp"
#include "stabgeo/specialfn.hpp"

using namespace stabgeo;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("circle rule rejects bad sizes") {
  CHECK_THROWS_AS(circle_rule(4), InvalidArgument);
  CHECK_THROWS_AS(circle_rule(9), InvalidArgument);
}

TEST_CASE("circle rule constants and trig moments") {
  SphereRule r = circle_rule(64);
  auto one = integrate_sphere(r, [](const Vec&) { return 1.0; });
  CHECK(one.value == doctest::Approx(2 * kPi).epsilon(1e-14));
  auto cos2 = integrate_sphere(r, [](const Vec& u) { return u[0] * u[0]; });
  CHECK(cos2.value == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("antithetic pairing on every rule") {
  for (int d : {2, 3, 5}) {
    SphereRule r = d >= 4 ? sphere_rule(d, 64, 7u) : sphere_rule(d, d == 2 ? 16 : 8);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      bool found = false;
      for (std::size_t j = 0; j < r.nodes.size(); ++j) {
        double diff = 0;
        for (int k = 0; k < d; ++k) diff += std::fabs(r.nodes[i][k] + r.nodes[j][k]);
        if (diff < 1e-12 && r.weights[i] == r.weights[j]) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
    double sum = 0;
    for (double w : r.weights) sum += w;
    CHECK(sum == doctest::Approx(omega_d(d)).epsilon(1e-10));
    for (const Vec& u : r.nodes) CHECK(norm2(u) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sphere rule d=3 weights and z^2 moment") {
  SphereRule r = sphere_rule(3, 16);
  double sum = 0;
  for (double w : r.weights) sum += w;
  CHECK(sum == doctest::Approx(4 * kPi).epsilon(1e-10));
  auto z2 = integrate_sphere(r, [](const Vec& u) { return u[2] * u[2]; });
  CHECK(z2.value == doctest::Approx(4 * kPi / 3).epsilon(1e-10));
}

TEST_CASE("sphere rule d>=4 needs a seed and hits |u1| within noise") {
  CHECK_THROWS_AS(sphere_rule(5, 100), InvalidArgument);
  SphereRule r = sphere_rule(5, 50000, 7u);
  auto e = integrate_sphere(r, [](const Vec& u) { return std::fabs(u[0]); });
  double exact = cosine_transform_mass(5, 1.0);  // int |<u,e1>| du over S^4
  CHECK(std::fabs(e.value - exact) < 3.0 * e.error);
  CHECK(e.error < 0.05);
}

TEST_CASE("radial exp-power rules") {
  auto r1 = radial_rule_exp_power(1.0);
  auto e = integrate_radial(r1, [](double r) { return std::exp(-r); });
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));

  auto r2 = radial_rule_exp_power(2.0);
  auto g = integrate_radial(r2, [](double r) { return r * std::exp(-r * r); });
  CHECK(g.value == doctest::Approx(0.5).epsilon(1e-10));

  // int r^{d-1} e^{-r^alpha} dr = Gamma(d/alpha)/alpha; alpha=1, d=2 gives 1.
  auto h = integrate_radial(r1, [](double r) { return r * std::exp(-r); });
  CHECK(h.value == doctest::Approx(1.0).epsilon(1e-9));
  // and a fractional-alpha case against the closed form
  double alpha = 0.7;
  auto r3 = radial_rule_exp_power(alpha, 24);
  auto k = integrate_radial(r3, [&](double r) { return r * std::exp(-std::pow(r, alpha)) ; });
  CHECK(k.value == doctest::Approx(gamma_fn(2.0 / alpha) / alpha).epsilon(1e-9));
}

TEST_CASE("radial algebraic rule") {
  auto r = radial_rule_algebraic(3.0);
  auto e = integrate_radial(r, [](double t) { return std::pow(1.0 + t, -3.0); });
  CHECK(e.value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("nonfinite integrand reports the node") {
  SphereRule r = circle_rule(16);
  CHECK_THROWS_AS(
      integrate_sphere(r, [](const Vec&) { return std::numeric_limits<double>::infinity(); }),
      NumericalError);
}

TEST_CASE("doubling the level beats the reported error estimate") {
  auto smooth = [](const Vec& u) { return std::exp(u[0]) * (1.1 + u[1]); };
  SphereRule lo = circle_rule(32);
  SphereRule hi = circle_rule(64);
  auto a = integrate_sphere(lo, smooth);
  auto b = integrate_sphere(hi, smooth);
  CHECK(std::fabs(b.value - a.value) <= a.error + 1e-14);
}

TEST_SUITE_END();
