#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "stabgeo/geometry.hpp"
#include "stabgeo/onesided.hpp"
#include "stabgeo/rng.hpp"
#include "stabgeo/simulate.hpp"
#include "stabgeo/specialfn.hpp"

using namespace stabgeo;

namespace {

StableModel onesided1(double alpha, double w = 1.0) {
  return make_discrete(alpha, Kind::OneSided, {{1.0}}, {w});
}

StableModel onesided2(double alpha) {
  return make_discrete(alpha, Kind::OneSided, {{1, 0}, {0, 1}, {0.6, 0.8}}, {1.0, 0.5, 0.25});
}

}  // namespace

TEST_SUITE_BEGIN("onesided");

TEST_CASE("laplace transform basics") {
  StableModel m = onesided2(0.5);
  CHECK(laplace(m, {0, 0}) == doctest::Approx(1.0));
  StableModel m1 = onesided1(0.5);
  CHECK(laplace(m1, {4.0}) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(laplace(m, {1.0, -0.5}), InvalidArgument);
}

TEST_CASE("laplace transform vs Monte Carlo") {
  StableModel m = onesided2(0.5);
  SampleBatch b = sample_onesided(m, 1000000, 3u);
  Vec u{0.8, 1.3};
  double target = laplace(m, u);
  auto est = mc_functional(b, [&](const double* r) {
    return std::exp(-(r[0] * u[0] + r[1] * u[1]));
  });
  CHECK(std::fabs(est.mean - target) < 3 * est.se);
}

TEST_CASE("laplace is log-convex along rays (complete monotonicity smoke test)") {
  StableModel m = onesided2(0.7);
  CounterRng rng(4u);
  for (int k = 0; k < 16; ++k) {
    Vec u{0.2 + rng.u01(2 * k), 0.2 + rng.u01(2 * k + 1)};
    for (double t : {0.5, 1.0, 2.0}) {
      double h = 0.05;
      double l0 = -laplace_exponent(m, scaled(u, t - h));
      double l1 = -laplace_exponent(m, scaled(u, t));
      double l2 = -laplace_exponent(m, scaled(u, t + h));
      CHECK(l0 + l2 - 2 * l1 >= -1e-10);  // log L convex in t
    }
  }
}

TEST_CASE("l1p zonoid support") {
  // single atom of ones: h = ||u||_p
  std::vector<L1pAtom> ones{{{1.0, 1.0}, 1.0}};
  Vec u{0.3, -0.4};
  CHECK(l1p_zonoid_support(ones, 2.0, u) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(l1p_zonoid_support(ones, std::numeric_limits<double>::infinity(), u) ==
        doctest::Approx(0.4).epsilon(1e-14));
  // axis atoms give a parallelepiped: h = sum a_i |u_i|
  std::vector<L1pAtom> axes{{{1.0, 0.0}, 2.0}, {{0.0, 1.0}, 3.0}};
  CHECK(l1p_zonoid_support(axes, 1.5, u) ==
        doctest::Approx(2.0 * 0.3 + 3.0 * 0.4).epsilon(1e-14));
  CHECK_THROWS_AS(l1p_zonoid_support(ones, 0.5, u), InvalidArgument);
}

TEST_CASE("l1p support of a rescaled ball matches the direct boundary supremum") {
  // h(eta B_q, u) maximised over the parametrised boundary of B_q.
  double p = 1.7, q = p / (p - 1.0);
  std::vector<L1pAtom> atoms{{{0.8, 1.7}, 1.0}, {{1.2, 0.3}, 0.6}};
  Vec u{0.9, 0.5};
  double direct = 0;
  for (const auto& atom : atoms) {
    double best = 0;
    for (int k = 0; k <= 40000; ++k) {
      double th = 0.5 * 3.14159265358979323846 * k / 40000;
      double v1 = std::pow(std::cos(th), 2.0 / q), v2 = std::pow(std::sin(th), 2.0 / q);
      best = std::max(best, u[0] * atom.y[0] * v1 + u[1] * atom.y[1] * v2);
    }
    direct += atom.w * best;
  }
  CHECK(l1p_zonoid_support(atoms, p, u) == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("associated zonoid represents the laplace exponent exactly") {
  StableModel m = onesided2(0.4);
  CounterRng rng(5u);
  for (int k = 0; k < 16; ++k) {
    Vec u{2.0 * rng.u01(2 * k), 2.0 * rng.u01(2 * k + 1)};
    CHECK(assoc_zonoid_support(m, u) ==
          doctest::Approx(laplace_exponent(m, u)).epsilon(1e-12));
  }
  // d=1 reduction: h(K, u^alpha) = w u^alpha
  StableModel m1 = onesided1(0.5, 2.0);
  CHECK(assoc_zonoid_support(m1, {3.0}) ==
        doctest::Approx(2.0 * std::pow(3.0, 0.5)).epsilon(1e-14));
}

TEST_CASE("one-sided sub-stable composition h(K,u^a)^b = h(L,u^{ab})") {
  // single-atom source: psi(u) = w <u,s>^a; the sub-stable law has atoms
  // (s, w^b) at exponent a*b.
  double a = 0.6, b = 0.5, w = 1.7;
  Vec s{0.6, 0.8};
  StableModel src = make_discrete(a, Kind::OneSided, {s}, {w});
  StableModel sub = make_discrete(a * b, Kind::OneSided, {s}, {std::pow(w, b)});
  CounterRng rng(6u);
  for (int k = 0; k < 8; ++k) {
    Vec u{2.0 * rng.u01(2 * k), 2.0 * rng.u01(2 * k + 1)};
    double lhs = std::pow(assoc_zonoid_support(src, u), b);
    double rhs = assoc_zonoid_support(sub, u);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("p-sum transform round trip and characters") {
  StableModel core = onesided2(0.5);
  PSumModel ps = psum_from_core(2.0, core);
  CHECK(ps.alpha() == doctest::Approx(1.0));
  const StableModel& back = psum_to_core(ps);
  CHECK(back.alpha == core.alpha);
  CHECK(model_fingerprint(back) == model_fingerprint(core));
  // p=1 is the identity
  PSumModel p1 = psum_from_core(1.0, core);
  Vec u{0.7, 0.9};
  CHECK(psum_character_expectation(p1, u) == doctest::Approx(laplace(core, u)).epsilon(1e-14));
  CHECK_THROWS_AS(psum_from_core(std::numeric_limits<double>::infinity(), core), InvalidArgument);
}

TEST_CASE("p=2 character expectation vs Monte Carlo (random ellipsoid zonoid)") {
  StableModel core = onesided2(0.5);
  PSumModel ps = psum_from_core(2.0, core);
  // xi = core^{1/p} coordinatewise
  SampleBatch b = sample_onesided(core, 400000, 9u);
  Vec u{0.9, 0.6};
  double target = psum_character_expectation(ps, u);
  auto est = mc_functional(b, [&](const double* r) {
    double s1 = std::sqrt(r[0]) * u[0], s2 = std::sqrt(r[1]) * u[1];
    return std::exp(-(s1 * s1 + s2 * s2));
  });
  CHECK(std::fabs(est.mean - target) < 3 * est.se);
}

TEST_CASE("max-stable cdf") {
  // single axis atom, d=1: unit Frechet
  std::vector<L1pAtom> f1{{{1.0}, 1.0}};
  CHECK(maxstable_cdf(f1, {2.0}) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  // independence: product of marginals
  std::vector<L1pAtom> indep{{{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 1.0}};
  Vec u{0.7, 1.2};
  CHECK(maxstable_cdf(indep, u) ==
        doctest::Approx(std::exp(-u[0]) * std::exp(-u[1])).epsilon(1e-14));
  // complete dependence: min copula
  std::vector<L1pAtom> dep{{{1.0, 1.0}, 1.5}};
  CHECK(maxstable_cdf(dep, u) == doctest::Approx(std::exp(-1.5 * 1.2)).epsilon(1e-14));
  // monotone nonincreasing in each coordinate on a grid
  std::vector<L1pAtom> mix{{{1.0, 0.3}, 0.8}, {{0.2, 1.0}, 0.9}};
  double prev = 1.0;
  for (int k = 1; k <= 20; ++k) {
    double c = maxstable_cdf(mix, {0.1 * k, 0.7});
    CHECK(c <= prev + 1e-15);
    prev = c;
  }
  CHECK_THROWS_AS(maxstable_cdf(mix, {0.0, 1.0}), InvalidArgument);
}

TEST_CASE("one-sided moments: gamma values and homogeneity") {
  StableModel m = onesided1(0.5);
  // E xi^{1/4} = Gamma(1/2)/Gamma(3/4) for psi(1) = 1
  double expect = gamma_fn(0.5) / gamma_fn(0.75);
  CHECK(onesided_moment_pos(m, {1.0}, 0.25) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(expect == doctest::Approx(1.44640).epsilon(1e-5));
  // independent case at lambda = 0: Gamma(1+1/a)(sum a_i u_i^a)^{-1/a}
  StableModel m2 = make_discrete(0.5, Kind::OneSided, {{1, 0}, {0, 1}}, {2.0, 3.0});
  Vec u{0.7, 1.1};
  double psi = 2.0 * std::sqrt(0.7) + 3.0 * std::sqrt(1.1);
  CHECK(onesided_moment_neg(m2, u, 0.0) ==
        doctest::Approx(gamma_fn(3.0) * std::pow(psi, -2.0)).epsilon(1e-12));
  // homogeneity: u -> cu scales by c^beta and c^{-lambda-1}
  double c = 1.9;
  CHECK(onesided_moment_pos(m2, scaled(u, c), 0.2) ==
        doctest::Approx(std::pow(c, 0.2) * onesided_moment_pos(m2, u, 0.2)).epsilon(1e-12));
  CHECK(onesided_moment_neg(m2, scaled(u, c), 0.3) ==
        doctest::Approx(std::pow(c, -1.3) * onesided_moment_neg(m2, u, 0.3)).epsilon(1e-12));
  CHECK_THROWS_AS(onesided_moment_pos(m, {1.0}, 0.6), InvalidArgument);
  CHECK_THROWS_AS(onesided_moment_neg(m, {1.0}, -1.0), InvalidArgument);
}

TEST_CASE("one-sided positive moment vs Monte Carlo") {
  StableModel m = onesided2(0.5);
  Vec u{0.8, 0.5};
  double beta = 0.2;  // below alpha/2: plain averaging is fine
  double target = onesided_moment_pos(m, u, beta);
  SampleBatch b = sample_onesided(m, 1000000, 11u);
  auto est = mc_functional(b, [&](const double* r) {
    return std::pow(r[0] * u[0] + r[1] * u[1], beta);
  });
  CHECK(std::fabs(est.mean - target) < 3 * est.se);
  // negative moment as well
  double tneg = onesided_moment_neg(m, u, 0.5);
  auto estn = mc_functional(b, [&](const double* r) {
    return std::pow(r[0] * u[0] + r[1] * u[1], -1.5);
  });
  CHECK(std::fabs(estn.mean - tneg) < 3 * estn.se);
}

TEST_CASE("laplace ordering") {
  StableModel m = onesided2(0.5);
  StableModel big = scale_model(m, 2.0);
  CHECK(laplace_ordering(big, m) == LaplaceOrder::FirstDominates);
  CHECK(laplace_ordering(m, big) == LaplaceOrder::SecondDominates);
  CHECK(laplace_ordering(m, m) == LaplaceOrder::Equal);
  StableModel ax1 = make_discrete(0.5, Kind::OneSided, {{1, 0}}, {1.0});
  StableModel ax2 = make_discrete(0.5, Kind::OneSided, {{0, 1}}, {1.0});
  CHECK(laplace_ordering(ax1, ax2) == LaplaceOrder::Incomparable);
  // ordering is equivalent to pointwise zonoid-support dominance
  CounterRng rng(12u);
  for (int k = 0; k < 16; ++k) {
    Vec u{rng.u01(2 * k) + 0.1, rng.u01(2 * k + 1) + 0.1};
    CHECK(assoc_zonoid_support(big, u) >= assoc_zonoid_support(m, u) - 1e-12);
  }
}

TEST_CASE("stability for arithmetic sums via simulated characters") {
  StableModel m = onesided2(0.5);
  double a = 1.3, b = 0.6;
  const std::size_t n = 400000;
  SampleBatch s1 = sample_onesided(m, n, 21u);
  SampleBatch s2 = sample_onesided(m, n, 22u);
  double fa = std::pow(a, 1.0 / m.alpha), fb = std::pow(b, 1.0 / m.alpha);
  Vec u{0.5, 0.8};
  // E exp(-<u, a^{1/alpha} x1 + b^{1/alpha} x2>) vs laplace of (a+b)^{1/alpha} xi
  double sum = 0, sumsq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = 0;
    for (int j = 0; j < 2; ++j)
      t += u[j] * (fa * s1.row(i)[j] + fb * s2.row(i)[j]);
    double v = std::exp(-t);
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / n;
  double se = std::sqrt((sumsq / n - mean * mean) / n);
  double target = laplace(m, scaled(u, std::pow(a + b, 1.0 / m.alpha)));
  CHECK(std::fabs(mean - target) < 3 * se);
}

TEST_CASE("l_q ball reappears as an L1(r)-zonoid via the sub-stable construction") {
  // xi independent one-sided(alpha); xi' = zeta^{1/alpha} xi has laplace
  // exponent (sum u_i^alpha)^beta = || u^{alpha beta} ||_{1/beta}, i.e. the
  // support function of the l_{q'} ball with q' = 1/(1-beta), evaluated at
  // u^{alpha beta}: an L1(1/(alpha beta))-zonoid with 1/(alpha beta) > 1/beta.
  double alpha = 0.5, beta = 0.5;
  StableModel m = make_discrete(alpha, Kind::OneSided, {{1, 0}, {0, 1}}, {1.0, 1.0});
  const std::size_t n = 1000000;
  SampleBatch base = sample_onesided(m, n, 31u);
  auto zeta = sample_positive_stable(beta, n, 32u);
  Vec u{0.9, 1.4};
  double sum = 0, sumsq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = std::pow(zeta[i], 1.0 / alpha);
    double v = std::exp(-z * (base.row(i)[0] * u[0] + base.row(i)[1] * u[1]));
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / n;
  double se = std::sqrt((sumsq / n - mean * mean) / n);
  double ab = alpha * beta;
  double hval = std::pow(std::pow(u[0], ab / beta) + std::pow(u[1], ab / beta), beta);
  CHECK(std::fabs(mean - std::exp(-hval)) < 3 * se);
}

TEST_SUITE_END();
