// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.  Exit code = number of
// failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "stabgeo/dependence.hpp"
#include "stabgeo/geometry.hpp"
#include "stabgeo/moments.hpp"
#include "stabgeo/onesided.hpp"
#include "stabgeo/rng.hpp"
#include "stabgeo/simulate.hpp"
#include "stabgeo/specialfn.hpp"

using namespace stabgeo;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Harness {
  int failures = 0;
  int index = 0;

  void report(const std::string& what, bool ok, const std::string& detail, double seconds) {
    ++index;
    std::printf("[%s] %2d %-34s %s (%.2fs)\n", ok ? "PASS" : "FAIL", index, what.c_str(),
                detail.c_str(), seconds);
    if (!ok) ++failures;
  }

  template <class F>
  void run(const std::string& what, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      detail = f(ok);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(what, ok, detail, secs);
  }
};

StableModel cauchy_iso() { return make_isotropic_scale(1.0, 2, 1.0); }

Matrix rotation2(double th) {
  Matrix r(2, 2);
  r(0, 0) = std::cos(th);
  r(0, 1) = -std::sin(th);
  r(1, 0) = std::sin(th);
  r(1, 1) = std::cos(th);
  return r;
}

StableModel random_discrete(std::uint64_t seed, double alpha, int d) {
  CounterRng rng(seed);
  int k = d + 2 + static_cast<int>(rng.u01(0) * 3);
  std::vector<Vec> dirs;
  std::vector<double> w;
  for (int j = 0; j < k; ++j) {
    Vec s(d);
    for (int i = 0; i < d; ++i) s[i] = rng.normal(2 * (j * d + i) + 64);
    dirs.push_back(s);
    w.push_back(0.2 + 2.0 * rng.u01(1000 + j));
  }
  return make_discrete(alpha, Kind::Symmetric, std::move(dirs), std::move(w));
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// --- criterion 1 -----------------------------------------------------------

std::string crit_f0(bool& ok) {
  SphereRule rule = circle_rule(512);
  double f_cauchy = density_at_zero(cauchy_iso(), rule).value;
  double e1 = std::fabs(f_cauchy - 1.0 / (2 * kPi));
  StableModel g = make_subgaussian(2.0, Matrix::diag({1.0, 4.0}));
  double f_gauss = density_at_zero(g, rule).value;
  double e2 = std::fabs(f_gauss - 0.5 / (2 * kPi));
  ok = e1 < 1e-8 && e2 < 1e-8;
  return "cauchy err " + fmt(e1) + ", gaussian err " + fmt(e2);
}

// --- criterion 2 -----------------------------------------------------------

std::string crit_norm_moments(bool& ok) {
  SphereRule rule = circle_rule(512);
  ok = true;
  std::string detail;
  double worst_z = 0, worst_rel = 0;
  for (double alpha : {1.0, 1.5}) {
    StableModel m = make_isotropic_scale(alpha, 2, 1.0);
    SampleBatch b = sample_vector(m, 1000000, 20240 + static_cast<std::uint64_t>(10 * alpha));
    double mass = spectral_mass(m, rule);
    for (double lam : {-0.5, 0.5, alpha - 0.05}) {
      Estimate f = norm_moment(m, lam, rule);
      // isotropic closed form
      double closed = std::pow(2.0, lam) * gamma_fn((2 + lam) / 2) / gamma_fn(1.0) *
                      gamma_fn(1 - lam / alpha) / gamma_fn(1 - lam / 2);
      double rel = std::fabs(f.value - closed) / closed;
      worst_rel = std::max(worst_rel, rel);
      if (rel >= 1e-10) ok = false;
      McEstimate est = mc_norm_moment(b, lam, alpha, mass);
      double z = (est.mean - f.value) / est.se;
      worst_z = std::max(worst_z, std::fabs(z));
      if (std::fabs(z) >= 3.0) ok = false;
    }
  }
  return "max |z| " + fmt(worst_z) + ", max closed-form rel err " + fmt(worst_rel);
}

// --- criterion 3 -----------------------------------------------------------

std::string crit_renyi(bool& ok) {
  SphereRule rule = circle_rule(512);
  SphereRule table_rule = circle_rule(256);
  StableModel m = cauchy_iso();
  // radial density table by direct inversion (uniform grid, algebraic
  // r^{-(d+alpha)} continuation beyond), then a brute-force grid of f(cr)f(r)
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  const double R = 15.0;
  const int npts = 600;
  std::vector<double> fr(npts + 1);
  for (int k = 0; k <= npts; ++k)
    fr[k] = density(m, {R * k / npts, 0.0}, table_rule).value;
  auto f_at = [&](double r) {
    if (r >= R) return fr[npts] * std::pow(R / r, 3.0);
    double sidx = r / R * npts;
    int k = std::min(npts - 1, static_cast<int>(sidx));
    double t = sidx - k;
    return fr[k] * (1 - t) + fr[k + 1] * t;
  };
  ok = true;
  double worst = 0;
  for (double c : {0.5, 1.0, 2.0}) {
    double closed = renyi_overlap(m, c, rule).value;
    // grid: 2 pi int f(cr) f(r) r dr
    double grid = 0;
    const int gp = 400;
    const double Rg = 60.0;
    for (int p = 0; p < gp; ++p) {
      double a = Rg * p / gp, b = Rg * (p + 1) / gp;
      for (int i = 0; i < 16; ++i) {
        double r = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
        grid += 0.5 * (b - a) * gw[i] * f_at(c * r) * f_at(r) * r;
      }
    }
    grid *= 2 * kPi;
    double rel = std::fabs(grid - closed) / closed;
    worst = std::max(worst, rel);
    if (rel >= 1e-3) ok = false;
  }
  return "max rel err " + fmt(worst);
}

// --- criterion 4 -----------------------------------------------------------

std::string crit_covariation(bool& ok) {
  ok = true;
  // closed form on the l_alpha model
  double alpha = 1.5;
  StableModel m = make_discrete(alpha, Kind::Symmetric, {{1, 0}, {0, 1}}, {1.0, 1.0});
  CounterRng rng(99u);
  double worst = 0;
  for (int k = 0; k < 16; ++k) {
    Vec u1{rng.normal(8 * k), rng.normal(8 * k + 2)};
    Vec u2{rng.normal(8 * k + 4), rng.normal(8 * k + 6)};
    double expect = u1[0] * signed_pow(u2[0], alpha - 1) + u1[1] * signed_pow(u2[1], alpha - 1);
    worst = std::max(worst, std::fabs(covariation(m, u1, u2) - expect));
    if (worst >= 1e-10) ok = false;
  }
  // moment-ratio identity via Monte Carlo
  Matrix C(2, 2);
  C(0, 0) = 2.0;
  C(0, 1) = C(1, 0) = 1.0;
  C(1, 1) = 2.0;
  StableModel sg = make_subgaussian(1.5, C);
  double p = 1.25;
  double ratio = covariation(sg, {1, 0}, {0, 1}) / covariation(sg, {0, 1}, {0, 1});
  SampleBatch b = sample_vector(sg, 1000000, 424u);
  auto num = mc_functional_mom(b, [&](const double* r) {
    return r[0] * signed_pow(r[1], p - 1.0);
  });
  auto den = mc_functional_mom(b, [&](const double* r) {
    return std::pow(std::fabs(r[1]), p);
  });
  double est = num.mean / den.mean;
  double se = std::fabs(est) *
              std::sqrt(std::pow(num.se / num.mean, 2) + std::pow(den.se / den.mean, 2));
  double z = (est - ratio) / se;
  if (std::fabs(z) >= 3.0) ok = false;
  return "closed-form err " + fmt(worst) + ", ratio z " + fmt(z);
}

// --- criterion 5 -----------------------------------------------------------

std::string crit_sign_moment(bool& ok) {
  ok = true;
  Matrix C = matmul(rotation2(kPi / 6), matmul(Matrix::diag({1.0, 9.0}), transpose(rotation2(kPi / 6))));
  StableModel m = make_subgaussian(1.5, C);
  double f = sign_moment_2d(m, 4096);
  SampleBatch b = sample_vector(m, 1000000, 52u);
  auto est = mc_functional(b, [](const double* r) {
    double s = r[0] * r[1];
    return s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0);
  });
  double z = (est.mean - f) / est.se;
  if (std::fabs(z) >= 3.0) ok = false;
  // |I(F)| <= pi^2 on 100 random models
  double worst = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    StableModel rm;
    if (s % 3 == 0) {
      Matrix R = rotation2(0.02 * s);
      Matrix Cs = matmul(R, matmul(Matrix::diag({1.0, 1.0 + 0.15 * s}), transpose(R)));
      rm = make_subgaussian(1.0 + 0.008 * s, Cs);
    } else {
      rm = random_discrete(7000 + s, 0.8 + 0.01 * s, 2);
    }
    double iF = iF_functional(rm, 2048);
    worst = std::max(worst, std::fabs(iF));
    if (std::fabs(iF) > kPi * kPi) ok = false;
  }
  return "z " + fmt(z) + ", max |I(F)| " + fmt(worst) + " <= pi^2 " + fmt(kPi * kPi);
}

// --- criterion 6 -----------------------------------------------------------

std::string crit_marginal(bool& ok) {
  SphereRule rule = circle_rule(512);
  StableModel m = cauchy_iso();
  Vec u{0.6, 0.8};
  double formula = marginal_line_integral(m, u).value;
  // direct quadrature of density(t u) over [0, T] (the density is even along
  // the line) plus the algebraic t^{-(d+alpha)} tail completion
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  double T = 12.0;
  int panels = 30;
  double direct = 0;
  for (int p = 0; p < panels; ++p) {
    double a = T * p / panels, b = T * (p + 1) / panels;
    for (int i = 0; i < 16; ++i) {
      double t = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
      direct += (b - a) * gw[i] * density(m, {t * u[0], t * u[1]}, rule).value;
    }
  }
  direct += 2.0 * density(m, {T * u[0], T * u[1]}, rule).value * T / 2.0;
  double rel = std::fabs(direct - formula) / formula;
  ok = rel < 1e-4;
  return "rel err " + fmt(rel) + " (formula " + fmt(formula) + " = 1/pi)";
}

// --- criterion 7 -----------------------------------------------------------

std::string crit_onesided(bool& ok) {
  double alpha = 0.5, beta = 0.25;
  StableModel m = make_discrete(alpha, Kind::OneSided, {{1.0}}, {1.0});
  double formula = onesided_moment_pos(m, {1.0}, beta);
  double gammaval = gamma_fn(0.5) / gamma_fn(0.75);
  double err = std::fabs(formula - gammaval);
  auto s = sample_positive_stable(alpha, 1000000, 71u);
  // regular-variation completion: P(S > x) ~ x^{-alpha}/Gamma(1-alpha)
  double tail_mass = 1.0 / (gamma_fn(1.0 - alpha) * stable_tail_constant(alpha));
  McEstimate est = mc_tail_completed_moment(s, beta, alpha, tail_mass);
  double z = (est.mean - formula) / est.se;
  ok = err < 1e-10 && std::fabs(z) < 3.0;
  return "gamma err " + fmt(err) + ", z " + fmt(z);
}

// --- criterion 8 -----------------------------------------------------------

std::string crit_john(bool& ok) {
  ok = true;
  double alpha = 1.5;
  double worst_ratio = 0, worst_cert = 0;
  for (int d : {2, 3}) {
    SphereRule rule = d == 2 ? circle_rule(512) : sphere_rule(3, 24);
    for (std::uint64_t s = 0; s < 20; ++s) {
      StableModel m = random_discrete(100 * d + s, alpha, d);
      JohnResult j = john_ellipsoid(m);
      worst_cert = std::max({worst_cert, j.inner_violation, j.outer_ratio - 1.0});
      if (j.inner_violation > 1e-6 || j.outer_ratio > 1.0 + 1e-6) ok = false;
      StableModel sub = make_elliptical(alpha, inverse_spd(j.ellipsoid.m));
      double dist = metric_m_alpha(m, sub, rule);
      double bound = (std::pow(static_cast<double>(d), alpha / 2.0) - 1.0) *
                     std::pow(body_norm(m, rule), alpha);
      worst_ratio = std::max(worst_ratio, dist / bound);
      if (dist > bound * (1.0 + 1e-6)) ok = false;
    }
  }
  return "max dist/bound " + fmt(worst_ratio) + ", max cert excess " + fmt(worst_cert);
}

// --- criterion 9 -----------------------------------------------------------

std::string crit_inequalities(bool& ok) {
  ok = true;
  SphereRule rule = circle_rule(512);
  double ksq = kappa_d(2) * kappa_d(2);
  double worst_bs = 0, worst_eq = 0, worst_mom = 0, worst_rsum = 0;
  // Blaschke-Santalo: 50 random discrete + 50 ellipsoids (equality)
  for (std::uint64_t s = 0; s < 100; ++s) {
    if (s % 2 == 0) {
      StableModel m = random_discrete(500 + s, 1.0 + 0.009 * s, 2);
      double prod = volume(m, rule).value * polar_volume(m, rule).value;
      worst_bs = std::max(worst_bs, prod / ksq);
      if (prod > ksq * (1.0 + 1e-6)) ok = false;
    } else {
      Matrix R = rotation2(0.03 * s);
      Matrix M = matmul(R, matmul(Matrix::diag({0.4 + 0.02 * s, 2.0}), transpose(R)));
      StableModel e = make_elliptical(1.0 + 0.009 * s, M);
      double prod = volume(e, rule).value * polar_volume(e, rule).value;
      worst_eq = std::max(worst_eq, std::fabs(prod / ksq - 1.0));
      if (std::fabs(prod / ksq - 1.0) > 1e-6) ok = false;
    }
  }
  // dual-mixed-volume moment bound, equality for balls
  for (std::uint64_t s = 0; s < 100; ++s) {
    double alpha = 1.05 + 0.009 * s;
    double lam = 0.5 * alpha;
    if (s % 5 == 0) {
      StableModel ball = make_isotropic_scale(alpha, 2, 0.5 + 0.01 * s);
      double v = norm_moment(ball, lam, rule).value;
      double lb = norm_moment_lower_bound(ball, lam, rule).value;
      worst_eq = std::max(worst_eq, std::fabs(v / lb - 1.0));
      if (std::fabs(v / lb - 1.0) > 1e-6) ok = false;
    } else {
      StableModel m = random_discrete(1700 + s, alpha, 2);
      double v = norm_moment(m, lam, rule).value;
      double lb = norm_moment_lower_bound(m, lam, rule).value;
      worst_mom = std::max(worst_mom, lb / v);
      if (v < lb * (1.0 - 1e-9)) ok = false;
    }
  }
  // r-sum superadditivity of f(0)^{-alpha/d}
  for (std::uint64_t s = 0; s < 100; ++s) {
    double alpha = 1.0 + 0.009 * s;
    StableModel a = random_discrete(2900 + s, alpha, 2);
    StableModel b = (s % 7 == 0) ? scale_model(a, 1.7) : random_discrete(4100 + s, alpha, 2);
    double fa = density_at_zero(a, rule).value;
    double fb = density_at_zero(b, rule).value;
    double fs = density_at_zero(star_sum(a, b), rule).value;
    double e = -alpha / 2.0;
    double lhs = std::pow(fs, e), rhs = std::pow(fa, e) + std::pow(fb, e);
    worst_rsum = std::max(worst_rsum, rhs / lhs);
    if (lhs < rhs * (1.0 - 1e-8)) ok = false;
    if (s % 7 == 0 && std::fabs(lhs / rhs - 1.0) > 1e-8) ok = false;  // dilates: equality
  }
  return "BS max " + fmt(worst_bs) + ", eq err " + fmt(worst_eq) + ", mom max " +
         fmt(worst_mom) + ", rsum max " + fmt(worst_rsum);
}

// --- criterion 10 ----------------------------------------------------------

std::string crit_sampler(bool& ok) {
  ok = true;
  const std::size_t n = 1000000;
  double bound = 4.0 / std::sqrt(static_cast<double>(n));
  double worst = 0;
  auto check_charfun = [&](const StableModel& m, const SampleBatch& b) {
    CounterRng rng(321u);
    for (int k = 0; k < 16; ++k) {
      Vec u(m.dim);
      for (int i = 0; i < m.dim; ++i) u[i] = 0.8 * rng.normal(2 * (k * m.dim + i));
      double target = std::exp(-std::pow(gauge(m, u), m.alpha));
      double ssum = 0;
      for (std::size_t i = 0; i < b.n; ++i) {
        double t = 0;
        const double* r = b.row(i);
        for (int j = 0; j < m.dim; ++j) t += r[j] * u[j];
        ssum += std::cos(t);
      }
      double err = std::fabs(ssum / b.n - target);
      worst = std::max(worst, err / bound);
      if (err >= bound) ok = false;
    }
  };
  StableModel disc = make_discrete(1.4, Kind::Symmetric, {{1, 0}, {0, 1}, {0.6, 0.8}},
                                   {1.0, 0.8, 0.5});
  check_charfun(disc, sample_vector(disc, n, 1001u));
  StableModel iso = cauchy_iso();
  check_charfun(iso, sample_vector(iso, n, 1002u));
  Matrix C(2, 2);
  C(0, 0) = 2.0;
  C(0, 1) = C(1, 0) = 1.0;
  C(1, 1) = 2.0;
  StableModel sg = make_subgaussian(1.5, C);
  check_charfun(sg, sample_vector(sg, n, 1003u));
  StableModel sub = substable_transform(make_discrete(1.8, Kind::Symmetric,
                                                      {{1, 0}, {0, 1}}, {1.0, 1.0}),
                                        0.7);
  check_charfun(sub, sample_vector(sub, n, 1004u));
  // one-sided: empirical laplace transform under the same policy
  StableModel os = make_discrete(0.5, Kind::OneSided, {{1, 0}, {0, 1}, {0.6, 0.8}},
                                 {1.0, 0.5, 0.25});
  SampleBatch ob = sample_onesided(os, n, 1005u);
  CounterRng rng(33u);
  for (int k = 0; k < 16; ++k) {
    Vec u{2.0 * rng.u01(2 * k), 2.0 * rng.u01(2 * k + 1)};
    double target = laplace(os, u);
    double ssum = 0;
    for (std::size_t i = 0; i < ob.n; ++i)
      ssum += std::exp(-(ob.row(i)[0] * u[0] + ob.row(i)[1] * u[1]));
    double err = std::fabs(ssum / ob.n - target);
    worst = std::max(worst, err / bound);
    if (err >= bound) ok = false;
  }
  // determinism: byte-identical batches for identical seeds
  SampleBatch d1 = sample_vector(disc, 100000, 77u);
  SampleBatch d2 = sample_vector(disc, 100000, 77u);
  bool identical = d1.data.size() == d2.data.size() &&
                   std::memcmp(d1.data.data(), d2.data.data(),
                               d1.data.size() * sizeof(double)) == 0;
  if (!identical) ok = false;
  return "max |emp-charfun err|/bound " + fmt(worst) + std::string(identical ? "" : ", non-deterministic");
}

// --- criterion 11 ----------------------------------------------------------

// Numerator field N(x) = E(xi1 | (xi2,xi3) = x) * f_23(x) by Fourier
// inversion: N(x) = (2pi)^{-2} int sin(<w,x>) M(w) dw with
// M(w) = alpha h(0,w)^{alpha-1} T1(0,w) e^{-h(0,w)^alpha}.
double cond_numerator(const StableModel& m3, const Vec& x, const SphereRule& circle) {
  static std::vector<double> gx, gw;
  if (gx.empty()) gauss_legendre(16, gx, gw);
  const double alpha = m3.alpha;
  double total = 0;
  for (std::size_t iv = 0; iv < circle.nodes.size(); ++iv) {
    const Vec& v = circle.nodes[iv];
    Vec w3{0.0, v[0], v[1]};
    double hv = gauge(m3, w3);
    double t1 = support_point(m3, w3)[0];
    double cv = v[0] * x[0] + v[1] * x[1];
    // polar Jacobian folded in: (1/h^2) alpha int sin(s c/h) s^alpha e^{-s^alpha} ds
    double R = std::pow(38.0, 1.0 / alpha);
    double freq = std::fabs(cv) / hv;
    double cap = freq > 1e-12 ? kPi / (2 * freq) : 1e300;
    std::vector<double> edges{0.0};
    double t = std::min(R * 0x1.0p-22, cap);
    while (t < R) {
      edges.push_back(t);
      t = std::min(t * 2, t + cap);
    }
    edges.push_back(R);
    double rad = 0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      double mid = 0.5 * (edges[p] + edges[p + 1]), h = 0.5 * (edges[p + 1] - edges[p]);
      for (int i = 0; i < 16; ++i) {
        double ss = mid + h * gx[i];
        rad += h * gw[i] * std::sin(ss * cv / hv) * std::pow(ss, alpha) *
               std::exp(-std::pow(ss, alpha));
      }
    }
    total += circle.weights[iv] * t1 / (hv * hv) * alpha * rad;
  }
  return total / std::pow(2 * kPi, 2);
}

std::string crit_regression(bool& ok) {
  ok = true;
  // linear case: elliptical gauge with witness C e1
  Matrix C(3, 3);
  C(0, 0) = 2.0;
  C(1, 1) = 3.0;
  C(2, 2) = 1.5;
  C(0, 1) = C(1, 0) = 0.7;
  C(0, 2) = C(2, 0) = -0.3;
  C(1, 2) = C(2, 1) = 0.4;
  StableModel ell = make_elliptical(1.5, inverse_spd(C));
  LinearityResult lr = regression_linearity_check(ell, 0);
  if (!lr.is_linear || lr.residual > 1e-8 * lr.scale) ok = false;
  Vec ce1{C(0, 0), C(1, 0), C(2, 0)};
  double werr = 0;
  for (int i = 0; i < 3; ++i) werr = std::max(werr, std::fabs(lr.a[i] - ce1[i] / ce1[0]));
  if (werr > 1e-6) ok = false;

  // nonlinear case
  StableModel m = make_discrete(
      1.2, Kind::Symmetric,
      {{0, 1, 0}, {0, 0, 1}, {0.9, 0.436, 0.0}, {0.9, -0.218, 0.378}},
      {1.0, 1.0, 2.0, 2.0});
  LinearityResult nr = regression_linearity_check(m, 0);
  if (nr.is_linear) ok = false;

  // Curvature via binned conditional means.  The binned statistic is the
  // ratio E[xi1 1_W 1_bin] / E[r 1_W 1_bin] with a fixed radius window W;
  // both sides of the comparison use exactly this functional (conditional
  // means of stable vectors are not radius-homogeneous in d >= 3).  G is odd
  // under phi -> phi + pi, so curvature lives in the odd harmonics; the
  // leading nonlinear term is the third harmonic.
  Matrix basis23(3, 2);
  basis23(1, 0) = 1.0;
  basis23(2, 1) = 1.0;
  StableModel m23 = project_model(m, basis23);
  SphereRule rule23 = circle_rule(256);
  SphereRule circle = circle_rule(512);
  const int nbins = 24;
  const double rlo = 0.5, rhi = 3.0;
  std::vector<double> gx8, gw8;
  gauss_legendre(8, gx8, gw8);
  double a2p = 0, b2p = 0;
  for (int bidx = 0; bidx < nbins; ++bidx) {
    double plo = 2 * kPi * bidx / nbins, phi_c = 2 * kPi * (bidx + 0.5) / nbins;
    double np = 0, dp = 0;
    for (int ip = 0; ip < 4; ++ip) {
      double phi = plo + 2 * kPi / nbins * (ip + 0.5) / 4.0;
      for (int ir = 0; ir < 8; ++ir) {
        double r = 0.5 * (rlo + rhi) + 0.5 * (rhi - rlo) * gx8[ir];
        double wgt = gw8[ir];
        Vec x{r * std::cos(phi), r * std::sin(phi)};
        np += wgt * cond_numerator(m, x, circle) * r;
        dp += wgt * density(m23, x, rule23).value * r * r;
      }
    }
    double g = np / dp;
    a2p += 2.0 / nbins * g * std::cos(3 * phi_c);
    b2p += 2.0 / nbins * g * std::sin(3 * phi_c);
  }

  SampleBatch b = sample_vector(m, 6000000, 88u);
  const int blocks = 24;
  std::vector<std::vector<double>> num(blocks, std::vector<double>(nbins, 0.0));
  std::vector<std::vector<double>> den(blocks, std::vector<double>(nbins, 0.0));
  std::size_t bs = b.n / blocks;
  for (std::size_t i = 0; i < static_cast<std::size_t>(blocks) * bs; ++i) {
    double r = std::hypot(b.row(i)[1], b.row(i)[2]);
    if (r < rlo || r > rhi) continue;
    double phi = std::atan2(b.row(i)[2], b.row(i)[1]);
    if (phi < 0) phi += 2 * kPi;
    int bin = std::min(nbins - 1, static_cast<int>(phi / (2 * kPi) * nbins));
    int blk = static_cast<int>(i / bs);
    num[blk][bin] += b.row(i)[0];
    den[blk][bin] += r;
  }
  // per-block harmonic estimates
  std::vector<double> a2s(blocks), b2s(blocks);
  for (int blk = 0; blk < blocks; ++blk) {
    double a2 = 0, b2 = 0;
    for (int bin = 0; bin < nbins; ++bin) {
      double phi = 2 * kPi * (bin + 0.5) / nbins;
      double g = den[blk][bin] > 0 ? num[blk][bin] / den[blk][bin] : 0.0;
      a2 += 2.0 / nbins * g * std::cos(3 * phi);
      b2 += 2.0 / nbins * g * std::sin(3 * phi);
    }
    a2s[blk] = a2;
    b2s[blk] = b2;
  }
  // The conditional xi1 tails are heavy (index alpha), so block estimates
  // have erratic spread; centre and scale them robustly (median and MAD).
  auto median_se = [&](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    double med = 0.5 * (v[(v.size() - 1) / 2] + v[v.size() / 2]);
    std::vector<double> ad(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) ad[i] = std::fabs(v[i] - med);
    std::sort(ad.begin(), ad.end());
    double mad = 0.5 * (ad[(ad.size() - 1) / 2] + ad[ad.size() / 2]);
    double se = 1.2533 * 1.4826 * mad / std::sqrt(static_cast<double>(v.size()));
    return std::pair<double, double>(med, se);
  };
  auto [a2m, a2se] = median_se(a2s);
  auto [b2m, b2se] = median_se(b2s);
  double za = (a2m - a2p) / a2se, zb = (b2m - b2p) / b2se;
  if (std::fabs(za) >= 3.0 || std::fabs(zb) >= 3.0) ok = false;
  // the curvature itself must be significant in the Monte Carlo
  double sig = std::max(std::fabs(a2m) / a2se, std::fabs(b2m) / b2se);
  if (sig < 3.0) ok = false;
  return "witness err " + fmt(werr) + ", harmonic z (" + fmt(za) + ", " + fmt(zb) +
         "), curvature sig " + fmt(sig);
}

// --- criterion 12 ----------------------------------------------------------

std::string crit_maxzonoid(bool& ok) {
  ok = true;
  // independence: product copula, exact
  std::vector<L1pAtom> indep{{{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 1.0}};
  double worst = 0;
  CounterRng rng(5u);
  for (int k = 0; k < 16; ++k) {
    Vec u{0.2 + 2.0 * rng.u01(2 * k), 0.2 + 2.0 * rng.u01(2 * k + 1)};
    double err = std::fabs(maxstable_cdf(indep, u) - std::exp(-u[0]) * std::exp(-u[1]));
    worst = std::max(worst, err);
    if (err > 1e-14) ok = false;
  }
  // comonotone: min copula F(x) = min(F1(x1), F2(x2)) with unit Frechet margins
  std::vector<L1pAtom> dep{{{1.0, 1.0}, 1.0}};
  for (int k = 0; k < 16; ++k) {
    Vec u{0.2 + 2.0 * rng.u01(100 + 2 * k), 0.2 + 2.0 * rng.u01(101 + 2 * k)};
    double expect = std::min(std::exp(-u[0]), std::exp(-u[1]));
    double err = std::fabs(maxstable_cdf(dep, u) - expect);
    worst = std::max(worst, err);
    if (err > 1e-14) ok = false;
  }
  // monotone nonincreasing in u on a grid (CDF nondecreasing in x = 1/u)
  std::vector<L1pAtom> mix{{{1.0, 0.4}, 0.7}, {{0.3, 1.0}, 0.9}, {{0.6, 0.6}, 0.4}};
  for (int row = 0; row < 12; ++row) {
    double prev = 2.0;
    for (int col = 1; col <= 12; ++col) {
      double c = maxstable_cdf(mix, {0.25 * col, 0.2 + 0.2 * row});
      if (c > prev + 1e-15) ok = false;
      prev = c;
    }
  }
  return "max exact-case err " + fmt(worst);
}

}  // namespace

int main() {
  Harness h;
  h.run("f(0) identity", crit_f0);
  h.run("norm moments", crit_norm_moments);
  h.run("renyi identity", crit_renyi);
  h.run("covariation", crit_covariation);
  h.run("sign moment", crit_sign_moment);
  h.run("marginal line integral", crit_marginal);
  h.run("one-sided moments", crit_onesided);
  h.run("sub-Gaussian approximation", crit_john);
  h.run("geometric inequalities", crit_inequalities);
  h.run("sampler soundness", crit_sampler);
  h.run("regression linearity", crit_regression);
  h.run("max-zonoid cdf", crit_maxzonoid);
  std::printf("%d/%d criteria passed\n", h.index - h.failures, h.index);
  return h.failures;
}
