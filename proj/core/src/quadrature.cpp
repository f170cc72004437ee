#include "stabgeo/quadrature.hpp"

#include <cmath>

#include "stabgeo/rng.hpp"

namespace stabgeo {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p0 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

SphereRule circle_rule(int n) {
  if (n < 8) throw InvalidArgument("circle_rule: n must be >= 8");
  if (n % 2 != 0) throw InvalidArgument("circle_rule: n must be even (antithetic pairing)");
  SphereRule r;
  r.dim = 2;
  r.kind = RuleKind::Circle;
  r.n1 = n;
  double offset = (n % 4 == 0) ? kPi / n : 0.0;
  r.nodes.reserve(n);
  r.weights.assign(n, 2.0 * kPi / n);
  for (int k = 0; k < n; ++k) {
    double th = 2.0 * kPi * k / n + offset;
    r.nodes.push_back({std::cos(th), std::sin(th)});
  }
  r.exactness = "trig-degree:" + std::to_string(n - 1) + (offset > 0 ? " offset:half-step" : "");
  return r;
}

SphereRule sphere_rule(int d, int level, std::optional<std::uint64_t> seed) {
  if (d < 1) throw InvalidArgument("sphere_rule: d must be >= 1");
  if (d == 1) {
    SphereRule r;
    r.dim = 1;
    r.kind = RuleKind::PointPair;
    r.nodes = {{1.0}, {-1.0}};
    r.weights = {1.0, 1.0};
    r.exactness = "exact";
    return r;
  }
  if (d == 2) return circle_rule(level);
  if (d == 3) {
    int nz = level, naz = 2 * level;
    SphereRule r;
    r.dim = 3;
    r.kind = RuleKind::Product3;
    r.n1 = nz;
    r.n2 = naz;
    std::vector<double> zx, zw;
    gauss_legendre(nz, zx, zw);
    double aoff = kPi / naz;
    r.nodes.reserve(static_cast<std::size_t>(nz) * naz);
    r.weights.reserve(static_cast<std::size_t>(nz) * naz);
    for (int i = 0; i < nz; ++i) {
      double z = zx[i];
      double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int k = 0; k < naz; ++k) {
        double phi = 2.0 * kPi * k / naz + aoff;
        r.nodes.push_back({s * std::cos(phi), s * std::sin(phi), z});
        r.weights.push_back(zw[i] * 2.0 * kPi / naz);
      }
    }
    r.exactness = "product:" + std::to_string(nz) + "x" + std::to_string(naz);
    return r;
  }
  // d >= 4: randomized antithetic directions.
  if (!seed.has_value())
    throw InvalidArgument("sphere_rule: seed required for d >= 4 (randomized rule)");
  int n = 2 * level;
  SphereRule r;
  r.dim = d;
  r.kind = RuleKind::MonteCarlo;
  CounterRng rng(*seed);
  double w = omega_d(d) / n;
  r.nodes.reserve(n);
  r.weights.assign(n, w);
  std::uint64_t ctr = 0;
  for (int p = 0; p < level; ++p) {
    Vec u(d);
    double nn = 0;
    do {
      for (int j = 0; j < d; ++j) {
        u[j] = rng.normal(ctr);
        ctr += 2;
      }
      nn = norm2(u);
    } while (nn < 1e-12);
    for (int j = 0; j < d; ++j) u[j] /= nn;
    r.nodes.push_back(u);
    Vec mu = u;
    for (auto& c : mu) c = -c;
    r.nodes.push_back(mu);
  }
  r.exactness = "randomized:seed=" + std::to_string(*seed) + ",n=" + std::to_string(n);
  return r;
}

SphereRule default_sphere_rule(int d, std::optional<std::uint64_t> seed) {
  if (d <= 2) return sphere_rule(d, 512);
  if (d == 3) return sphere_rule(3, 64);
  return sphere_rule(d, 100000, seed.has_value() ? seed : std::optional<std::uint64_t>(12345));
}

namespace {

// Composite Gauss-Legendre panels over [breaks[0], breaks.back()], appended in
// order; fills both the 16-point main rule and the 8-point embedded rule.
void add_panels(const std::vector<double>& breaks, RadialRule& r) {
  static std::vector<double> x16, w16, x8, w8;
  if (x16.empty()) {
    gauss_legendre(16, x16, w16);
    gauss_legendre(8, x8, w8);
  }
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    double a = breaks[p], b = breaks[p + 1];
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < 16; ++i) {
      r.nodes.push_back(c + h * x16[i]);
      r.weights.push_back(h * w16[i]);
    }
    for (int i = 0; i < 8; ++i) {
      r.nodes_c.push_back(c + h * x8[i]);
      r.weights_c.push_back(h * w8[i]);
    }
  }
}

}  // namespace

RadialRule radial_rule_exp_power(double alpha, int level) {
  if (alpha <= 0) throw InvalidArgument("radial_rule_exp_power: alpha must be positive");
  if (level < 4) level = 4;
  RadialRule r;
  r.tail = RadialTail::ExpPower;
  r.param = alpha;
  double R = std::pow(38.0, 1.0 / alpha);  // e^{-R^alpha} ~ 3e-17
  std::vector<double> breaks{0.0};
  for (int k = level - 1; k >= 0; --k) breaks.push_back(R * std::pow(2.0, -k));
  add_panels(breaks, r);
  r.descriptor = "exp-power alpha=" + std::to_string(alpha) + " R=" + std::to_string(R) +
                 " panels=" + std::to_string(level);
  return r;
}

RadialRule radial_rule_algebraic(double s, int level) {
  if (s <= 1.0) throw InvalidArgument("radial_rule_algebraic: tail exponent must exceed 1");
  if (level < 6) level = 6;
  RadialRule r;
  r.tail = RadialTail::Algebraic;
  r.param = s;
  // [0,1] directly.
  std::vector<double> breaks;
  int inner = level / 2;
  for (int k = 0; k <= inner; ++k) breaks.push_back(static_cast<double>(k) / inner);
  add_panels(breaks, r);
  // (1, inf) via r = e^y: integral of f(e^y) e^y dy, decay e^{-(s-1)y}.
  double Y = 38.0 / (s - 1.0);
  std::vector<double> ybreaks{0.0};
  int outer = level - inner;
  for (int k = outer - 1; k >= 0; --k) ybreaks.push_back(Y * std::pow(2.0, -k));
  RadialRule t;
  add_panels(ybreaks, t);
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    double e = std::exp(t.nodes[i]);
    r.nodes.push_back(e);
    r.weights.push_back(t.weights[i] * e);
  }
  for (std::size_t i = 0; i < t.nodes_c.size(); ++i) {
    double e = std::exp(t.nodes_c[i]);
    r.nodes_c.push_back(e);
    r.weights_c.push_back(t.weights_c[i] * e);
  }
  r.descriptor = "algebraic s=" + std::to_string(s) + " panels=" + std::to_string(level);
  return r;
}

}  // namespace stabgeo
