#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabgeo/common.hpp"
#include "stabgeo/specialfn.hpp"

namespace stabgeo {

enum class RuleKind { PointPair, Circle, Product3, MonteCarlo, Panels };

/// Quadrature rule on the unit sphere S^{d-1}; weights sum to omega_d.
/// Every rule is antithetic: -u is a node whenever u is, with equal weight.
struct SphereRule {
  int dim = 0;
  RuleKind kind = RuleKind::Circle;
  std::vector<Vec> nodes;
  std::vector<double> weights;
  std::string exactness;
  int n1 = 0, n2 = 0;  // product rule: polar x azimuth counts
};

/// Trapezoidal rule on the circle, n even, n >= 8.  For n divisible by 4 the
/// nodes are offset half a step so none lands on a coordinate axis (required
/// by the principal-value integrals); spectrally accurate either way.
SphereRule circle_rule(int n);

/// d=1: the two points +-1.  d=2: circle_rule(level).  d=3: Gauss-Legendre in
/// cos(polar) x trapezoid in azimuth, level x 2*level nodes.  d>=4: equal
/// weight antithetic random directions (2*level of them), seed required.
SphereRule sphere_rule(int d, int level, std::optional<std::uint64_t> seed = std::nullopt);

SphereRule default_sphere_rule(int d, std::optional<std::uint64_t> seed = std::nullopt);

/// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

enum class RadialTail { ExpPower, Algebraic };

/// Composite Gauss rule on (0, infinity) adapted to a declared decay class:
/// ExpPower integrates f with f(r) ~ e^{-r^alpha} tails; Algebraic handles
/// f(r) ~ r^{-s}, s > 1 (log substitution past r = 1).  Carries an embedded
/// lower-order rule for the error estimate.
struct RadialRule {
  RadialTail tail = RadialTail::ExpPower;
  double param = 1.0;
  std::vector<double> nodes, weights;    // main rule
  std::vector<double> nodes_c, weights_c;  // embedded coarse rule
  std::string descriptor;
};

RadialRule radial_rule_exp_power(double alpha, int level = 16);
RadialRule radial_rule_algebraic(double s, int level = 24);

template <class F>
Estimate integrate_radial(const RadialRule& rule, F&& f) {
  std::vector<double> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double v = f(rule.nodes[i]);
    if (!std::isfinite(v))
      throw NumericalError("integrate_radial: nonfinite integrand at node " + std::to_string(i));
    terms[i] = rule.weights[i] * v;
  }
  double s = pairwise_sum(terms);
  std::vector<double> coarse(rule.nodes_c.size());
  for (std::size_t i = 0; i < rule.nodes_c.size(); ++i) coarse[i] = rule.weights_c[i] * f(rule.nodes_c[i]);
  double sc = pairwise_sum(coarse);
  return {s, std::fabs(s - sc)};
}

template <class F>
Estimate integrate_sphere(const SphereRule& rule, F&& f) {
  const std::size_t n = rule.nodes.size();
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = f(rule.nodes[i]);
    if (!std::isfinite(vals[i]))
      throw NumericalError("integrate_sphere: nonfinite integrand at node " + std::to_string(i));
  }
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) terms[i] = rule.weights[i] * vals[i];
  double s = pairwise_sum(terms);

  double err = 0.0;
  switch (rule.kind) {
    case RuleKind::PointPair:
      err = 0.0;
      break;
    case RuleKind::Circle: {
      // Subsampled trapezoid (every other node, doubled weight).
      std::vector<double> half;
      half.reserve(n / 2);
      for (std::size_t i = 0; i < n; i += 2) half.push_back(2.0 * terms[i]);
      err = std::fabs(s - pairwise_sum(half));
      break;
    }
    case RuleKind::Product3: {
      // Halve the azimuthal count.
      std::vector<double> half;
      half.reserve(n / 2);
      for (int i = 0; i < rule.n1; ++i)
        for (int k = 0; k < rule.n2; k += 2)
          half.push_back(2.0 * terms[static_cast<std::size_t>(i) * rule.n2 + k]);
      err = std::fabs(s - pairwise_sum(half));
      break;
    }
    case RuleKind::Panels: {
      // Graded Gauss panels in blocks of 16; n2 panels per block, the first
      // panel of each block is the finest one at a kink.  Its contribution
      // bounds the remaining grading truncation.
      double finest = 0;
      const std::size_t block = static_cast<std::size_t>(rule.n2) * 16;
      for (std::size_t start = 0; start + block <= n; start += block)
        for (int i = 0; i < 16; ++i) finest += terms[start + i];
      err = std::fabs(finest);
      break;
    }
    case RuleKind::MonteCarlo: {
      // Standard error over antithetic pair means (pairs stored adjacently).
      const std::size_t m = n / 2;
      double mean = s / omega_d(rule.dim);
      double var = 0;
      for (std::size_t p = 0; p < m; ++p) {
        double pm = 0.5 * (vals[2 * p] + vals[2 * p + 1]);
        var += (pm - mean) * (pm - mean);
      }
      var /= (m > 1 ? (m - 1) : 1);
      err = omega_d(rule.dim) * std::sqrt(var / m);
      break;
    }
  }
  return {s, err};
}

}  // namespace stabgeo
