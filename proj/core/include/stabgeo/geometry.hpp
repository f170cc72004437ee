#pragma once

#include <memory>

#include "stabgeo/common.hpp"
#include "stabgeo/linalg.hpp"
#include "stabgeo/quadrature.hpp"
#include "stabgeo/spectral.hpp"

namespace stabgeo {

/// Minkowski functional ||u||_F of the associated star body.  Discrete
/// measures give (sum w |<u,s>|^alpha)^{1/alpha}; one-sided models use
/// <u,s>^alpha and require u in the closed positive orthant.
double gauge(const StableModel& model, const Vec& u);

/// True when the spectral measure is not concentrated on a great sub-sphere.
bool is_full_dimensional(const StableModel& model);

/// Support point T(K,u) = grad h(K,u) of the associated zonoid, alpha > 1.
Vec support_point(const StableModel& model, const Vec& u);

/// Cached gauge values of a model on a rule.
struct GaugeView {
  StableModel model;
  std::shared_ptr<const SphereRule> rule;
  std::vector<double> values;

  double value(std::size_t i) const { return values[i]; }
  double radial(std::size_t i) const { return 1.0 / values[i]; }
};

GaugeView make_gauge_view(const StableModel& model, std::shared_ptr<const SphereRule> rule);

/// int_{S^{d-1}} gauge(u)^p du.  For discrete d=2 models the circle is split
/// at the gauge kinks (atom normals) and integrated with Gauss panels, which
/// keeps spectral accuracy; otherwise the given rule is used.
Estimate integrate_gauge_power(const StableModel& model, const SphereRule& rule, double p);

/// Circle rule with Gauss panels graded toward the gauge kinks of a discrete
/// d=2 model; integrates gauge-dependent angular integrands to near machine
/// precision.  Carries a finest-panel truncation probe as its error estimate.
SphereRule adapted_circle_rule(const StableModel& model, int levels = 20);

/// |F| by the polar formula (1/d) int rho_F^d; degenerate models yield an
/// infinite-volume signal (value = +infinity).
Estimate volume(const StableModel& model, const SphereRule& rule);

/// Vol_{d-1}(F intersect u-perp); d=2 reduces to rho(v) + rho(-v) with v perp u.
Estimate section_volume(const StableModel& model, const Vec& u, int level = 512);

/// Vol_k of the section of F with the span of the orthonormal columns of basis.
Estimate section_volume_subspace(const StableModel& model, const Matrix& basis, int level = 512);

/// alpha-star sum: spectral measures added; gauges satisfy
/// ||u||^alpha = ||u||_1^alpha + ||u||_2^alpha.
StableModel star_sum(const StableModel& a, const StableModel& b);

/// Sub-stable transform: same star body, exponent alpha*beta, beta in (0,1).
StableModel substable_transform(const StableModel& model, double beta);

/// Distribution of the projection onto the span of the orthonormal columns of
/// basis, expressed in basis coordinates.
StableModel project_model(const StableModel& model, const Matrix& basis);

/// Centred ellipsoid {x : x' m x <= 1}.
struct Ellipsoid {
  Matrix m;
};

struct JohnResult {
  Ellipsoid ellipsoid;
  /// max over constraint directions of h(E,u)/h(K,u) - 1  (<= tol certifies E in K)
  double inner_violation = 0.0;
  /// max over constraint directions of h(K,u)/(sqrt(d) h(E,u))  (<= 1+tol certifies K in sqrt(d) E)
  double outer_ratio = 0.0;
  int iterations = 0;
};

/// Maximal-volume centred ellipsoid inscribed in the polytope
/// {x : <x,u_i> <= h(K,u_i)} over the constraint direction set, computed by
/// determinant-maximisation coordinate ascent; d = 2 or 3, alpha >= 1.
JohnResult john_ellipsoid(const StableModel& model, int directions = 0);

/// sup over rule nodes of |h(K1,u)^alpha - h(K2,u)^alpha|; equal alpha required.
double metric_m_alpha(const StableModel& a, const StableModel& b, const SphereRule& rule);

/// Principal value of int_F du/(u1 u2) for a full-dimensional symmetric d=2
/// model, via the circle integral of log rho_F(v)/(v1 v2) on an axis-avoiding
/// antithetic rule.  |I(F)| <= pi^2 enforced.
double iF_functional(const StableModel& model, int n = 2048);

struct BirkhoffResult {
  bool orthogonal = false;
  double margin = 0.0;       // min_c gauge(x + c y) - gauge(x)
  double minimizer_c = 0.0;
};

/// Birkhoff (James) normality of x to y: gauge(x + c y) >= gauge(x) for all c.
BirkhoffResult birkhoff_orthogonal(const StableModel& model, const Vec& x, const Vec& y,
                                   double tol = 1e-7);

/// Support function h(F, v) of the star body itself (closed form for
/// elliptical gauges, scan + local refinement otherwise; d <= 3 generic).
double polar_support(const StableModel& model, const Vec& v);

/// Volume of the polar body K = F* for alpha >= 1 (Blaschke-Santalo tests).
Estimate polar_volume(const StableModel& model, const SphereRule& rule);

/// ||K|| = max_u h(K,u) over rule nodes.
double body_norm(const StableModel& model, const SphereRule& rule);

/// Orthonormal basis of the orthogonal complement of u (d x (d-1)).
Matrix complement_basis(const Vec& u);

}  // namespace stabgeo
