#pragma once

#include "stabgeo/common.hpp"
#include "stabgeo/geometry.hpp"
#include "stabgeo/spectral.hpp"

namespace stabgeo {

/// Covariation [<xi,u1>, <xi,u2>]_alpha = h(K,u2)^{alpha-1} h(T(K,u2), u1),
/// alpha in (1,2].
double covariation(const StableModel& model, const Vec& u1, const Vec& u2);

/// Slope of E(xi_1 | xi_2) for a bivariate model, alpha > 1.
double regression_coefficient(const StableModel& model);

struct LinearityResult {
  bool is_linear = false;
  Vec a;             // witness normal, a[axis] = 1
  double residual = 0;  // max |<grad h(K,u), a>| over nodes u perp e_axis
  double scale = 0;     // max gradient norm over those nodes
};

/// Multiple-regression linearity test: fits a (pinned a[axis] = 1) minimising
/// sum <grad h(K,u), a>^2 over nodes u perp e_axis; linear iff the max
/// residual is below tol * scale.
LinearityResult regression_linearity_check(const StableModel& model, int axis, int level = 64,
                                           double tol = 1e-7);

struct JamesResult {
  bool orthogonal = false;
  double margin = 0;        // strip slack: rho_F((0,1)) - max rho_F(u)|u2|
  double covariation = 0;   // [xi1,xi2]_alpha when alpha > 1 (NaN otherwise)
};

/// Bivariate James orthogonality xi_2 -| xi_1 via the strip test
/// F subset R x [-a,a]; cross-checked against covariation = 0 for alpha > 1.
JamesResult james_orthogonal_bivariate(const StableModel& model, double tol = 1e-7);

struct StrongJamesResult {
  bool strong = false;
  bool weak = false;
  double min_margin = 0;
};

/// Strong James orthogonality of the last d2 coordinates to the first d1:
/// gauge(u+v) >= gauge(v) over block node pairs and scales; the weak variant
/// uses u = c(1,..,1,0,..), v = (0,..,1,..,1) over a c-grid.
StrongJamesResult strong_james_check(const StableModel& model, int d1, int d2, int level = 32,
                                     double tol = 1e-7);

/// Coordinate-split independence: gauge((u,v))^alpha additive over the blocks.
bool independence_check(const StableModel& model, int d1, int level = 32, double tol = 1e-7);

enum class Sense { Min, Max };

struct PortfolioResult {
  Vec u;
  double gauge_value = 0;
  double stationarity = 0;  // most negative probe derivative (>= -tol certifies)
  int best_start = -1;
};

/// Optimise gauge(u) over {<u,mu> = r, <u,1> = 1} (scale of <xi,u>, hence of
/// E|<xi,u>|^lambda for lambda in (0,alpha)); multi-start local search, d <= 4.
/// Max sense is only defined when the feasible set is a single point: the
/// gauge is 1-homogeneous, so its supremum over an unbounded affine set is
/// infinite.
PortfolioResult portfolio_direction(const StableModel& model, const Vec& mu, double r,
                                    double lambda, Sense sense);

}  // namespace stabgeo
