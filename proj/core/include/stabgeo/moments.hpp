#pragma once

#include "stabgeo/common.hpp"
#include "stabgeo/geometry.hpp"
#include "stabgeo/linalg.hpp"
#include "stabgeo/quadrature.hpp"
#include "stabgeo/spectral.hpp"

namespace stabgeo {

/// Characteristic function exp(-gauge(u)^alpha); symmetric models only.
double charfun(const StableModel& model, const Vec& u);

/// Density by Fourier inversion in polar form, d <= 3.  The imaginary part is
/// accumulated from the same panel evaluations and must vanish (|Im| < 1e-8).
Estimate density(const StableModel& model, const Vec& x, const SphereRule& rule,
                 int radial_level = 16);

/// f(0) = (2pi)^{-d} Gamma(1 + d/alpha) |F|; infinite for degenerate models.
Estimate density_at_zero(const StableModel& model, const SphereRule& rule);

struct HessianResult {
  Matrix h;
  double error = 0;
};

/// Hessian of the density at the origin:
/// H_ij = -(2pi)^{-d} Gamma(1+(d+2)/alpha) * (d+2)^{-1} int u_i u_j rho_F^{d+2} du.
HessianResult density_hessian_at_zero(const StableModel& model, const SphereRule& rule);

/// E||xi||^lambda for lambda in (-d, alpha); closed at lambda = 2 when
/// alpha = 2 (the Gamma ratio is identically 1 there).
Estimate norm_moment(const StableModel& model, double lambda, const SphereRule& rule);

/// E|<xi,u>|^lambda for lambda in (-1, alpha).
double scalar_moment(const StableModel& model, const Vec& u, double lambda);

/// Dual-mixed-volume lower bound for E||xi||^lambda (equality iff F is a ball).
Estimate norm_moment_lower_bound(const StableModel& model, double lambda, const SphereRule& rule);

/// E(|xi_1|^l1 |xi_2|^l2), d = 2, l1,l2 > 0, l1+l2 < alpha.
Estimate mixed_abs_moment_2d(const StableModel& model, double l1, double l2, int level = 24);

/// E(xi_1^<l1> xi_2^<l2>) signed mixed moment, d = 2, neither exponent 1,
/// l1+l2 < alpha; principal values by antithetic pairing plus finite-part
/// subtraction at the axes.
Estimate signed_mixed_moment_2d(const StableModel& model, double l1, double l2, int n = 2048);

/// E sign(xi_1 xi_2) = -I(F)/pi^2, d = 2.
double sign_moment_2d(const StableModel& model, int n = 2048);

/// P(xi in A R_+^2) for invertible A, d = 2.
double orthant_probability_2d(const StableModel& model, const Matrix& A, int n = 2048);

/// Distribution of B xi (star body maps by the inverse transpose).
StableModel linear_transform_model(const StableModel& model, const Matrix& B);

/// int_R f(tu) dt = (2pi)^{-(d-1)} Gamma(1+(d-1)/alpha) Vol_{d-1}(F cap u-perp).
Estimate marginal_line_integral(const StableModel& model, const Vec& u, int level = 512);

/// int over the orthogonal complement of span(basis):
/// (2pi)^{-k} Gamma(1+k/alpha) Vol_k(F cap H_k).
Estimate subspace_density_integral(const StableModel& model, const Matrix& basis, int level = 512);

/// int f(cx) f(x) dx = (1+|c|^alpha)^{-d/alpha} f(0), c != 0.
Estimate renyi_overlap(const StableModel& model, double c, const SphereRule& rule);

/// P(xi in x_i [-a_i, a_i]) by the product-kernel inversion formula, d <= 3.
Estimate box_probability(const StableModel& model, const Vec& a, const SphereRule& rule,
                         int radial_level = 16);

/// E exp(-sum lambda_i |xi_i|) via the Laplace-kernel formula with the
/// zeta-expectation folded in analytically, d <= 3.
Estimate laplace_abs(const StableModel& model, const Vec& lambda, int grid = 96);

/// P(||xi|| <= r) by the Bessel-kernel formula, d <= 3.
Estimate ball_probability(const StableModel& model, double r, const SphereRule& rule,
                          int radial_level = 12);

/// E ||xi||_{IF}^{-1} = Gamma(1+1/alpha) |F| / (pi (d-1)).
Estimate intersection_body_moment(const StableModel& model, const SphereRule& rule);

/// The sampled functional ||x|| Vol_{d-1}(F cap x-perp) whose mean the above
/// formula predicts; exposed for the Monte Carlo oracle.
double intersection_body_functional(const StableModel& model, const Vec& x, int level = 512);

/// lim_{lambda->alpha} E||xi||^lambda / Gamma(1-lambda/alpha), alpha < 2.
Estimate moment_limit_ratio(const StableModel& model, const SphereRule& rule);

}  // namespace stabgeo
