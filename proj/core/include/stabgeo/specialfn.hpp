#pragma once

#include "stabgeo/common.hpp"

namespace stabgeo {

/// Gamma function on the real line minus the nonpositive integers.
/// Throws InvalidArgument at poles.
double gamma_fn(double x);

double lgamma_fn(double x);

double beta_fn(double a, double b);

/// Volume of the unit Euclidean ball, kappa_d = pi^{d/2} / Gamma(1 + d/2);
/// defined for real d > 0.
double kappa_d(double d);

/// Surface area of the unit sphere S^{d-1}: omega_d = d * kappa_d.
double omega_d(int d);

/// Integral of |<u,y>|^alpha over the unit sphere S^{d-1} for unit y:
/// 2 pi^{(d-1)/2} Gamma((alpha+1)/2) / Gamma((alpha+d)/2).
double cosine_transform_mass(int d, double alpha);

/// Tail constant of a standard 1-d law with characteristic function
/// e^{-|t|^alpha}, alpha in (0,2): P(|X| > x) ~ K_alpha x^{-alpha} with
/// K_alpha = 2^alpha Gamma((alpha+1)/2) / (sqrt(pi) Gamma(1 - alpha/2)).
double stable_tail_constant(double alpha);

}  // namespace stabgeo
