#include "stabgeo/specialfn.hpp"

#include <cmath>

namespace stabgeo {

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw InvalidArgument("gamma_fn: pole at nonpositive integer");
  return std::tgamma(x);
}

double lgamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw InvalidArgument("lgamma_fn: pole at nonpositive integer");
  return std::lgamma(x);
}

double beta_fn(double a, double b) {
  return std::exp(lgamma_fn(a) + lgamma_fn(b) - lgamma_fn(a + b));
}

double kappa_d(double d) {
  if (d <= 0) throw InvalidArgument("kappa_d: d must be positive");
  return std::pow(3.14159265358979323846, d / 2.0) / gamma_fn(1.0 + d / 2.0);
}

double omega_d(int d) {
  if (d < 1) throw InvalidArgument("omega_d: d must be >= 1");
  if (d == 1) return 2.0;  // S^0 = two points
  return d * kappa_d(d);
}

double cosine_transform_mass(int d, double alpha) {
  const double pi = 3.14159265358979323846;
  return 2.0 * std::pow(pi, (d - 1) / 2.0) * gamma_fn((alpha + 1) / 2.0) /
         gamma_fn((alpha + d) / 2.0);
}

double stable_tail_constant(double alpha) {
  if (alpha <= 0 || alpha >= 2) throw InvalidArgument("stable_tail_constant: alpha in (0,2)");
  const double pi = 3.14159265358979323846;
  return std::pow(2.0, alpha) * gamma_fn((alpha + 1) / 2.0) /
         (std::sqrt(pi) * gamma_fn(1.0 - alpha / 2.0));
}

}  // namespace stabgeo
