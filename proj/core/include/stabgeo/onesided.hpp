#pragma once

#include "stabgeo/common.hpp"
#include "stabgeo/spectral.hpp"

namespace stabgeo {

/// Laplace exponent psi(u) = sum w_j <u,s_j>^alpha of a one-sided model.
double laplace_exponent(const StableModel& model, const Vec& u);

/// E e^{-<u,xi>} = e^{-psi(u)}, u >= 0 coordinatewise.
double laplace(const StableModel& model, const Vec& u);

/// Atom of an L1(p)-zonoid: nonnegative scale vector plus weight; the body is
/// sum w_j * (y_j-rescaled l_q ball), q conjugate to p.
struct L1pAtom {
  Vec y;
  double w = 1.0;
};

/// h(K,u) = sum w_j ||y_j o u||_p (p = infinity uses the max norm).
double l1p_zonoid_support(const std::vector<L1pAtom>& atoms, double p, const Vec& u);

/// Atoms (s_j^alpha, w_j) of the associated L1(1/alpha)-zonoid of a one-sided
/// model (psi(u) = h(K, u^alpha) exactly under this mapping).
std::vector<L1pAtom> assoc_zonoid_atoms(const StableModel& model);

/// h(K, u^alpha) evaluated through the zonoid representation; equals psi(u).
double assoc_zonoid_support(const StableModel& model, const Vec& u);

/// Random vector stable under coordinatewise p-sums, represented by the
/// one-sided core of its p-th power: xi is p-sum stable with exponent
/// alpha = p * core.alpha iff xi^p is arithmetic-sum stable with core.alpha.
struct PSumModel {
  double p = 1.0;
  StableModel core;

  double alpha() const { return p * core.alpha; }
};

PSumModel psum_from_core(double p, StableModel core);
const StableModel& psum_to_core(const PSumModel& model);

/// E chi_u(xi) = laplace(core, u^p) for the p-sum character chi_u.
double psum_character_expectation(const PSumModel& model, const Vec& u);

/// Max-stable CDF: P(xi <= u^{-1}) = exp(-sum w_j max_i u_i y_{j,i}), u > 0.
double maxstable_cdf(const std::vector<L1pAtom>& atoms, const Vec& u);

/// E <xi,u>^beta = Gamma(1-beta/alpha)/Gamma(1-beta) psi(u)^{beta/alpha},
/// beta in (0, alpha).
double onesided_moment_pos(const StableModel& model, const Vec& u, double beta);

/// E <xi,u>^{-lambda-1} = Gamma((1+lambda)/alpha)/(alpha Gamma(1+lambda))
/// * psi(u)^{-(lambda+1)/alpha}, lambda > -1.
double onesided_moment_neg(const StableModel& model, const Vec& u, double lambda);

enum class LaplaceOrder { FirstDominates, SecondDominates, Equal, Incomparable };

/// Pointwise comparison of the Laplace exponents on positive-orthant nodes;
/// FirstDominates means psi_1 >= psi_2 everywhere (zonoid inclusion K2 in K1,
/// i.e. the first law has the smaller Laplace transform).
LaplaceOrder laplace_ordering(const StableModel& a, const StableModel& b, int level = 64,
                              double tol = 1e-10);

}  // namespace stabgeo
