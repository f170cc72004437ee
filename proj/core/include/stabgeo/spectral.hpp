#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "stabgeo/common.hpp"
#include "stabgeo/linalg.hpp"
#include "stabgeo/quadrature.hpp"

namespace stabgeo {

enum class Kind { Symmetric, OneSided };

/// Discrete spectral measure.  For symmetric models atoms live on the
/// canonical half-sphere (first nonzero coordinate positive) and each weight
/// counts both +-s, so that gauge(u)^alpha = sum_j w_j |<u,s_j>|^alpha holds
/// with no extra factor.  For one-sided models atoms live on the closed
/// positive orthant.
struct DiscreteAtoms {
  std::vector<Vec> directions;
  std::vector<double> weights;
};

/// Spherical density tabulated on the nodes of a fixed rule, so that two
/// measures can be compared node by node.
struct SphericalDensity {
  std::shared_ptr<const SphereRule> rule;
  std::vector<double> values;
};

/// Uniform measure on the sphere with the given total mass.
struct IsotropicMass {
  double mass = 0.0;
};

struct StableModel;

/// Direct gauge evaluator for elliptical models: gauge(u)^2 = u' m u.
/// Sub-Gaussian models with matrix C use m = C/2, i.e. gauge^2 = <Cu,u>/2.
struct EllipsoidGauge {
  Matrix m;
};

/// Gauge borrowed from another model (sub-stable transforms share the star
/// body of their source while changing the exponent).
struct GaugeDelegate {
  std::shared_ptr<const StableModel> source;
};

struct StableModel {
  double alpha = 1.0;
  Kind kind = Kind::Symmetric;
  int dim = 0;
  std::variant<DiscreteAtoms, SphericalDensity, IsotropicMass, EllipsoidGauge, GaugeDelegate> spectral;

  bool is_discrete() const { return std::holds_alternative<DiscreteAtoms>(spectral); }
  const DiscreteAtoms& atoms() const { return std::get<DiscreteAtoms>(spectral); }
};

using SpectralMeasure = std::variant<DiscreteAtoms, SphericalDensity, IsotropicMass>;

struct Diagnostics {
  std::vector<std::string> errors;
  std::vector<std::string> notes;
  bool ok() const { return errors.empty(); }
};

/// Canonicalises atoms (symmetric: fold to the half-sphere, merge duplicates).
StableModel make_discrete(double alpha, Kind kind, std::vector<Vec> directions,
                          std::vector<double> weights);

StableModel make_isotropic(double alpha, int dim, double mass);

/// Isotropic model with gauge(u) = scale * ||u||; computes the matching mass.
StableModel make_isotropic_scale(double alpha, int dim, double scale);
double isotropic_mass_for_scale(double alpha, int dim, double scale);
double isotropic_scale_for_mass(double alpha, int dim, double mass);

/// Sub-Gaussian model: gauge(u)^2 = <Cu,u>/2 for SPD C.
StableModel make_subgaussian(double alpha, const Matrix& C);

/// Elliptical model with gauge(u)^2 = u' M u directly.
StableModel make_elliptical(double alpha, const Matrix& M);

StableModel make_spherical_density(double alpha, Kind kind,
                                   std::shared_ptr<const SphereRule> rule,
                                   std::vector<double> values);

/// Diagnostic pass: alpha range, weight positivity, unit directions, orthant
/// condition for one-sided models, full dimensionality (rank of sum w s s').
/// alpha = 2 is accepted with a non-uniqueness note.
Diagnostics validate_model(const StableModel& model);

SpectralMeasure scale_measure(const SpectralMeasure& m, double c);
StableModel scale_model(const StableModel& model, double c);
double total_mass(const SpectralMeasure& m);

/// Total spectral mass of an arbitrary symmetric model, recovered through the
/// identity  int_S gauge^alpha du = mass * int_S |<u,e>|^alpha du.
double spectral_mass(const StableModel& model, const SphereRule& rule);

/// Spectral measure with density rho_L(u)^{d+alpha}/(d+alpha) on the rule
/// nodes, built from the radial function of a star body L.
StableModel spectral_from_star_body(const std::function<double(const Vec&)>& rho_L, double alpha,
                                    std::shared_ptr<const SphereRule> rule, Kind kind = Kind::Symmetric);

struct TailEstimateOptions {
  Kind kind = Kind::Symmetric;
  int angular_bins = 0;  // d=2 only; 0 = one atom per retained sample
};

/// Empirical spectral measure at threshold t: directions of samples with
/// ||x|| >= t, weight 1/m each, folded for symmetric kind.
SpectralMeasure estimate_spectral_from_samples(const std::vector<Vec>& samples, double t,
                                               const TailEstimateOptions& opts = {});

std::uint64_t model_fingerprint(const StableModel& model);

}  // namespace stabgeo
