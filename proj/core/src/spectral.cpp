#include "stabgeo/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "stabgeo/geometry.hpp"
#include "stabgeo/rng.hpp"

namespace stabgeo {

namespace {

// Fold a direction to the half-sphere with positive first nonzero coordinate.
void fold_direction(Vec& s) {
  for (double c : s) {
    if (c > 0) return;
    if (c < 0) {
      for (auto& x : s) x = -x;
      return;
    }
  }
}

bool same_direction(const Vec& a, const Vec& b, double tol = 1e-12) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace

StableModel make_discrete(double alpha, Kind kind, std::vector<Vec> directions,
                          std::vector<double> weights) {
  if (directions.size() != weights.size())
    throw InvalidArgument("make_discrete: directions/weights size mismatch");
  if (directions.empty()) throw InvalidArgument("make_discrete: empty spectral measure");
  int d = static_cast<int>(directions.front().size());
  DiscreteAtoms atoms;
  for (std::size_t j = 0; j < directions.size(); ++j) {
    Vec s = directions[j];
    if (static_cast<int>(s.size()) != d) throw InvalidArgument("make_discrete: mixed dimensions");
    double n = norm2(s);
    if (n < 1e-300) throw InvalidArgument("make_discrete: zero direction");
    for (auto& c : s) c /= n;
    // off-sphere atom y contributes w |<u,y>|^alpha = w ||y||^alpha |<u,y/||y||>|^alpha
    double w_scaled = weights[j] * std::pow(n, alpha);
    if (kind == Kind::Symmetric) fold_direction(s);
    bool merged = false;
    for (std::size_t k = 0; k < atoms.directions.size(); ++k) {
      if (same_direction(atoms.directions[k], s)) {
        atoms.weights[k] += w_scaled;
        merged = true;
        break;
      }
    }
    if (!merged) {
      atoms.directions.push_back(std::move(s));
      atoms.weights.push_back(w_scaled);
    }
  }
  StableModel model;
  model.alpha = alpha;
  model.kind = kind;
  model.dim = d;
  model.spectral = std::move(atoms);
  return model;
}

StableModel make_isotropic(double alpha, int dim, double mass) {
  StableModel m;
  m.alpha = alpha;
  m.kind = Kind::Symmetric;
  m.dim = dim;
  m.spectral = IsotropicMass{mass};
  return m;
}

double isotropic_mass_for_scale(double alpha, int dim, double scale) {
  // gauge^alpha = mass / omega_d * int_S |<u,z>|^alpha dz = mass * c, solve for mass.
  double c = cosine_transform_mass(dim, alpha) / omega_d(dim);
  return std::pow(scale, alpha) / c;
}

double isotropic_scale_for_mass(double alpha, int dim, double mass) {
  double c = cosine_transform_mass(dim, alpha) / omega_d(dim);
  return std::pow(mass * c, 1.0 / alpha);
}

StableModel make_isotropic_scale(double alpha, int dim, double scale) {
  return make_isotropic(alpha, dim, isotropic_mass_for_scale(alpha, dim, scale));
}

StableModel make_subgaussian(double alpha, const Matrix& C) {
  if (!is_symmetric(C)) throw InvalidArgument("make_subgaussian: C must be symmetric");
  cholesky(C);  // SPD check
  Matrix m = C;
  for (auto& x : m.a) x *= 0.5;
  StableModel model;
  model.alpha = alpha;
  model.kind = Kind::Symmetric;
  model.dim = C.rows;
  model.spectral = EllipsoidGauge{std::move(m)};
  return model;
}

StableModel make_elliptical(double alpha, const Matrix& M) {
  if (!is_symmetric(M)) throw InvalidArgument("make_elliptical: M must be symmetric");
  cholesky(M);
  StableModel model;
  model.alpha = alpha;
  model.kind = Kind::Symmetric;
  model.dim = M.rows;
  model.spectral = EllipsoidGauge{M};
  return model;
}

StableModel make_spherical_density(double alpha, Kind kind,
                                   std::shared_ptr<const SphereRule> rule,
                                   std::vector<double> values) {
  if (!rule || rule->nodes.size() != values.size())
    throw InvalidArgument("make_spherical_density: rule/value size mismatch");
  StableModel model;
  model.alpha = alpha;
  model.kind = kind;
  model.dim = rule->dim;
  model.spectral = SphericalDensity{std::move(rule), std::move(values)};
  return model;
}

Diagnostics validate_model(const StableModel& model) {
  Diagnostics diag;
  auto fail = [&](const std::string& msg) { diag.errors.push_back(msg); };

  if (!(model.alpha > 0.0) || model.alpha > 2.0) fail("alpha outside (0,2]");
  if (model.kind == Kind::OneSided && model.alpha >= 1.0)
    fail("one-sided requires alpha < 1 (degenerate at alpha = 1)");
  if (model.dim < 1) fail("dimension must be positive");
  if (model.alpha == 2.0) diag.notes.push_back("alpha = 2: spectral measure not unique");

  if (const auto* atoms = std::get_if<DiscreteAtoms>(&model.spectral)) {
    double mass = 0;
    Matrix scatter(model.dim, model.dim);
    for (std::size_t j = 0; j < atoms->directions.size(); ++j) {
      const Vec& s = atoms->directions[j];
      if (static_cast<int>(s.size()) != model.dim) {
        fail("atom " + std::to_string(j) + ": wrong dimension");
        continue;
      }
      if (std::fabs(norm2(s) - 1.0) > 1e-12) fail("atom " + std::to_string(j) + ": direction not unit");
      double w = atoms->weights[j];
      if (!(w >= 0)) fail("atom " + std::to_string(j) + ": negative weight");
      mass += w;
      if (model.kind == Kind::OneSided) {
        for (double c : s)
          if (c < -1e-12) {
            fail("atom " + std::to_string(j) + ": direction outside positive orthant");
            break;
          }
      }
      for (int a = 0; a < model.dim; ++a)
        for (int b = 0; b < model.dim; ++b) scatter(a, b) += w * s[a] * s[b];
    }
    if (!(mass > 0)) fail("total mass not positive");
    if (diag.errors.empty() && rank_psd(scatter) < model.dim) fail("not full-dimensional");
  } else if (const auto* dens = std::get_if<SphericalDensity>(&model.spectral)) {
    double mass = 0;
    Matrix scatter(model.dim, model.dim);
    for (std::size_t j = 0; j < dens->values.size(); ++j) {
      double v = dens->values[j];
      if (!(v >= 0)) fail("density value " + std::to_string(j) + ": negative");
      double w = v * dens->rule->weights[j];
      mass += w;
      const Vec& s = dens->rule->nodes[j];
      for (int a = 0; a < model.dim; ++a)
        for (int b = 0; b < model.dim; ++b) scatter(a, b) += w * s[a] * s[b];
    }
    if (!(mass > 0)) fail("total mass not positive");
    if (diag.errors.empty() && rank_psd(scatter) < model.dim) fail("not full-dimensional");
  } else if (const auto* iso = std::get_if<IsotropicMass>(&model.spectral)) {
    if (!(iso->mass > 0)) fail("total mass not positive");
  } else if (const auto* ell = std::get_if<EllipsoidGauge>(&model.spectral)) {
    if (!is_symmetric(ell->m)) fail("explicit gauge matrix not symmetric");
    else {
      auto ev = sym_eigenvalues(ell->m);
      if (ev.front() <= 0) fail("explicit gauge matrix not positive definite");
    }
  } else if (const auto* del = std::get_if<GaugeDelegate>(&model.spectral)) {
    if (!del->source) {
      fail("delegate gauge has no source model");
    } else {
      Diagnostics inner = validate_model(*del->source);
      for (auto& e : inner.errors) diag.errors.push_back("source: " + e);
    }
  }

  // Sampled degree-1 homogeneity for explicit gauges.
  if (diag.errors.empty() &&
      (std::holds_alternative<EllipsoidGauge>(model.spectral) ||
       std::holds_alternative<GaugeDelegate>(model.spectral))) {
    CounterRng rng(20240915u);
    for (int k = 0; k < 16; ++k) {
      Vec u(model.dim);
      for (int j = 0; j < model.dim; ++j) u[j] = rng.normal(2 * (k * model.dim + j));
      double c = 0.25 + 4.0 * rng.u01(1000 + k);
      double g1 = gauge(model, u);
      double gc = gauge(model, scaled(u, c));
      if (std::fabs(gc - c * g1) > 1e-10 * std::max(1.0, c * g1)) {
        fail("explicit gauge not positively homogeneous of degree 1");
        break;
      }
    }
  }
  return diag;
}

SpectralMeasure scale_measure(const SpectralMeasure& m, double c) {
  if (!(c > 0)) throw InvalidArgument("scale_measure: c must be positive");
  SpectralMeasure out = m;
  if (auto* atoms = std::get_if<DiscreteAtoms>(&out)) {
    for (auto& w : atoms->weights) w *= c;
  } else if (auto* dens = std::get_if<SphericalDensity>(&out)) {
    for (auto& v : dens->values) v *= c;
  } else if (auto* iso = std::get_if<IsotropicMass>(&out)) {
    iso->mass *= c;
  }
  return out;
}

StableModel scale_model(const StableModel& model, double c) {
  if (!(c > 0)) throw InvalidArgument("scale_model: c must be positive");
  StableModel out = model;
  if (auto* atoms = std::get_if<DiscreteAtoms>(&out.spectral)) {
    for (auto& w : atoms->weights) w *= c;
  } else if (auto* dens = std::get_if<SphericalDensity>(&out.spectral)) {
    for (auto& v : dens->values) v *= c;
  } else if (auto* iso = std::get_if<IsotropicMass>(&out.spectral)) {
    iso->mass *= c;
  } else if (auto* ell = std::get_if<EllipsoidGauge>(&out.spectral)) {
    // gauge^alpha scales by c  <=>  matrix scales by c^{2/alpha}.
    double f = std::pow(c, 2.0 / model.alpha);
    for (auto& x : ell->m.a) x *= f;
  } else {
    throw InvalidArgument("scale_model: cannot scale a delegate gauge");
  }
  return out;
}

double total_mass(const SpectralMeasure& m) {
  if (const auto* atoms = std::get_if<DiscreteAtoms>(&m)) {
    double s = 0;
    for (double w : atoms->weights) s += w;
    return s;
  }
  if (const auto* dens = std::get_if<SphericalDensity>(&m)) {
    double s = 0;
    for (std::size_t j = 0; j < dens->values.size(); ++j)
      s += dens->values[j] * dens->rule->weights[j];
    return s;
  }
  return std::get<IsotropicMass>(m).mass;
}

double spectral_mass(const StableModel& model, const SphereRule& rule) {
  if (const auto* atoms = std::get_if<DiscreteAtoms>(&model.spectral)) {
    SpectralMeasure m = *atoms;
    return total_mass(m);
  }
  if (const auto* iso = std::get_if<IsotropicMass>(&model.spectral)) return iso->mass;
  if (const auto* dens = std::get_if<SphericalDensity>(&model.spectral)) {
    SpectralMeasure m = *dens;
    return total_mass(m);
  }
  double integral =
      integrate_sphere(rule, [&](const Vec& u) { return std::pow(gauge(model, u), model.alpha); })
          .value;
  return integral / cosine_transform_mass(model.dim, model.alpha);
}

StableModel spectral_from_star_body(const std::function<double(const Vec&)>& rho_L, double alpha,
                                    std::shared_ptr<const SphereRule> rule, Kind kind) {
  if (!rule) throw InvalidArgument("spectral_from_star_body: missing rule");
  int d = rule->dim;
  std::vector<double> values(rule->nodes.size());
  for (std::size_t j = 0; j < rule->nodes.size(); ++j) {
    double rho = rho_L(rule->nodes[j]);
    if (!std::isfinite(rho) || rho <= 0)
      throw NumericalError("spectral_from_star_body: nonfinite or nonpositive radial value at node " +
                           std::to_string(j));
    values[j] = std::pow(rho, d + alpha) / (d + alpha);
  }
  return make_spherical_density(alpha, kind, std::move(rule), std::move(values));
}

SpectralMeasure estimate_spectral_from_samples(const std::vector<Vec>& samples, double t,
                                               const TailEstimateOptions& opts) {
  if (!(t > 0)) throw InvalidArgument("estimate_spectral_from_samples: threshold must be positive");
  std::vector<Vec> dirs;
  for (const Vec& x : samples) {
    double n = norm2(x);
    if (n >= t) {
      Vec s = x;
      for (auto& c : s) c /= n;
      if (opts.kind == Kind::Symmetric) fold_direction(s);
      dirs.push_back(std::move(s));
    }
  }
  if (dirs.empty())
    throw NumericalError("estimate_spectral_from_samples: no samples above threshold (empty tail)");
  double w = 1.0 / static_cast<double>(dirs.size());

  DiscreteAtoms atoms;
  if (opts.angular_bins > 0) {
    if (dirs.front().size() != 2)
      throw InvalidArgument("estimate_spectral_from_samples: angular binning is d=2 only");
    int nb = opts.angular_bins;
    std::vector<double> cx(nb, 0.0), cy(nb, 0.0), cw(nb, 0.0);
    const double pi = 3.14159265358979323846;
    for (const Vec& s : dirs) {
      double th = std::atan2(s[1], s[0]);
      if (opts.kind == Kind::Symmetric && th < 0) th += pi;  // folded range [0,pi)
      double span = (opts.kind == Kind::Symmetric) ? pi : 2 * pi;
      if (th < 0) th += 2 * pi;
      int b = std::min(nb - 1, static_cast<int>(th / span * nb));
      cx[b] += s[0];
      cy[b] += s[1];
      cw[b] += w;
    }
    for (int b = 0; b < nb; ++b) {
      if (cw[b] == 0) continue;
      Vec s{cx[b], cy[b]};
      double n = norm2(s);
      if (n < 1e-300) continue;
      s[0] /= n;
      s[1] /= n;
      if (opts.kind == Kind::Symmetric) fold_direction(s);
      atoms.directions.push_back(s);
      atoms.weights.push_back(cw[b]);
    }
  } else {
    for (auto& s : dirs) {
      bool merged = false;
      for (std::size_t k = 0; k < atoms.directions.size(); ++k) {
        if (same_direction(atoms.directions[k], s)) {
          atoms.weights[k] += w;
          merged = true;
          break;
        }
      }
      if (!merged) {
        atoms.directions.push_back(std::move(s));
        atoms.weights.push_back(w);
      }
    }
  }
  return atoms;
}

std::uint64_t model_fingerprint(const StableModel& model) {
  std::uint64_t h = fnv1a(model.alpha, 0xcbf29ce484222325ULL);
  h = fnv1a(static_cast<std::uint64_t>(model.kind), h);
  h = fnv1a(static_cast<std::uint64_t>(model.dim), h);
  if (const auto* atoms = std::get_if<DiscreteAtoms>(&model.spectral)) {
    for (std::size_t j = 0; j < atoms->directions.size(); ++j) {
      for (double c : atoms->directions[j]) h = fnv1a(c, h);
      h = fnv1a(atoms->weights[j], h);
    }
  } else if (const auto* dens = std::get_if<SphericalDensity>(&model.spectral)) {
    for (double v : dens->values) h = fnv1a(v, h);
  } else if (const auto* iso = std::get_if<IsotropicMass>(&model.spectral)) {
    h = fnv1a(iso->mass, h);
  } else if (const auto* ell = std::get_if<EllipsoidGauge>(&model.spectral)) {
    for (double v : ell->m.a) h = fnv1a(v, h);
  } else if (const auto* del = std::get_if<GaugeDelegate>(&model.spectral)) {
    h = fnv1a(model_fingerprint(*del->source), h);
  }
  return h;
}

}  // namespace stabgeo
