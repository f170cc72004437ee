#include "stabgeo/onesided.hpp"

#include <algorithm>
#include <cmath>

#include "stabgeo/geometry.hpp"
#include "stabgeo/specialfn.hpp"

namespace stabgeo {

namespace {

void require_onesided(const StableModel& m, const char* op) {
  if (m.kind != Kind::OneSided) throw InvalidArgument(std::string(op) + ": one-sided model required");
  if (!(m.alpha > 0 && m.alpha < 1))
    throw InvalidArgument(std::string(op) + ": alpha outside (0,1) (degenerate at alpha = 1)");
}

void require_orthant(const Vec& u, const char* op) {
  for (double c : u)
    if (c < 0) throw InvalidArgument(std::string(op) + ": u must be coordinatewise nonnegative");
}

}  // namespace

double laplace_exponent(const StableModel& model, const Vec& u) {
  require_onesided(model, "laplace_exponent");
  require_orthant(u, "laplace_exponent");
  return std::pow(gauge(model, u), model.alpha);
}

double laplace(const StableModel& model, const Vec& u) {
  return std::exp(-laplace_exponent(model, u));
}

double l1p_zonoid_support(const std::vector<L1pAtom>& atoms, double p, const Vec& u) {
  if (!(p >= 1.0)) throw InvalidArgument("l1p_zonoid_support: p >= 1 required");
  double h = 0;
  for (const auto& atom : atoms) {
    if (atom.y.size() != u.size()) throw InvalidArgument("l1p_zonoid_support: dimension mismatch");
    double s = 0;
    if (std::isinf(p)) {
      for (std::size_t i = 0; i < u.size(); ++i)
        s = std::max(s, std::fabs(atom.y[i] * u[i]));
    } else {
      for (std::size_t i = 0; i < u.size(); ++i)
        s += std::pow(std::fabs(atom.y[i] * u[i]), p);
      s = std::pow(s, 1.0 / p);
    }
    h += atom.w * s;
  }
  return h;
}

std::vector<L1pAtom> assoc_zonoid_atoms(const StableModel& model) {
  require_onesided(model, "assoc_zonoid_atoms");
  const auto* atoms = std::get_if<DiscreteAtoms>(&model.spectral);
  if (!atoms) throw InvalidArgument("assoc_zonoid_atoms: discrete spectral measure required");
  std::vector<L1pAtom> out;
  out.reserve(atoms->directions.size());
  for (std::size_t j = 0; j < atoms->directions.size(); ++j) {
    L1pAtom a;
    a.y.resize(model.dim);
    for (int i = 0; i < model.dim; ++i)
      a.y[i] = std::pow(std::max(atoms->directions[j][i], 0.0), model.alpha);
    a.w = atoms->weights[j];
    out.push_back(std::move(a));
  }
  return out;
}

double assoc_zonoid_support(const StableModel& model, const Vec& u) {
  require_orthant(u, "assoc_zonoid_support");
  auto atoms = assoc_zonoid_atoms(model);
  Vec ua(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) ua[i] = std::pow(u[i], model.alpha);
  return l1p_zonoid_support(atoms, 1.0 / model.alpha, ua);
}

PSumModel psum_from_core(double p, StableModel core) {
  if (!(p > 0) || std::isinf(p))
    throw InvalidArgument("psum_from_core: finite p > 0 required (p = infinity is max-stability)");
  require_onesided(core, "psum_from_core");
  PSumModel m;
  m.p = p;
  m.core = std::move(core);
  return m;
}

const StableModel& psum_to_core(const PSumModel& model) { return model.core; }

double psum_character_expectation(const PSumModel& model, const Vec& u) {
  require_orthant(u, "psum_character_expectation");
  Vec up(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) up[i] = std::pow(u[i], model.p);
  return laplace(model.core, up);
}

double maxstable_cdf(const std::vector<L1pAtom>& atoms, const Vec& u) {
  for (double c : u)
    if (!(c > 0)) throw InvalidArgument("maxstable_cdf: u must be strictly positive");
  double e = 0;
  for (const auto& atom : atoms) {
    if (atom.y.size() != u.size()) throw InvalidArgument("maxstable_cdf: dimension mismatch");
    double mx = 0;
    for (std::size_t i = 0; i < u.size(); ++i) mx = std::max(mx, u[i] * atom.y[i]);
    e += atom.w * mx;
  }
  return std::exp(-e);
}

double onesided_moment_pos(const StableModel& model, const Vec& u, double beta) {
  require_onesided(model, "onesided_moment_pos");
  if (!(beta > 0 && beta < model.alpha))
    throw InvalidArgument("onesided_moment_pos: beta outside (0, alpha)");
  double psi = laplace_exponent(model, u);
  if (!(psi > 0)) throw InvalidArgument("onesided_moment_pos: psi(u) must be positive");
  return gamma_fn(1.0 - beta / model.alpha) / gamma_fn(1.0 - beta) *
         std::pow(psi, beta / model.alpha);
}

double onesided_moment_neg(const StableModel& model, const Vec& u, double lambda) {
  require_onesided(model, "onesided_moment_neg");
  if (!(lambda > -1.0)) throw InvalidArgument("onesided_moment_neg: lambda must exceed -1");
  double psi = laplace_exponent(model, u);
  if (!(psi > 0)) throw InvalidArgument("onesided_moment_neg: psi(u) must be positive");
  return gamma_fn((1.0 + lambda) / model.alpha) / (model.alpha * gamma_fn(1.0 + lambda)) *
         std::pow(psi, -(lambda + 1.0) / model.alpha);
}

LaplaceOrder laplace_ordering(const StableModel& a, const StableModel& b, int level, double tol) {
  if (a.alpha != b.alpha) throw InvalidArgument("laplace_ordering: mismatched alpha");
  if (a.dim != b.dim) throw InvalidArgument("laplace_ordering: mismatched dimension");
  require_onesided(a, "laplace_ordering");
  require_onesided(b, "laplace_ordering");
  std::vector<Vec> nodes;
  if (a.dim == 1) {
    nodes.push_back({1.0});
  } else {
    SphereRule rule = sphere_rule(a.dim, a.dim == 2 ? std::max(level, 16) : level,
                                  std::optional<std::uint64_t>(11u));
    for (const Vec& u : rule.nodes) {
      bool pos = true;
      for (double c : u) pos = pos && (c > 0);
      if (pos) nodes.push_back(u);
    }
  }
  bool a_ge = true, b_ge = true;
  for (const Vec& u : nodes) {
    double pa = laplace_exponent(a, u), pb = laplace_exponent(b, u);
    double scale = std::max({1e-300, pa, pb});
    if (pa < pb - tol * scale) a_ge = false;
    if (pb < pa - tol * scale) b_ge = false;
  }
  if (a_ge && b_ge) return LaplaceOrder::Equal;
  if (a_ge) return LaplaceOrder::FirstDominates;
  if (b_ge) return LaplaceOrder::SecondDominates;
  return LaplaceOrder::Incomparable;
}

}  // namespace stabgeo
