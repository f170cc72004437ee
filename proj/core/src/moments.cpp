#include "stabgeo/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stabgeo/specialfn.hpp"

namespace stabgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gamma(1 - lambda/alpha) / Gamma(1 - lambda/2).  For alpha = 2 the arguments
// coincide and the ratio is identically 1, which extends the formulas to the
// closed endpoint lambda = 2.
double gamma_ratio(double lambda, double alpha) {
  if (alpha == 2.0) return 1.0;
  return gamma_fn(1.0 - lambda / alpha) / gamma_fn(1.0 - lambda / 2.0);
}

void require_symmetric(const StableModel& m, const char* op) {
  if (m.kind != Kind::Symmetric)
    throw InvalidArgument(std::string(op) + ": symmetric models only");
}

void require_full_dim(const StableModel& m, const char* op) {
  if (!is_full_dimensional(m)) throw InvalidArgument(std::string(op) + ": degenerate model");
}

struct Gl16 {
  std::vector<double> x, w;
  Gl16() { gauss_legendre(16, x, w); }
};
const Gl16& gl16() {
  static Gl16 g;
  return g;
}

// Panel edges on [0, R]: geometric refinement toward 0 (resolves the s^alpha
// cusp of e^{-s^alpha}) with widths capped at a half period of cos(c s).
std::vector<double> radial_edges(double R, double freq, int depth = 22) {
  double cap = freq > 1e-12 ? kPi / (2.0 * freq) : std::numeric_limits<double>::infinity();
  std::vector<double> edges{0.0};
  double t = std::min(R * std::pow(2.0, -depth), cap);
  while (t < R) {
    edges.push_back(t);
    t = std::min(t * 2.0, t + cap);
    if (edges.size() > 60000) throw NumericalError("radial_edges: oscillation budget exceeded");
  }
  edges.push_back(R);
  return edges;
}

struct CosSin {
  double c = 0, s = 0;
};

// J(c) = int_0^inf e^{-t^alpha} t^{d-1} (cos(ct), sin(ct)) dt.
CosSin oscillatory_radial(double c, double alpha, int d, int depth = 22) {
  double R = std::pow(38.0, 1.0 / alpha);
  auto edges = radial_edges(R, std::fabs(c), depth);
  const auto& g = gl16();
  double sc = 0, ss = 0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    double mid = 0.5 * (edges[p] + edges[p + 1]), h = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < 16; ++i) {
      double t = mid + h * g.x[i];
      double base = h * g.w[i] * std::exp(-std::pow(t, alpha)) * std::pow(t, d - 1);
      sc += base * std::cos(c * t);
      ss += base * std::sin(c * t);
    }
  }
  return {sc, ss};
}

}  // namespace

double charfun(const StableModel& model, const Vec& u) {
  require_symmetric(model, "charfun");
  return std::exp(-std::pow(gauge(model, u), model.alpha));
}

Estimate density(const StableModel& model, const Vec& x, const SphereRule& rule,
                 int radial_level) {
  require_symmetric(model, "density");
  require_full_dim(model, "density");
  if (model.dim > 3) throw InvalidArgument("density: d <= 3 only (cost)");
  const int d = model.dim;
  const double a = model.alpha;
  std::vector<double> terms(rule.nodes.size()), sins(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double g = gauge(model, rule.nodes[i]);
    double c = dot(rule.nodes[i], x) / g;
    CosSin j = oscillatory_radial(c, a, d, radial_level + 6);
    double f = rule.weights[i] * std::pow(g, -d);
    terms[i] = f * j.c;
    sins[i] = f * j.s;
  }
  double val = pairwise_sum(terms) / std::pow(2 * kPi, d);
  double imag = pairwise_sum(sins) / std::pow(2 * kPi, d);
  if (std::fabs(imag) > 1e-8)
    throw NumericalError("density: imaginary part failed to vanish");
  // Error probe: every other node, doubled weights (d=2); azimuth halving (d=3).
  double err = 0;
  if (rule.kind == RuleKind::Circle) {
    std::vector<double> half;
    for (std::size_t i = 0; i < terms.size(); i += 2) half.push_back(2 * terms[i]);
    err = std::fabs(val - pairwise_sum(half) / std::pow(2 * kPi, d));
  } else if (rule.kind == RuleKind::Product3) {
    std::vector<double> half;
    for (int i = 0; i < rule.n1; ++i)
      for (int k = 0; k < rule.n2; k += 2)
        half.push_back(2 * terms[static_cast<std::size_t>(i) * rule.n2 + k]);
    err = std::fabs(val - pairwise_sum(half) / std::pow(2 * kPi, d));
  }
  return {val, err};
}

Estimate density_at_zero(const StableModel& model, const SphereRule& rule) {
  require_symmetric(model, "density_at_zero");
  if (!is_full_dimensional(model)) {
    double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  Estimate vol = volume(model, rule);
  double c = gamma_fn(1.0 + model.dim / model.alpha) / std::pow(2 * kPi, model.dim);
  return {c * vol.value, c * vol.error};
}

HessianResult density_hessian_at_zero(const StableModel& model, const SphereRule& rule) {
  require_symmetric(model, "density_hessian_at_zero");
  require_full_dim(model, "density_hessian_at_zero");
  const int d = model.dim;
  const double coef = -gamma_fn(1.0 + (d + 2.0) / model.alpha) /
                      (std::pow(2 * kPi, d) * (d + 2.0));
  HessianResult res;
  res.h = Matrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Estimate e = integrate_sphere(rule, [&](const Vec& u) {
        return u[i] * u[j] * std::pow(gauge(model, u), -(d + 2.0));
      });
      res.h(i, j) = res.h(j, i) = coef * e.value;
      res.error = std::max(res.error, std::fabs(coef) * e.error);
    }
  return res;
}

namespace {

void check_order(double lambda, double lo, double hi, const char* op) {
  if (!(lambda > lo + 1e-9 && lambda < hi - 1e-9))
    throw InvalidArgument(std::string(op) + ": moment order outside the open interval");
}

}  // namespace

Estimate norm_moment(const StableModel& model, double lambda, const SphereRule& rule) {
  require_symmetric(model, "norm_moment");
  require_full_dim(model, "norm_moment");
  const int d = model.dim;
  if (model.alpha == 2.0) {
    if (!(lambda > -d + 1e-9 && lambda <= 2.0)) throw InvalidArgument("norm_moment: order outside (-d, 2]");
  } else {
    check_order(lambda, -d, model.alpha, "norm_moment");
  }
  Estimate integral = integrate_gauge_power(model, rule, lambda);
  double c = std::pow(2.0, lambda - 1.0) / std::pow(kPi, d / 2.0) *
             gamma_fn((d + lambda) / 2.0) * gamma_ratio(lambda, model.alpha);
  return {c * integral.value, std::fabs(c) * integral.error};
}

double scalar_moment(const StableModel& model, const Vec& u, double lambda) {
  require_symmetric(model, "scalar_moment");
  if (model.alpha == 2.0) {
    if (!(lambda > -1 + 1e-9 && lambda <= 2.0))
      throw InvalidArgument("scalar_moment: order outside (-1, 2]");
  } else {
    check_order(lambda, -1.0, model.alpha, "scalar_moment");
  }
  double g = gauge(model, u);
  return std::pow(2.0, lambda) * gamma_fn((lambda + 1) / 2.0) / std::sqrt(kPi) *
         gamma_ratio(lambda, model.alpha) * std::pow(g, lambda);
}

Estimate norm_moment_lower_bound(const StableModel& model, double lambda, const SphereRule& rule) {
  require_symmetric(model, "norm_moment_lower_bound");
  check_order(lambda, 0.0, model.alpha + (model.alpha == 2.0 ? 1e-8 : 0.0), "norm_moment_lower_bound");
  const int d = model.dim;
  Estimate vol = volume(model, rule);
  double c = std::pow(2.0, lambda) * gamma_fn((d + lambda) / 2.0) / gamma_fn(d / 2.0) *
             gamma_ratio(lambda, model.alpha);
  double v = c * std::pow(kappa_d(d) / vol.value, lambda / d);
  return {v, std::fabs(v) * (lambda / d) * vol.error / vol.value};
}

namespace {

// Graded Gauss panels on [a,b], refined geometrically toward `toward` (= a or b).
template <class F>
double graded_gl(double a, double b, bool toward_a, int levels, F&& f) {
  const auto& g = gl16();
  double total = 0;
  double len = b - a;
  std::vector<double> edges;
  edges.push_back(0.0);
  for (int k = levels - 1; k >= 0; --k) edges.push_back(std::pow(2.0, -k));
  // edges in [0,1], refined toward 0; map onto [a,b].
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    double lo = edges[p], hi = edges[p + 1];
    double pa = toward_a ? a + lo * len : b - hi * len;
    double pb = toward_a ? a + hi * len : b - lo * len;
    double mid = 0.5 * (pa + pb), h = 0.5 * (pb - pa);
    for (int i = 0; i < 16; ++i) total += h * g.w[i] * f(mid + h * g.x[i]);
  }
  return total;
}

double mixed_abs_value(const StableModel& model, double l1, double l2, int levels) {
  const double a = model.alpha;
  const double lam = l1 + l2;
  const double rho1 = 1.0 / gauge(model, Vec{1.0, 0.0});
  const double rho2 = 1.0 / gauge(model, Vec{0.0, 1.0});

  auto gl = [&](double th) { return std::pow(gauge(model, Vec{std::cos(th), std::sin(th)}), lam); };
  auto rrect = [&](double c, double s) { return std::min(rho1 / std::fabs(c), rho2 / std::fabs(s)); };

  // Paired angular integrand of the residual piece D (quadrant 1 angle + its
  // reflection), times 2 for the lower half plane.
  auto integrand = [&](double th) {
    double c = std::cos(th), s = std::sin(th);
    double w = std::pow(std::fabs(c), -l1 - 1.0) * std::pow(std::fabs(s), -l2 - 1.0);
    double rr = std::pow(rrect(c, s), -lam);
    double t1 = rr - gl(th);
    double t2 = rr - gl(kPi - th);
    return 2.0 * w * (t1 + t2) / lam;
  };
  double thstar = std::atan2(rho2, rho1);
  double d_piece = graded_gl(0.0, thstar, true, levels, integrand) +
                   graded_gl(thstar, kPi / 2, false, levels, integrand);
  double product_piece = 4.0 * std::pow(rho1, -l1) * std::pow(rho2, -l2) / (l1 * l2);
  double coef = std::pow(2.0, lam - 2.0) / kPi * gamma_fn(1.0 - lam / a) *
                (l1 * gamma_fn((l1 + 1) / 2) / gamma_fn(1 - l1 / 2)) *
                (l2 * gamma_fn((l2 + 1) / 2) / gamma_fn(1 - l2 / 2));
  return coef * (product_piece + d_piece);
}

}  // namespace

Estimate mixed_abs_moment_2d(const StableModel& model, double l1, double l2, int level) {
  require_symmetric(model, "mixed_abs_moment_2d");
  require_full_dim(model, "mixed_abs_moment_2d");
  if (model.dim != 2) throw InvalidArgument("mixed_abs_moment_2d: d = 2 only");
  if (!(l1 > 0 && l2 > 0)) throw InvalidArgument("mixed_abs_moment_2d: exponents must be positive");
  if (!(l1 + l2 < model.alpha - 1e-9))
    throw InvalidArgument("mixed_abs_moment_2d: requires l1 + l2 < alpha");
  double full = mixed_abs_value(model, l1, l2, level);
  double coarse = mixed_abs_value(model, l1, l2, std::max(6, level / 2));
  return {full, std::fabs(full - coarse)};
}

namespace {

double signed_mixed_value(const StableModel& model, double l1, double l2, int levels) {
  const double a = model.alpha;
  const double lam = l1 + l2;
  auto G = [&](double th) { return std::pow(gauge(model, Vec{std::cos(th), std::sin(th)}), lam); };
  auto s_pow = [&](double t, double l) { return signed_pow(t, -l - 1.0); };

  // J(theta) = s1(cos) s2(sin) [G(theta) - G(pi - theta)] on (0, pi/2);
  // endpoint behaviour c0 theta^{-l2} at 0 and c1 (pi/2-theta)^{-l1} at pi/2.
  auto J = [&](double th) {
    return s_pow(std::cos(th), l1) * s_pow(std::sin(th), l2) * (G(th) - G(kPi - th));
  };
  const double h = 1e-5;
  double c0 = (G(h) - G(-h)) / h;                      // 2 G'(0)
  double c1 = -(G(kPi / 2 + h) - G(kPi / 2 - h)) / h;  // -2 G'(pi/2)
  const double m = kPi / 4;
  auto reg_lo = [&](double th) { return J(th) - c0 * std::pow(th, -l2); };
  auto reg_hi = [&](double th) { return J(th) - c1 * std::pow(kPi / 2 - th, -l1); };
  double A = graded_gl(0.0, m, true, levels, reg_lo) + c0 * std::pow(m, 1.0 - l2) / (1.0 - l2) +
             graded_gl(m, kPi / 2, false, levels, reg_hi) +
             c1 * std::pow(kPi / 2 - m, 1.0 - l1) / (1.0 - l1);
  A *= 2.0;
  double P = -A / lam;  // principal value of int_F u1^<-l1-1> u2^<-l2-1> du
  double coef = -std::pow(2.0, lam) / kPi * gamma_fn(1.0 - lam / a) *
                (gamma_fn(1 + l1 / 2) / gamma_fn(0.5 - l1 / 2)) *
                (gamma_fn(1 + l2 / 2) / gamma_fn(0.5 - l2 / 2));
  return coef * P;
}

}  // namespace

Estimate signed_mixed_moment_2d(const StableModel& model, double l1, double l2, int n) {
  require_symmetric(model, "signed_mixed_moment_2d");
  require_full_dim(model, "signed_mixed_moment_2d");
  if (model.dim != 2) throw InvalidArgument("signed_mixed_moment_2d: d = 2 only");
  if (!(l1 >= 0 && l2 >= 0)) throw InvalidArgument("signed_mixed_moment_2d: exponents must be >= 0");
  if (std::fabs(l1 - 1.0) < 1e-9 || std::fabs(l2 - 1.0) < 1e-9)
    throw InvalidArgument("signed_mixed_moment_2d: exponent 1 not supported");
  if (!(l1 + l2 < model.alpha - 1e-9))
    throw InvalidArgument("signed_mixed_moment_2d: requires l1 + l2 < alpha");
  if (l1 + l2 < 1e-8) {
    double v = sign_moment_2d(model, n);
    return {v, 1e-12};
  }
  int levels = std::max(12, n / 128);
  double full = signed_mixed_value(model, l1, l2, levels);
  double coarse = signed_mixed_value(model, l1, l2, std::max(8, levels / 2));
  return {full, std::fabs(full - coarse)};
}

double sign_moment_2d(const StableModel& model, int n) {
  if (model.dim != 2) throw InvalidArgument("sign_moment_2d: d = 2 only");
  double v = -iF_functional(model, n) / (kPi * kPi);
  if (std::fabs(v) > 1.0 + 1e-9) throw NumericalError("sign_moment_2d: value outside [-1,1]");
  return std::clamp(v, -1.0, 1.0);
}

StableModel linear_transform_model(const StableModel& model, const Matrix& B) {
  require_symmetric(model, "linear_transform_model");
  if (B.rows != model.dim || B.cols != model.dim)
    throw InvalidArgument("linear_transform_model: matrix dimension mismatch");
  if (const auto* atoms = std::get_if<DiscreteAtoms>(&model.spectral)) {
    std::vector<Vec> dirs;
    std::vector<double> w;
    for (std::size_t j = 0; j < atoms->directions.size(); ++j) {
      Vec bs = matvec(B, atoms->directions[j]);
      double nn = norm2(bs);
      if (nn < 1e-300) continue;
      dirs.push_back(scaled(bs, 1.0 / nn));
      w.push_back(atoms->weights[j] * std::pow(nn, model.alpha));
    }
    if (dirs.empty()) throw NumericalError("linear_transform_model: all atoms collapse");
    return make_discrete(model.alpha, model.kind, std::move(dirs), std::move(w));
  }
  if (const auto* dens = std::get_if<SphericalDensity>(&model.spectral)) {
    DiscreteAtoms atoms;
    for (std::size_t j = 0; j < dens->values.size(); ++j) {
      atoms.directions.push_back(dens->rule->nodes[j]);
      atoms.weights.push_back(dens->values[j] * dens->rule->weights[j]);
    }
    StableModel tmp = model;
    tmp.spectral = std::move(atoms);
    return linear_transform_model(tmp, B);
  }
  if (const auto* iso = std::get_if<IsotropicMass>(&model.spectral)) {
    double c = isotropic_scale_for_mass(model.alpha, model.dim, iso->mass);
    Matrix m = matmul(B, transpose(B));
    for (auto& x : m.a) x *= c * c;
    StableModel out = model;
    out.spectral = EllipsoidGauge{std::move(m)};
    return out;
  }
  if (const auto* ell = std::get_if<EllipsoidGauge>(&model.spectral)) {
    Matrix m = matmul(B, matmul(ell->m, transpose(B)));
    StableModel out = model;
    out.spectral = EllipsoidGauge{std::move(m)};
    return out;
  }
  const auto& del = std::get<GaugeDelegate>(model.spectral);
  StableModel src = linear_transform_model(*del.source, B);
  StableModel out = model;
  out.spectral = GaugeDelegate{std::make_shared<StableModel>(std::move(src))};
  return out;
}

double orthant_probability_2d(const StableModel& model, const Matrix& A, int n) {
  require_symmetric(model, "orthant_probability_2d");
  if (model.dim != 2) throw InvalidArgument("orthant_probability_2d: d = 2 only");
  if (std::fabs(det(A)) < 1e-300) throw InvalidArgument("orthant_probability_2d: singular A");
  StableModel tilted = linear_transform_model(model, inverse(A));
  double p = 0.25 - iF_functional(tilted, n) / (4.0 * kPi * kPi);
  if (p < -1e-9 || p > 1.0 + 1e-9)
    throw NumericalError("orthant_probability_2d: probability outside [0,1]");
  return std::clamp(p, 0.0, 1.0);
}

Estimate marginal_line_integral(const StableModel& model, const Vec& u, int level) {
  require_symmetric(model, "marginal_line_integral");
  require_full_dim(model, "marginal_line_integral");
  const int d = model.dim;
  Estimate sec = section_volume(model, u, level);
  double c = gamma_fn(1.0 + (d - 1.0) / model.alpha) / std::pow(2 * kPi, d - 1);
  return {c * sec.value, c * sec.error};
}

Estimate subspace_density_integral(const StableModel& model, const Matrix& basis, int level) {
  require_symmetric(model, "subspace_density_integral");
  require_full_dim(model, "subspace_density_integral");
  const int d = model.dim, k = basis.cols;
  if (k < 1 || k > d) throw InvalidArgument("subspace_density_integral: 1 <= k <= d required");
  Estimate volk;
  if (k == d) {
    SphereRule rule = default_sphere_rule(d);
    volk = volume(model, rule);
  } else {
    volk = section_volume_subspace(model, basis, level);
  }
  double c = gamma_fn(1.0 + k / model.alpha) / std::pow(2 * kPi, k);
  return {c * volk.value, c * volk.error};
}

Estimate renyi_overlap(const StableModel& model, double c, const SphereRule& rule) {
  if (c == 0.0) throw InvalidArgument("renyi_overlap: c must be nonzero");
  Estimate f0 = density_at_zero(model, rule);
  double f = std::pow(1.0 + std::pow(std::fabs(c), model.alpha), -model.dim / model.alpha);
  return {f * f0.value, f * f0.error};
}

Estimate box_probability(const StableModel& model, const Vec& a, const SphereRule& rule,
                         int radial_level) {
  require_symmetric(model, "box_probability");
  require_full_dim(model, "box_probability");
  const int d = model.dim;
  if (d > 3) throw InvalidArgument("box_probability: d <= 3 only");
  for (double ai : a)
    if (!(ai > 0)) throw InvalidArgument("box_probability: box half-widths must be positive");
  const double alpha = model.alpha;
  const auto& g = gl16();
  auto per_node = [&](const Vec& v) {
    double gv = gauge(model, v);
    // substitute s = r g: freq of the sinc product in s.
    double freq = 0;
    for (int i = 0; i < d; ++i) freq += a[i] * std::fabs(v[i]);
    freq /= gv;
    double R = std::pow(38.0, 1.0 / alpha);
    auto edges = radial_edges(R, freq, radial_level + 6);
    double sum = 0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      double mid = 0.5 * (edges[p] + edges[p + 1]), h = 0.5 * (edges[p + 1] - edges[p]);
      for (int i = 0; i < 16; ++i) {
        double s = mid + h * g.x[i];
        double r = s / gv;
        double f = std::exp(-std::pow(s, alpha)) * std::pow(s, d - 1);
        for (int t = 0; t < d; ++t) {
          double arg = a[t] * r * v[t];
          double sinc = std::fabs(arg) < 1e-8 ? 1.0 - arg * arg / 6.0 : std::sin(arg) / arg;
          f *= 2.0 * a[t] * sinc;
        }
        sum += h * g.w[i] * f;
      }
    }
    return sum * std::pow(gv, -d);
  };
  Estimate e = integrate_sphere(rule, per_node);
  double c = std::pow(2 * kPi, -d);
  double p = c * e.value;
  if (p < -1e-6 || p > 1.0 + 1e-6) throw NumericalError("box_probability: value outside [0,1]");
  return {std::clamp(p, 0.0, 1.0), c * e.error};
}

Estimate laplace_abs(const StableModel& model, const Vec& lambda, int grid) {
  require_symmetric(model, "laplace_abs");
  require_full_dim(model, "laplace_abs");
  const int d = model.dim;
  if (d > 3) throw InvalidArgument("laplace_abs: d <= 3 only");
  for (double l : lambda)
    if (!(l > 0)) throw InvalidArgument("laplace_abs: rates must be positive");
  // E exp(-sum l_i |xi_i|) = int charfun(x) prod cauchy_{l_i}(x_i) dx, and the
  // substitution x_i = l_i tan(pi t_i) makes the weight exactly dt on
  // (-1/2,1/2)^d.
  int panels = std::max(6, grid / 16);
  const auto& g = gl16();
  std::vector<double> nodes, weights;
  for (int p = 0; p < panels; ++p) {
    double a = -0.5 + static_cast<double>(p) / panels, b = a + 1.0 / panels;
    double mid = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < 16; ++i) {
      nodes.push_back(mid + h * g.x[i]);
      weights.push_back(h * g.w[i]);
    }
  }
  const std::size_t m = nodes.size();
  Vec x(d);
  double total = 0, total_c = 0;
  std::vector<std::size_t> idx(d, 0);
  // Tensor loop (d <= 3).
  std::size_t count = 1;
  for (int t = 0; t < d; ++t) count *= m;
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rest = flat;
    double w = 1;
    for (int t = 0; t < d; ++t) {
      idx[t] = rest % m;
      rest /= m;
      w *= weights[idx[t]];
      x[t] = lambda[t] * std::tan(kPi * nodes[idx[t]]);
    }
    double val = std::exp(-std::pow(gauge(model, x), model.alpha));
    total += w * val;
    if ((flat & 1) == 0) total_c += 2 * w * val;  // crude embedded probe
  }
  double err = std::fabs(total - total_c);
  if (total < -1e-9 || total > 1.0 + 1e-6)
    throw NumericalError("laplace_abs: value outside (0,1]");
  return {std::clamp(total, 0.0, 1.0), err};
}

Estimate ball_probability(const StableModel& model, double r, const SphereRule& rule,
                          int radial_level) {
  require_symmetric(model, "ball_probability");
  require_full_dim(model, "ball_probability");
  const int d = model.dim;
  if (d > 3) throw InvalidArgument("ball_probability: d <= 3 only");
  if (!(r > 0)) throw InvalidArgument("ball_probability: radius must be positive");
  const double alpha = model.alpha;
  const double nu = d / 2.0;
  const auto& g = gl16();

  // Phi(q) = E[zeta^{d/2} J_{d/2}(q zeta)] tabulated once on [0, qmax].
  double rho_max = 0;
  for (const Vec& u : rule.nodes) rho_max = std::max(rho_max, 1.0 / gauge(model, u));
  double qmax = r * rho_max * 1.0000001;
  const int nq = 8192;
  std::vector<double> phi(nq + 1);
  double R = std::pow(38.0, 1.0 / alpha);
  for (int k = 0; k <= nq; ++k) {
    double q = qmax * k / nq;
    auto edges = radial_edges(R, q);
    double sum = 0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      double mid = 0.5 * (edges[p] + edges[p + 1]), h = 0.5 * (edges[p + 1] - edges[p]);
      for (int i = 0; i < 16; ++i) {
        double t = mid + h * g.x[i];
        // zeta density: alpha t^{alpha-1} e^{-t^alpha}
        sum += h * g.w[i] * std::pow(t, nu) * std::cyl_bessel_j(nu, q * t) * alpha *
               std::pow(t, alpha - 1.0) * std::exp(-std::pow(t, alpha));
      }
    }
    phi[k] = sum;
  }
  auto phi_at = [&](double q) {
    double s = q / qmax * nq;
    int k = std::min(nq - 1, static_cast<int>(s));
    double f = s - k;
    return phi[k] * (1 - f) + phi[k + 1] * f;
  };

  int spanels = std::max(4, radial_level / 3);
  auto per_node = [&](const Vec& w) {
    double rho = 1.0 / gauge(model, w);
    // int_0^rho s^{d-1-d/2} Phi(r s) ds, graded toward 0 for the half-power.
    double sum = 0;
    for (int p = 0; p < spanels; ++p) {
      double a = rho * std::pow(2.0, -(spanels - p)), b = rho * std::pow(2.0, -(spanels - p - 1));
      if (p == 0) a = 0;
      double mid = 0.5 * (a + b), h = 0.5 * (b - a);
      for (int i = 0; i < 16; ++i) {
        double s = mid + h * g.x[i];
        sum += h * g.w[i] * std::pow(s, d - 1 - nu) * phi_at(r * s);
      }
    }
    return sum;
  };
  Estimate e = integrate_sphere(rule, per_node);
  double c = std::pow(r / (2 * kPi), nu);
  double p = c * e.value;
  if (p < -1e-6 || p > 1.0 + 1e-6) throw NumericalError("ball_probability: value outside [0,1]");
  return {std::clamp(p, 0.0, 1.0), c * e.error + 1e-7};
}

Estimate intersection_body_moment(const StableModel& model, const SphereRule& rule) {
  require_symmetric(model, "intersection_body_moment");
  require_full_dim(model, "intersection_body_moment");
  const int d = model.dim;
  if (d < 2) throw InvalidArgument("intersection_body_moment: d >= 2 only");
  Estimate vol = volume(model, rule);
  double c = d * gamma_fn(1.0 + 1.0 / model.alpha) / (kPi * (d - 1.0));
  return {c * vol.value, c * vol.error};
}

double intersection_body_functional(const StableModel& model, const Vec& x, int level) {
  double n = norm2(x);
  if (n == 0) return 0.0;
  return section_volume(model, scaled(x, 1.0 / n), level).value / n;
}

Estimate moment_limit_ratio(const StableModel& model, const SphereRule& rule) {
  require_symmetric(model, "moment_limit_ratio");
  require_full_dim(model, "moment_limit_ratio");
  if (!(model.alpha < 2.0)) throw InvalidArgument("moment_limit_ratio: requires alpha < 2");
  const int d = model.dim;
  const double a = model.alpha;
  Estimate integral = integrate_gauge_power(model, rule, a);
  double c = std::pow(2.0, a - 1.0) / std::pow(kPi, d / 2.0) * gamma_fn((d + a) / 2.0) /
             gamma_fn(1.0 - a / 2.0);
  return {c * integral.value, c * integral.error};
}

}  // namespace stabgeo
