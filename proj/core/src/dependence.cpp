#include "stabgeo/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stabgeo/rng.hpp"

namespace stabgeo {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double covariation(const StableModel& model, const Vec& u1, const Vec& u2) {
  if (!(model.alpha > 1.0)) throw InvalidArgument("covariation: requires alpha > 1");
  Vec t = support_point(model, u2);
  return std::pow(gauge(model, u2), model.alpha - 1.0) * dot(t, u1);
}

double regression_coefficient(const StableModel& model) {
  if (model.dim != 2) throw InvalidArgument("regression_coefficient: d = 2 only");
  if (!(model.alpha > 1.0)) throw InvalidArgument("regression_coefficient: requires alpha > 1");
  Vec t = support_point(model, Vec{0.0, 1.0});
  if (t[1] == 0) throw NumericalError("regression_coefficient: degenerate support point");
  return t[0] / t[1];
}

LinearityResult regression_linearity_check(const StableModel& model, int axis, int level,
                                           double tol) {
  if (!(model.alpha > 1.0))
    throw InvalidArgument("regression_linearity_check: requires alpha > 1");
  const int d = model.dim;
  if (d < 3) throw InvalidArgument("regression_linearity_check: d >= 3 (d = 2 is always linear)");
  if (axis < 0 || axis >= d) throw InvalidArgument("regression_linearity_check: bad axis");

  Vec e(d, 0.0);
  e[axis] = 1.0;
  Matrix basis = complement_basis(e);  // d x (d-1)
  SphereRule sub = sphere_rule(d - 1, d - 1 == 2 ? std::max(level, 32) : level,
                               std::optional<std::uint64_t>(77u));
  std::vector<Vec> grads;
  grads.reserve(sub.nodes.size());
  for (const Vec& v : sub.nodes) {
    Vec u(d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d - 1; ++j) u[i] += basis(i, j) * v[j];
    grads.push_back(support_point(model, u));
  }

  // Least squares for a with a[axis] = 1: minimise sum (g_axis + sum_{i != axis} a_i g_i)^2.
  std::vector<int> free;
  for (int i = 0; i < d; ++i)
    if (i != axis) free.push_back(i);
  int m = static_cast<int>(free.size());
  Matrix normal(m, m);
  Vec rhs(m, 0.0);
  for (const Vec& g : grads) {
    for (int i = 0; i < m; ++i) {
      rhs[i] -= g[free[i]] * g[axis];
      for (int j = 0; j < m; ++j) normal(i, j) += g[free[i]] * g[free[j]];
    }
  }
  Vec coef = solve(normal, rhs);
  LinearityResult res;
  res.a.assign(d, 0.0);
  res.a[axis] = 1.0;
  for (int i = 0; i < m; ++i) res.a[free[i]] = coef[i];
  for (const Vec& g : grads) {
    res.residual = std::max(res.residual, std::fabs(dot(g, res.a)));
    res.scale = std::max(res.scale, norm2(g));
  }
  res.is_linear = res.residual < tol * res.scale;
  return res;
}

JamesResult james_orthogonal_bivariate(const StableModel& model, double tol) {
  if (model.dim != 2) throw InvalidArgument("james_orthogonal_bivariate: d = 2 only");
  if (!(model.alpha >= 1.0))
    throw InvalidArgument("james_orthogonal_bivariate: requires alpha >= 1 (convex gauge)");
  double a = 1.0 / gauge(model, Vec{0.0, 1.0});
  SphereRule rule = circle_rule(1024);
  double worst = 0;
  for (const Vec& u : rule.nodes)
    worst = std::max(worst, std::fabs(u[1]) / gauge(model, u));
  JamesResult r;
  r.margin = a * (1.0 + tol) - worst;
  r.orthogonal = worst <= a * (1.0 + tol);
  r.covariation = model.alpha > 1.0 ? covariation(model, Vec{1.0, 0.0}, Vec{0.0, 1.0})
                                    : std::numeric_limits<double>::quiet_NaN();
  return r;
}

StrongJamesResult strong_james_check(const StableModel& model, int d1, int d2, int level,
                                     double tol) {
  if (!(model.alpha >= 1.0)) throw InvalidArgument("strong_james_check: requires alpha >= 1");
  if (d1 + d2 != model.dim) throw InvalidArgument("strong_james_check: block sizes must sum to d");
  const int d = model.dim;
  auto embed = [&](const Vec& v, int offset, int len) {
    Vec u(d, 0.0);
    for (int i = 0; i < len; ++i) u[offset + i] = v[i];
    return u;
  };
  auto block_nodes = [&](int len) {
    std::vector<Vec> nodes;
    if (len == 1) {
      nodes.push_back({1.0});
      nodes.push_back({-1.0});
    } else {
      SphereRule r = sphere_rule(len, len == 2 ? std::max(16, level) : level,
                                 std::optional<std::uint64_t>(5u));
      nodes = r.nodes;
    }
    return nodes;
  };
  StrongJamesResult res;
  res.strong = true;
  res.min_margin = std::numeric_limits<double>::infinity();
  const double scales[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  for (const Vec& un : block_nodes(d1)) {
    Vec u = embed(un, 0, d1);
    for (const Vec& vn : block_nodes(d2)) {
      Vec v = embed(vn, d1, d2);
      double gv = gauge(model, v);
      for (double c : scales) {
        double g = gauge(model, add(scaled(u, c), v));
        double margin = g - gv;
        res.min_margin = std::min(res.min_margin, margin);
        if (margin < -tol * gv) res.strong = false;
      }
    }
  }
  // Weak variant: u = c (1,..,1,0,..,0), v = (0,..,0,1,..,1).
  res.weak = true;
  Vec ones1(d, 0.0), ones2(d, 0.0);
  for (int i = 0; i < d1; ++i) ones1[i] = 1.0;
  for (int i = d1; i < d; ++i) ones2[i] = 1.0;
  double gv = gauge(model, ones2);
  for (int k = -40; k <= 40; ++k) {
    double c = k * 0.25;
    double g = gauge(model, add(scaled(ones1, c), ones2));
    if (g < gv * (1.0 - tol)) res.weak = false;
  }
  return res;
}

bool independence_check(const StableModel& model, int d1, int level, double tol) {
  if (model.kind != Kind::Symmetric) throw InvalidArgument("independence_check: symmetric models only");
  const int d = model.dim;
  if (d1 < 1 || d1 >= d) throw InvalidArgument("independence_check: bad split");
  int d2 = d - d1;
  const double a = model.alpha;
  auto embed = [&](const Vec& v, int offset, int len) {
    Vec u(d, 0.0);
    for (int i = 0; i < len; ++i) u[offset + i] = v[i];
    return u;
  };
  auto block_nodes = [&](int len) {
    std::vector<Vec> nodes;
    if (len == 1) {
      nodes.push_back({1.0});
    } else {
      SphereRule r = sphere_rule(len, len == 2 ? std::max(16, level) : level,
                                 std::optional<std::uint64_t>(6u));
      nodes = r.nodes;
    }
    return nodes;
  };
  const double scales[] = {0.3, 1.0, 3.0};
  for (const Vec& un : block_nodes(d1)) {
    Vec u = embed(un, 0, d1);
    double gu = std::pow(gauge(model, u), a);
    for (const Vec& vn : block_nodes(d2)) {
      Vec v0 = embed(vn, d1, d2);
      for (double s : scales) {
        Vec v = scaled(v0, s);
        double gv = std::pow(gauge(model, v), a);
        double gj = std::pow(gauge(model, add(u, v)), a);
        if (std::fabs(gj - gu - gv) > tol * (gu + gv)) return false;
      }
    }
  }
  return true;
}

namespace {

// Nelder-Mead on R^m, deterministic.
template <class F>
Vec nelder_mead(F&& f, Vec start, double step, int iters) {
  int m = static_cast<int>(start.size());
  std::vector<Vec> simplex(m + 1, start);
  for (int i = 0; i < m; ++i) simplex[i + 1][i] += step;
  std::vector<double> val(m + 1);
  for (int i = 0; i <= m; ++i) val[i] = f(simplex[i]);
  for (int it = 0; it < iters; ++it) {
    // order
    std::vector<int> idx(m + 1);
    for (int i = 0; i <= m; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return val[a] < val[b]; });
    std::vector<Vec> s2(m + 1);
    std::vector<double> v2(m + 1);
    for (int i = 0; i <= m; ++i) {
      s2[i] = simplex[idx[i]];
      v2[i] = val[idx[i]];
    }
    simplex = s2;
    val = v2;
    if (std::fabs(val[m] - val[0]) < 1e-14 * (1 + std::fabs(val[0]))) break;
    Vec centroid(m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) centroid[j] += simplex[i][j] / m;
    auto blend = [&](double t) {
      Vec p(m);
      for (int j = 0; j < m; ++j) p[j] = centroid[j] + t * (simplex[m][j] - centroid[j]);
      return p;
    };
    Vec xr = blend(-1.0);
    double fr = f(xr);
    if (fr < val[0]) {
      Vec xe = blend(-2.0);
      double fe = f(xe);
      if (fe < fr) {
        simplex[m] = xe;
        val[m] = fe;
      } else {
        simplex[m] = xr;
        val[m] = fr;
      }
    } else if (fr < val[m - 1]) {
      simplex[m] = xr;
      val[m] = fr;
    } else {
      Vec xc = blend(0.5);
      double fc = f(xc);
      if (fc < val[m]) {
        simplex[m] = xc;
        val[m] = fc;
      } else {
        for (int i = 1; i <= m; ++i) {
          for (int j = 0; j < m; ++j) simplex[i][j] = 0.5 * (simplex[i][j] + simplex[0][j]);
          val[i] = f(simplex[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= m; ++i)
    if (val[i] < val[best]) best = i;
  return simplex[best];
}

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  int i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

}  // namespace

PortfolioResult portfolio_direction(const StableModel& model, const Vec& mu, double r,
                                    double lambda, Sense sense) {
  const int d = model.dim;
  if (d > 4) throw InvalidArgument("portfolio_direction: d <= 4 only");
  if (static_cast<int>(mu.size()) != d) throw InvalidArgument("portfolio_direction: mu dimension");
  if (!(lambda > 0 && lambda < model.alpha))
    throw InvalidArgument("portfolio_direction: lambda outside (0, alpha)");

  // Constraints A u = b with rows mu and ones.
  Vec ones(d, 1.0);
  Matrix A(2, d);
  for (int j = 0; j < d; ++j) {
    A(0, j) = mu[j];
    A(1, j) = ones[j];
  }
  Vec b{r, 1.0};
  // Rank detection on A A'.
  Matrix aat = matmul(A, transpose(A));
  int rank = rank_psd(aat, 1e-12);
  Vec u0(d, 0.0);
  std::vector<Vec> rows;
  if (rank == 2) {
    Vec y = solve(aat, b);
    for (int j = 0; j < d; ++j) u0[j] = A(0, j) * y[0] + A(1, j) * y[1];
    rows = {mu, ones};
  } else {
    // mu proportional to ones: consistency requires r = c where mu = c*ones.
    double c = mu[0];
    for (double x : mu)
      if (std::fabs(x - c) > 1e-12 * (1 + std::fabs(c)))
        throw InvalidArgument("portfolio_direction: rank-deficient constraints are inconsistent");
    if (std::fabs(r - c) > 1e-10 * (1 + std::fabs(c)))
      throw InvalidArgument("portfolio_direction: infeasible constraints");
    for (int j = 0; j < d; ++j) u0[j] = 1.0 / d;
    rows = {ones};
  }
  // Orthonormal basis of the tangent space: orthonormalise the constraint
  // rows first, then complete with the coordinate axes.
  std::vector<Vec> onrows;
  for (const Vec& w : rows) {
    Vec v = w;
    for (const Vec& o : onrows) {
      double p = dot(v, o);
      for (int i = 0; i < d; ++i) v[i] -= p * o[i];
    }
    double n = norm2(v);
    if (n > 1e-12) onrows.push_back(scaled(v, 1.0 / n));
  }
  std::vector<Vec> basis;
  for (int axis = 0; axis < d; ++axis) {
    Vec v(d, 0.0);
    v[axis] = 1.0;
    for (const Vec& w : onrows) {
      double p = dot(v, w);
      for (int i = 0; i < d; ++i) v[i] -= p * w[i];
    }
    for (const Vec& w : basis) {
      double p = dot(v, w);
      for (int i = 0; i < d; ++i) v[i] -= p * w[i];
    }
    double n = norm2(v);
    if (n > 1e-10) basis.push_back(scaled(v, 1.0 / n));
  }
  int m = static_cast<int>(basis.size());
  auto point = [&](const Vec& z) {
    Vec u = u0;
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < d; ++i) u[i] += z[k] * basis[k][i];
    return u;
  };
  auto objective = [&](const Vec& z) { return gauge(model, point(z)); };

  PortfolioResult res;
  if (m == 0) {
    res.u = u0;
    res.gauge_value = gauge(model, u0);
    res.stationarity = 0;
    res.best_start = 0;
    return res;
  }
  if (sense == Sense::Max)
    throw InvalidArgument(
        "portfolio_direction: max sense is unbounded on an affine set (1-homogeneous gauge)");

  double span = 2.0 * (norm2(u0) + 1.0);
  double bestval = std::numeric_limits<double>::infinity();
  Vec bestz(m, 0.0);
  for (int s = 0; s < 16; ++s) {
    Vec z(m);
    for (int k = 0; k < m; ++k) z[k] = span * (2.0 * halton(s + 1, k == 0 ? 2 : (k == 1 ? 3 : 5)) - 1.0);
    if (s == 0) std::fill(z.begin(), z.end(), 0.0);
    Vec zo = nelder_mead(objective, z, 0.3 * span, 400);
    double v = objective(zo);
    if (v < bestval - 1e-15) {
      bestval = v;
      bestz = zo;
      res.best_start = s;
    }
  }
  // Polish with coordinate golden search.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int round = 0; round < 60; ++round) {
    for (int k = 0; k < m; ++k) {
      double lo = bestz[k] - 0.5 / (round + 1), hi = bestz[k] + 0.5 / (round + 1);
      double a1 = hi - gr * (hi - lo), b1 = lo + gr * (hi - lo);
      Vec za = bestz, zb = bestz;
      za[k] = a1;
      zb[k] = b1;
      double fa = objective(za), fb = objective(zb);
      for (int i = 0; i < 40; ++i) {
        if (fa < fb) {
          hi = b1;
          b1 = a1;
          fb = fa;
          a1 = hi - gr * (hi - lo);
          za[k] = a1;
          fa = objective(za);
        } else {
          lo = a1;
          a1 = b1;
          fa = fb;
          b1 = lo + gr * (hi - lo);
          zb[k] = b1;
          fb = objective(zb);
        }
      }
      double mid = 0.5 * (lo + hi);
      Vec zm = bestz;
      zm[k] = mid;
      if (objective(zm) <= bestval) {
        bestz = zm;
        bestval = objective(zm);
      }
    }
  }
  res.u = point(bestz);
  res.gauge_value = bestval;
  // First-order stationarity: two-sided probe derivatives along the tangent basis.
  double h = 1e-6 * (1.0 + norm2(res.u));
  double worst = 0;
  for (int k = 0; k < m; ++k) {
    for (double sgn : {1.0, -1.0}) {
      Vec z = bestz;
      z[k] += sgn * h;
      double der = (objective(z) - bestval) / h;
      worst = std::min(worst, der);
    }
  }
  res.stationarity = worst;
  return res;
}

}  // namespace stabgeo
