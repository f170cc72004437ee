#include "stabgeo/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "stabgeo/geometry.hpp"
#include "stabgeo/rng.hpp"
#include "stabgeo/specialfn.hpp"

namespace stabgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// One standard SaS draw from two uniforms (CMS, symmetric case), evaluated in
// log space so extreme tail draws stay finite.
double cms_draw(double alpha, double u1, double u2) {
  double theta = kPi * (u1 - 0.5);
  double w = -std::log(u2);
  if (alpha == 1.0) return std::tan(theta);
  double s = std::sin(alpha * theta);
  double lx = std::log(std::fabs(s)) - std::log(std::cos(theta)) / alpha +
              (1.0 - alpha) / alpha * (std::log(std::cos((1.0 - alpha) * theta)) - std::log(w));
  return std::copysign(std::exp(lx), s);
}

// One positive alpha-stable draw, alpha in (0,1) (Kanter / Zolotarev), also in
// log space: the inner 1/(1-alpha) power overflows near alpha = 1 otherwise.
double kanter_draw(double alpha, double u1, double u2) {
  double theta = kPi * u1;
  double w = -std::log(u2);
  double ls = alpha * std::log(std::sin(alpha * theta)) +
              (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * theta)) -
              std::log(std::sin(theta));
  return std::exp(ls / alpha - (1.0 - alpha) / alpha * std::log(w));
}

// Parallel loop over sample indices writing disjoint slices; the work is a
// pure function of the index, so results are worker-count independent.
template <class Body>
void for_samples(std::size_t n, Body&& body) {
  int nt = max_threads();
  if (nt <= 1 || n < 4096) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<double> sample_sas_scalar(double alpha, std::size_t n, std::uint64_t seed) {
  if (!(alpha > 0) || alpha > 2) throw InvalidArgument("sample_sas_scalar: alpha outside (0,2]");
  CounterRng rng(seed);
  std::vector<double> out(n);
  for_samples(n, [&](std::size_t i) {
    out[i] = cms_draw(alpha, rng.u01(2 * i), rng.u01(2 * i + 1));
  });
  return out;
}

std::vector<double> sample_positive_stable(double alpha, std::size_t n, std::uint64_t seed) {
  if (!(alpha > 0) || alpha >= 1) throw InvalidArgument("sample_positive_stable: alpha outside (0,1)");
  CounterRng rng(seed);
  std::vector<double> out(n);
  for_samples(n, [&](std::size_t i) {
    out[i] = kanter_draw(alpha, rng.u01(2 * i), rng.u01(2 * i + 1));
  });
  return out;
}

namespace {

SampleBatch make_batch(const StableModel& model, std::size_t n, std::uint64_t seed) {
  SampleBatch b;
  b.dim = model.dim;
  b.n = n;
  b.seed = seed;
  b.fingerprint = model_fingerprint(model);
  b.data.assign(n * static_cast<std::size_t>(model.dim), 0.0);
  return b;
}

// Discrete symmetric: xi = sum_j w_j^{1/alpha} s_j X_j.
void fill_discrete_symmetric(const StableModel& model, const DiscreteAtoms& atoms,
                             SampleBatch& b) {
  CounterRng rng(b.seed);
  const std::size_t k = atoms.directions.size();
  std::vector<double> scalef(k);
  for (std::size_t j = 0; j < k; ++j) scalef[j] = std::pow(atoms.weights[j], 1.0 / model.alpha);
  const std::size_t slots = 2 * k;
  for_samples(b.n, [&](std::size_t i) {
    double* row = b.data.data() + i * b.dim;
    for (std::size_t j = 0; j < k; ++j) {
      double x = cms_draw(model.alpha, rng.u01(i * slots + 2 * j), rng.u01(i * slots + 2 * j + 1));
      double c = scalef[j] * x;
      for (int t = 0; t < b.dim; ++t) row[t] += c * atoms.directions[j][t];
    }
  });
}

void fill_onesided(const StableModel& model, const DiscreteAtoms& atoms, SampleBatch& b) {
  CounterRng rng(b.seed);
  const std::size_t k = atoms.directions.size();
  std::vector<double> scalef(k);
  for (std::size_t j = 0; j < k; ++j) scalef[j] = std::pow(atoms.weights[j], 1.0 / model.alpha);
  const std::size_t slots = 2 * k;
  for_samples(b.n, [&](std::size_t i) {
    double* row = b.data.data() + i * b.dim;
    for (std::size_t j = 0; j < k; ++j) {
      double s = kanter_draw(model.alpha, rng.u01(i * slots + 2 * j), rng.u01(i * slots + 2 * j + 1));
      double c = scalef[j] * s;
      for (int t = 0; t < b.dim; ++t) row[t] += c * atoms.directions[j][t];
    }
  });
}

DiscreteAtoms discretize(const SphericalDensity& dens) {
  DiscreteAtoms atoms;
  for (std::size_t j = 0; j < dens.values.size(); ++j) {
    double w = dens.values[j] * dens.rule->weights[j];
    if (w <= 0) continue;
    atoms.directions.push_back(dens.rule->nodes[j]);
    atoms.weights.push_back(w);
  }
  return atoms;
}

}  // namespace

SampleBatch sample_subgaussian(const Matrix& C, double alpha, std::size_t n, std::uint64_t seed) {
  if (!(alpha > 0) || alpha > 2) throw InvalidArgument("sample_subgaussian: alpha outside (0,2]");
  Matrix L = cholesky(C);
  int d = C.rows;
  StableModel model = make_subgaussian(alpha, C);
  SampleBatch b = make_batch(model, n, seed);
  CounterRng rng(seed);
  const std::size_t slots = 2 * static_cast<std::size_t>(d) + 2;
  const bool gaussian = (alpha == 2.0);
  for_samples(n, [&](std::size_t i) {
    double* row = b.data.data() + i * b.dim;
    double z = 1.0;
    if (!gaussian)
      z = std::sqrt(kanter_draw(alpha / 2.0, rng.u01(i * slots), rng.u01(i * slots + 1)));
    Vec zvec(d);  // N(0,C) = L * standard normals
    for (int c = 0; c < d; ++c) zvec[c] = rng.normal(i * slots + 2 + 2 * c);
    for (int r = 0; r < d; ++r) {
      double g = 0;
      for (int c = 0; c <= r; ++c) g += L(r, c) * zvec[c];
      row[r] = z * g;
    }
  });
  return b;
}

SampleBatch sample_substable(const StableModel& model, double beta, std::size_t n,
                             std::uint64_t seed) {
  if (!(beta > 0 && beta < 1)) throw InvalidArgument("sample_substable: beta outside (0,1)");
  // xi' = zeta^{1/alpha} xi, zeta positive beta-stable, drawn with an offset
  // counter stream (seed ^ tag) so it is independent of the base draws.
  SampleBatch base = sample_vector(model, n, seed);
  CounterRng rng(seed ^ 0x5bd1e995u);
  const double inv_alpha = 1.0 / model.alpha;
  for_samples(n, [&](std::size_t i) {
    double z = std::pow(kanter_draw(beta, rng.u01(2 * i), rng.u01(2 * i + 1)), inv_alpha);
    double* row = base.data.data() + i * base.dim;
    for (int t = 0; t < base.dim; ++t) row[t] *= z;
  });
  StableModel out = substable_transform(model, beta);
  base.fingerprint = model_fingerprint(out);
  return base;
}

SampleBatch sample_onesided(const StableModel& model, std::size_t n, std::uint64_t seed) {
  if (model.kind != Kind::OneSided) throw InvalidArgument("sample_onesided: model kind mismatch");
  if (!(model.alpha > 0 && model.alpha < 1))
    throw InvalidArgument("sample_onesided: alpha outside (0,1)");
  SampleBatch b = make_batch(model, n, seed);
  if (const auto* atoms = std::get_if<DiscreteAtoms>(&model.spectral)) {
    fill_onesided(model, *atoms, b);
  } else if (const auto* dens = std::get_if<SphericalDensity>(&model.spectral)) {
    fill_onesided(model, discretize(*dens), b);
  } else {
    throw InvalidArgument("sample_onesided: discrete or tabulated spectral measure required");
  }
  return b;
}

SampleBatch sample_vector(const StableModel& model, std::size_t n, std::uint64_t seed) {
  if (model.kind == Kind::OneSided) return sample_onesided(model, n, seed);
  if (const auto* atoms = std::get_if<DiscreteAtoms>(&model.spectral)) {
    SampleBatch b = make_batch(model, n, seed);
    fill_discrete_symmetric(model, *atoms, b);
    return b;
  }
  if (const auto* dens = std::get_if<SphericalDensity>(&model.spectral)) {
    SampleBatch b = make_batch(model, n, seed);
    fill_discrete_symmetric(model, discretize(*dens), b);
    return b;
  }
  if (const auto* iso = std::get_if<IsotropicMass>(&model.spectral)) {
    double c = isotropic_scale_for_mass(model.alpha, model.dim, iso->mass);
    Matrix C = Matrix::identity(model.dim);
    for (auto& x : C.a) x *= 2.0 * c * c;  // gauge^2 = <Cu,u>/2 = c^2 |u|^2
    SampleBatch b = sample_subgaussian(C, model.alpha, n, seed);
    b.fingerprint = model_fingerprint(model);
    return b;
  }
  if (const auto* ell = std::get_if<EllipsoidGauge>(&model.spectral)) {
    Matrix C = ell->m;
    for (auto& x : C.a) x *= 2.0;
    SampleBatch b = sample_subgaussian(C, model.alpha, n, seed);
    b.fingerprint = model_fingerprint(model);
    return b;
  }
  const auto& del = std::get<GaugeDelegate>(model.spectral);
  double beta = model.alpha / del.source->alpha;
  SampleBatch b = sample_substable(*del.source, beta, n, seed);
  b.fingerprint = model_fingerprint(model);
  return b;
}

McEstimate mc_tail_completed_moment(const std::vector<double>& x, double lambda, double alpha,
                                    double tail_mass, int blocks, double tail_prob) {
  if (x.size() < static_cast<std::size_t>(blocks))
    throw InvalidArgument("mc_tail_completed_moment: fewer samples than blocks");
  if (!(lambda > 0 && lambda < alpha))
    throw InvalidArgument("mc_tail_completed_moment: lambda outside (0,alpha)");
  const double K = stable_tail_constant(alpha) * tail_mass;
  const double p = alpha / lambda;  // tail index of X^lambda
  // Threshold where the asymptotic tail probability is ~ tail_prob, in the
  // X^lambda scale: P(X^lambda > M) ~ K M^{-p}.
  const double M = std::pow(K / tail_prob, 1.0 / p);
  const double tail = K * std::pow(M, 1.0 - p) / (p - 1.0);
  std::vector<double> bm(blocks);
  std::size_t bs = x.size() / blocks;
  std::vector<double> buf(bs);
  for (int b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < bs; ++i)
      buf[i] = std::min(std::pow(x[b * bs + i], lambda), M);
    bm[b] = pairwise_sum(buf) / bs + tail;
  }
  std::vector<double> sorted = bm;
  std::sort(sorted.begin(), sorted.end());
  double med = 0.5 * (sorted[(blocks - 1) / 2] + sorted[blocks / 2]);
  double m = pairwise_sum(bm) / blocks;
  double var = 0;
  for (double v : bm) var += (v - m) * (v - m);
  var /= (blocks - 1);
  return {med, 1.2533141373155003 * std::sqrt(var / blocks), x.size()};
}

namespace {

McEstimate plain_power_mean(const std::vector<double>& x, double lambda) {
  std::vector<double> vals(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) vals[i] = std::pow(x[i], lambda);
  double mean = pairwise_sum(vals) / vals.size();
  double var = 0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= (vals.size() - 1);
  return {mean, std::sqrt(var / vals.size()), x.size()};
}

}  // namespace

McEstimate mc_norm_moment(const SampleBatch& batch, double lambda, double alpha,
                          double sigma_mass) {
  std::vector<double> norms(batch.n);
  for (std::size_t i = 0; i < batch.n; ++i) {
    double s = 0;
    const double* r = batch.row(i);
    for (int t = 0; t < batch.dim; ++t) s += r[t] * r[t];
    norms[i] = std::sqrt(s);
  }
  if (alpha == 2.0 || lambda < alpha / 2.0) return plain_power_mean(norms, lambda);
  return mc_tail_completed_moment(norms, lambda, alpha, sigma_mass);
}

McEstimate mc_scalar_moment(const SampleBatch& batch, const Vec& u, double lambda, double alpha,
                            double gauge_u) {
  std::vector<double> proj(batch.n);
  for (std::size_t i = 0; i < batch.n; ++i) {
    double s = 0;
    const double* r = batch.row(i);
    for (int t = 0; t < batch.dim; ++t) s += r[t] * u[t];
    proj[i] = std::fabs(s);
  }
  if (alpha == 2.0 || lambda < alpha / 2.0) return plain_power_mean(proj, lambda);
  return mc_tail_completed_moment(proj, lambda, alpha, std::pow(gauge_u, alpha));
}

std::vector<double> estimate_zonoid_support(const SampleBatch& batch,
                                            const std::vector<Vec>& directions) {
  if (batch.n == 0) throw InvalidArgument("estimate_zonoid_support: empty batch");
  std::vector<double> out;
  out.reserve(directions.size());
  std::vector<double> vals(batch.n);
  for (const Vec& u : directions) {
    for (std::size_t i = 0; i < batch.n; ++i) {
      double s = 0;
      const double* r = batch.row(i);
      for (int t = 0; t < batch.dim; ++t) s += r[t] * u[t];
      vals[i] = 0.5 * std::fabs(s);
    }
    out.push_back(pairwise_sum(vals) / batch.n);
  }
  return out;
}

void write_samples_csv(const std::string& path, const SampleBatch& batch, double alpha, Kind kind) {
  std::ofstream f(path);
  if (!f) throw NumericalError("write_samples_csv: cannot open " + path);
  f << "# stabgeo-samples alpha=" << alpha
    << " kind=" << (kind == Kind::Symmetric ? "symmetric" : "one-sided") << " seed=" << batch.seed
    << " fingerprint=" << batch.fingerprint << "\n";
  f.precision(17);
  for (std::size_t i = 0; i < batch.n; ++i) {
    const double* r = batch.row(i);
    for (int t = 0; t < batch.dim; ++t) {
      if (t) f << ',';
      f << r[t];
    }
    f << '\n';
  }
}

CsvSamples read_samples_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("read_samples_csv: cannot open " + path);
  CsvSamples out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream h(line.substr(1));
      std::string tok;
      while (h >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "alpha") {
          out.alpha = std::stod(val);
          out.has_header = true;
        } else if (key == "kind") {
          out.kind = (val == "one-sided") ? Kind::OneSided : Kind::Symmetric;
        } else if (key == "seed") {
          out.seed = std::stoull(val);
        } else if (key == "fingerprint") {
          out.fingerprint = std::stoull(val);
        }
      }
      continue;
    }
    Vec row;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (...) {
        throw InvalidArgument("read_samples_csv: bad numeric cell '" + cell + "'");
      }
    }
    if (!row.empty()) out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace stabgeo
