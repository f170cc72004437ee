#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stabgeo/common.hpp"
#include "stabgeo/linalg.hpp"
#include "stabgeo/spectral.hpp"

namespace stabgeo {

/// Seeded Monte Carlo draws; data is row-major n x dim.
struct SampleBatch {
  int dim = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t fingerprint = 0;
  std::vector<double> data;

  const double* row(std::size_t i) const { return data.data() + i * dim; }
  Vec vec(std::size_t i) const { return Vec(row(i), row(i) + dim); }
};

/// Standard SaS draws with E e^{iuX} = e^{-|u|^alpha} (Chambers-Mallows-Stuck;
/// alpha = 2 gives N(0,2)).
std::vector<double> sample_sas_scalar(double alpha, std::size_t n, std::uint64_t seed);

/// Positive strictly stable draws with E e^{-uS} = e^{-u^alpha}, alpha in (0,1)
/// (Kanter construction).
std::vector<double> sample_positive_stable(double alpha, std::size_t n, std::uint64_t seed);

/// Draws from any symmetric model (discrete sums of scalar SaS draws,
/// sub-Gaussian for elliptical gauges, sub-stable for delegates; continuous
/// spectral measures are discretised on their rule).  One-sided models route
/// to the positive-stable construction.
SampleBatch sample_vector(const StableModel& model, std::size_t n, std::uint64_t seed);

/// Sub-Gaussian draws: sqrt(zeta) * N(0,C) with zeta positive (alpha/2)-stable.
SampleBatch sample_subgaussian(const Matrix& C, double alpha, std::size_t n, std::uint64_t seed);

/// Sub-stable draws zeta^{1/alpha} * xi for beta in (0,1).
SampleBatch sample_substable(const StableModel& model, double beta, std::size_t n,
                             std::uint64_t seed);

SampleBatch sample_onesided(const StableModel& model, std::size_t n, std::uint64_t seed);

struct McEstimate {
  double mean = 0;
  double se = 0;
  std::size_t n = 0;
};

/// Plain mean and standard error (pairwise reduction, deterministic).
template <class F>
McEstimate mc_functional(const SampleBatch& batch, F&& f) {
  if (batch.n == 0) throw InvalidArgument("mc_functional: empty batch");
  std::vector<double> vals(batch.n);
  for (std::size_t i = 0; i < batch.n; ++i) vals[i] = f(batch.row(i));
  double mean = pairwise_sum(vals) / batch.n;
  std::vector<double> sq(batch.n);
  for (std::size_t i = 0; i < batch.n; ++i) sq[i] = (vals[i] - mean) * (vals[i] - mean);
  double var = batch.n > 1 ? pairwise_sum(sq) / (batch.n - 1) : 0.0;
  return {mean, std::sqrt(var / batch.n), batch.n};
}

/// Median of block means over `blocks` consecutive blocks; the standard error
/// is the asymptotic median factor 1.2533 * sd(block means)/sqrt(blocks).
template <class F>
McEstimate mc_functional_mom(const SampleBatch& batch, F&& f, int blocks = 32) {
  if (batch.n < static_cast<std::size_t>(blocks))
    throw InvalidArgument("mc_functional_mom: fewer samples than blocks");
  std::vector<double> bm(blocks);
  std::size_t bs = batch.n / blocks;
  std::vector<double> buf(bs);
  for (int b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < bs; ++i) buf[i] = f(batch.row(b * bs + i));
    bm[b] = pairwise_sum(buf) / bs;
  }
  std::vector<double> sorted = bm;
  std::sort(sorted.begin(), sorted.end());
  double med = 0.5 * (sorted[(blocks - 1) / 2] + sorted[blocks / 2]);
  double m = pairwise_sum(bm) / blocks;
  double var = 0;
  for (double x : bm) var += (x - m) * (x - m);
  var /= (blocks - 1);
  return {med, 1.2533141373155003 * std::sqrt(var / blocks), batch.n};
}

/// Heavy-tail moment estimator for E X^lambda where X >= 0 has a regularly
/// varying tail P(X > x) ~ tail_mass * K_alpha * x^{-alpha}: median-of-means
/// of min(X,M)^lambda plus the analytic completion of the truncated tail.
/// Plain median-of-means is median-biased by many standard errors when
/// lambda/alpha is close to 1; the completion removes the heavy block skew.
McEstimate mc_tail_completed_moment(const std::vector<double>& x, double lambda, double alpha,
                                    double tail_mass, int blocks = 32, double tail_prob = 1e-4);

/// E ||xi||^lambda with the estimator mandated by lambda: plain mean for
/// lambda < alpha/2 (or alpha = 2), tail-completed median-of-means otherwise.
McEstimate mc_norm_moment(const SampleBatch& batch, double lambda, double alpha,
                          double sigma_mass);

/// E |<xi,u>|^lambda, same policy; the tail mass is gauge(u)^alpha.
McEstimate mc_scalar_moment(const SampleBatch& batch, const Vec& u, double lambda, double alpha,
                            double gauge_u);

/// Zonoid support estimates: u -> mean of |<xi,u>|/2 per direction.
std::vector<double> estimate_zonoid_support(const SampleBatch& batch,
                                            const std::vector<Vec>& directions);

void write_samples_csv(const std::string& path, const SampleBatch& batch, double alpha, Kind kind);

struct CsvSamples {
  std::vector<Vec> rows;
  bool has_header = false;
  double alpha = 0;
  Kind kind = Kind::Symmetric;
  std::uint64_t seed = 0, fingerprint = 0;
};

CsvSamples read_samples_csv(const std::string& path);

}  // namespace stabgeo
