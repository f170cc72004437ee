#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabgeo {

using Vec = std::vector<double>;

/// Value plus an error estimate (quadrature refinement gap or MC standard error).
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Input violates an operation precondition (bad model, bad parameter range).
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (nonfinite integrand, nonconvergence, empty tail).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec scaled(const Vec& a, double c) {
  Vec r = a;
  for (auto& x : r) x *= c;
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

/// Signed power t^<p> = |t|^p * sign(t), with 0 -> 0.
inline double signed_pow(double t, double p) {
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::fabs(t), p), t);
}

/// Pairwise summation in index order; fixed reduction tree so results are
/// reproducible for a fixed node ordering.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(std::span<const double>(v));
}

/// Worker cap from STABGEO_THREADS (>=1); defaults to 1.
inline int max_threads() {
  const char* env = std::getenv("STABGEO_THREADS");
  if (!env) return 1;
  long v = std::strtol(env, nullptr, 10);
  if (v < 1) return 1;
  if (v > 256) return 256;
  return static_cast<int>(v);
}

/// FNV-1a 64-bit, used for model fingerprints.
inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a(double x, std::uint64_t h) { return fnv1a(&x, sizeof x, h); }
inline std::uint64_t fnv1a(std::uint64_t x, std::uint64_t h) { return fnv1a(&x, sizeof x, h); }

}  // namespace stabgeo
