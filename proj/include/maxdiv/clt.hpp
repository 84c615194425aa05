#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace maxdiv {

/// Raw error terms of Rinott's dependency-graph normal approximation applied
/// to R = 1 + sum_j I_j + sum_{i<j} I_i I_j. The universal constant in front
/// of the bound is unknown, so only the terms and their maximum are reported.
struct RinottTerms {
  double term1 = 0.0;  // N D^2 B^3 / sigma^3
  double term2 = 0.0;  // sqrt(N D^3 B^4) / sigma^2
  double term3 = 0.0;  // D B / sigma
  std::uint64_t n_summands = 0;  // N = n^2 + 1
  std::uint64_t max_degree = 0;  // D = 4n
  double bound = 1.0;            // B, every summand lies in [0, 1]
  double sigma = 0.0;            // exact sqrt(V(R)), d = 2

  [[nodiscard]] double max_term() const;
};

RinottTerms rinott_terms(std::uint64_t n, double p);

struct ThresholdCheck {
  double margin = 0.0;  // p (1-p)^{1/3} n^{1/9}
  bool in_regime = false;
};

/// How far (n, p) sits inside the region p (1-p)^{1/3} >> n^{-1/9} where the
/// standardized region count is asymptotically normal.
ThresholdCheck threshold_check(std::uint64_t n, double p);

struct SamplerOptions {
  /// Worker threads; 0 reads MAXDIV_THREADS, falling back to the hardware
  /// concurrency. The output does not depend on this value.
  unsigned threads = 0;
};

/// Thread count from MAXDIV_THREADS (must be an integer >= 1) or the hardware.
unsigned default_thread_count();

/// Uniform on [0, 1) for draw `index` of stream `seed`. Stateless: each index
/// is hashed on its own, so draws can be produced in any order or partition.
double counter_uniform(std::uint64_t seed, std::uint64_t index);

inline constexpr std::uint64_t kMaxSamplerCuts = 10'000'000;

/// M independent draws of the planar region count 1 + X + C(X, 2) with
/// X ~ Bin(n, p), sampled by exact inversion of the binomial CDF.
std::vector<std::uint64_t> sample_region_counts(std::uint64_t n, double p, std::uint64_t samples,
                                                std::uint64_t seed,
                                                const SamplerOptions& opts = {});

struct NormalitySample {
  std::uint64_t n = 0;
  double p = 0.0;
  std::uint64_t sample_count = 0;
  std::optional<std::uint64_t> seed;
  double ks_distance = 0.0;
  double mean = 0.0;   // exact E(R) used to standardize
  double sigma = 0.0;  // exact sqrt(V(R)) used to standardize
};

double standard_normal_cdf(double w);

/// Kolmogorov-Smirnov distance between the empirical CDF of (R - E R)/sigma(R)
/// and the standard normal, standardized with the exact planar moments.
NormalitySample ks_distance(std::span<const std::uint64_t> samples, std::uint64_t n, double p);

/// Draws samples and measures their distance to normality in one step.
NormalitySample check_normality(std::uint64_t n, double p, std::uint64_t samples,
                                std::uint64_t seed, const SamplerOptions& opts = {});

}  // namespace maxdiv
