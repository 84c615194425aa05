#include "maxdiv/clt.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>

#include "maxdiv/error.hpp"
#include "maxdiv/moments.hpp"

namespace maxdiv {

namespace {

void require_open_probability(double p) {
  if (p == 0.0 || p == 1.0) {
    throw DegenerateError("p = " + std::to_string(p) + " makes R deterministic (zero variance)");
  }
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
}

// SplitMix64 output function.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

double RinottTerms::max_term() const { return std::max({term1, term2, term3}); }

RinottTerms rinott_terms(std::uint64_t n, double p) {
  if (n < 2) throw DomainError("rinott_terms needs n >= 2");
  require_open_probability(p);
  RinottTerms t;
  t.n_summands = n * n + 1;
  t.max_degree = 4 * n;
  t.bound = 1.0;
  t.sigma = std::sqrt(variance_closed_form(CutModel(n, p, 2)));
  const auto big_n = static_cast<double>(t.n_summands);
  const auto deg = static_cast<double>(t.max_degree);
  const double b = t.bound;
  const double s = t.sigma;
  t.term1 = big_n * deg * deg * b * b * b / (s * s * s);
  t.term2 = std::sqrt(big_n * deg * deg * deg * b * b * b * b) / (s * s);
  t.term3 = deg * b / s;
  return t;
}

ThresholdCheck threshold_check(std::uint64_t n, double p) {
  if (n == 0) throw DomainError("n must be positive");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
  const double margin = p * std::cbrt(1.0 - p) * std::pow(static_cast<double>(n), 1.0 / 9.0);
  return {margin, margin > 1.0};
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("MAXDIV_THREADS"); env != nullptr && *env != '\0') {
    unsigned value = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end || value < 1) {
      throw DomainError(std::string("MAXDIV_THREADS must be an integer >= 1, got '") + env + "'");
    }
    return value;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double counter_uniform(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t key = mix64(seed + kGolden);
  const std::uint64_t bits = mix64(key + (index + 1) * kGolden);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::vector<std::uint64_t> sample_region_counts(std::uint64_t n, double p, std::uint64_t samples,
                                                std::uint64_t seed, const SamplerOptions& opts) {
  if (samples == 0) throw DomainError("need at least one sample");
  if (n == 0) throw DomainError("n must be positive");
  if (n > kMaxSamplerCuts) throw DomainError("n too large for the inversion sampler");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");

  const std::vector<double> pmf = binomial_pmf(n, p);
  std::vector<double> cdf(pmf.size());
  double running = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    running += pmf[k];
    cdf[k] = running;
  }
  // Mass beyond the last positive-probability k must not be reachable.
  for (std::size_t k = pmf.size(); k-- > 0;) {
    if (pmf[k] > 0.0) {
      std::fill(cdf.begin() + static_cast<std::ptrdiff_t>(k), cdf.end(), 1.0);
      break;
    }
  }

  std::vector<std::uint64_t> out(samples);
  auto fill = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const double u = counter_uniform(seed, i);
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const auto x = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
          it - cdf.begin(), static_cast<std::ptrdiff_t>(n)));
      out[i] = region_count(x, 2);
    }
  };

  const unsigned threads = std::max<std::uint64_t>(
      1, std::min<std::uint64_t>(opts.threads == 0 ? default_thread_count() : opts.threads,
                                 samples));
  if (threads == 1) {
    fill(0, samples);
    return out;
  }
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    const std::uint64_t chunk = (samples + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = std::min<std::uint64_t>(samples, t * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(samples, begin + chunk);
      workers.emplace_back(fill, begin, end);
    }
  }  // jthreads join here
  return out;
}

double standard_normal_cdf(double w) { return 0.5 * std::erfc(-w / std::sqrt(2.0)); }

NormalitySample ks_distance(std::span<const std::uint64_t> samples, std::uint64_t n, double p) {
  if (samples.empty()) throw DomainError("ks_distance needs at least one sample");
  require_open_probability(p);
  const CutModel model(n, p, 2);
  const double mean = expected_regions(model);
  const double sigma = std::sqrt(variance_closed_form(model));
  if (!(sigma > 0.0)) throw DegenerateError("zero standard deviation");

  std::vector<std::uint64_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto m = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = standard_normal_cdf((static_cast<double>(sorted[i]) - mean) / sigma);
    const double above = static_cast<double>(i + 1) / m - phi;
    const double below = phi - static_cast<double>(i) / m;
    worst = std::max({worst, above, below});
  }
  NormalitySample result;
  result.n = n;
  result.p = p;
  result.sample_count = sorted.size();
  result.ks_distance = worst;
  result.mean = mean;
  result.sigma = sigma;
  return result;
}

NormalitySample check_normality(std::uint64_t n, double p, std::uint64_t samples,
                                std::uint64_t seed, const SamplerOptions& opts) {
  require_open_probability(p);
  const auto draws = sample_region_counts(n, p, samples, seed, opts);
  NormalitySample result = ks_distance(draws, n, p);
  result.seed = seed;
  return result;
}

}  // namespace maxdiv
