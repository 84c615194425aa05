#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace maxdiv {

/// n attempted cuts in d dimensions, each succeeding independently with
/// probability p, so the number of successful cuts is Bin(n, p).
class CutModel {
 public:
  CutModel(std::uint64_t n, double p, unsigned d);

  [[nodiscard]] std::uint64_t n() const noexcept { return n_; }
  [[nodiscard]] double p() const noexcept { return p_; }
  [[nodiscard]] unsigned d() const noexcept { return d_; }

 private:
  std::uint64_t n_;
  double p_;
  unsigned d_;
};

enum class MomentMethod { exact_enumeration, closed_form, asymptotic, monte_carlo };

std::string_view to_string(MomentMethod method);

struct RegionMoments {
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> second_moment;  // absent for asymptotic results
  MomentMethod method = MomentMethod::closed_form;
  unsigned d = 2;
};

struct EnumerationOptions {
  std::uint64_t max_n = 1000;
};

/// Regions produced by `successes` maximal cuts in d dimensions; same count
/// as max_regions. Throws OverflowError past 64 bits.
std::uint64_t region_count(std::uint64_t successes, unsigned d);

/// Bin(n, p) probabilities for k = 0..n. Built outward from the mode with the
/// ratio recurrence P(k+1)/P(k) = (n-k)/(k+1) * p/q and normalised at the end,
/// so nothing underflows before normalisation.
std::vector<double> binomial_pmf(std::uint64_t n, double p);

/// E(R) = sum_{i=0}^{d} C(n, i) p^i, the i-th term being the i-th factorial
/// moment of Bin(n, p) divided by i!. The constant 1 is included for every d.
double expected_regions(const CutModel& model);

/// E(R^2) for d = 2:
///   1 + 3np + 9/2 n(n-1)p^2 + 2n(n-1)(n-2)p^3 + 1/4 n(n-1)(n-2)(n-3)p^4.
double second_moment_2d(const CutModel& model);

/// Exact variance polynomial in p for d = 2 or d = 3. Coefficients are built
/// in 128-bit integers over a common denominator, so p = 0 and p = 1 give
/// exactly zero. Throws UnsupportedError for other d.
double variance_closed_form(const CutModel& model);

/// Mean and variance by summing over the full Bin(n, p) distribution.
/// Throws DomainError when n exceeds opts.max_n.
RegionMoments variance_exact(const CutModel& model, const EnumerationOptions& opts = {});

/// Leading-order variance: n^3 p^3 (1-p) for d = 2, n^5 p^5 (1-p) / 4 for d = 3.
double variance_asymptotic(const CutModel& model);

/// Moments by the requested route. monte_carlo is not served here.
RegionMoments region_moments(const CutModel& model, MomentMethod method,
                             const EnumerationOptions& opts = {});

/// Chebyshev bound min(1, V(R) / lambda^2) on P(|R - E(R)| >= lambda).
/// Uses enumeration when n fits opts.max_n, otherwise the closed form.
double chebyshev_tail(const CutModel& model, double lambda, const EnumerationOptions& opts = {});

struct ConcentrationWindow {
  double center = 0.0;  // E(R)
  double scale = 0.0;   // sqrt(V(R))
};

/// Center and width scale of the Chebyshev concentration window (d = 2 only).
/// R lies in center +- phi(n) * scale with probability -> 1 for any phi -> inf.
///   p = 1/2         : center ~ n^2/8, scale ~ n^{3/2}/4
///   p = 1/sqrt(n)   : center ~ n/2,   scale ~ n^{3/4}
///   p = 1-1/sqrt(n) : center ~ n^2/2, scale ~ n^{5/4}
ConcentrationWindow concentration_window(const CutModel& model);

}  // namespace maxdiv
