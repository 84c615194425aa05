#include "maxdiv/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "maxdiv/error.hpp"
#include "maxdiv/geometry.hpp"

namespace maxdiv {

namespace {

__extension__ using i128 = __int128;

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

i128 checked_mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("variance polynomial coefficient overflows 128 bits");
  }
  return out;
}

i128 product(std::initializer_list<i128> factors) {
  i128 acc = 1;
  for (i128 f : factors) acc = checked_mul(acc, f);
  return acc;
}

struct ScaledPolynomial {
  std::array<i128, 7> coeff{};  // coefficient of p^k, times `denominator`
  int degree = 0;
  i128 denominator = 1;
};

ScaledPolynomial variance_polynomial(std::uint64_t n_in, unsigned d) {
  const i128 n = n_in;
  ScaledPolynomial poly;
  if (d == 2) {
    // np + 1/2 n(5n-7)p^2 + n(n-1)(n-4)p^3 - 1/2 n(n-1)(2n-3)p^4
    poly.denominator = 2;
    poly.degree = 4;
    poly.coeff[1] = product({2, n});
    poly.coeff[2] = product({n, 5 * n - 7});
    poly.coeff[3] = product({2, n, n - 1, n - 4});
    poly.coeff[4] = -product({n, n - 1, 2 * n - 3});
  } else if (d == 3) {
    // np + 1/2 n(5n-7)p^2 + 1/6 n(n-1)(19n-50)p^3
    //    + 1/2 n(n-1)(3n^2-19n+25)p^4 + 1/4 n(n-1)(n-2)(n^2-11n+20)p^5
    //    - 1/12 n(n-1)(n-2)(3n^2-15n+20)p^6
    poly.denominator = 12;
    poly.degree = 6;
    const i128 n2 = checked_mul(n, n);
    poly.coeff[1] = product({12, n});
    poly.coeff[2] = product({6, n, 5 * n - 7});
    poly.coeff[3] = product({2, n, n - 1, 19 * n - 50});
    poly.coeff[4] = product({6, n, n - 1, 3 * n2 - 19 * n + 25});
    poly.coeff[5] = product({3, n, n - 1, n - 2, n2 - 11 * n + 20});
    poly.coeff[6] = -product({n, n - 1, n - 2, 3 * n2 - 15 * n + 20});
  } else {
    throw UnsupportedError("closed-form variance exists only for d = 2 and d = 3; d = " +
                           std::to_string(d) + " needs enumeration");
  }
  return poly;
}

double evaluate(const ScaledPolynomial& poly, double p) {
  if (p == 1.0) {
    i128 total = 0;
    for (int k = 0; k <= poly.degree; ++k) total += poly.coeff[k];
    return static_cast<double>(static_cast<long double>(total) /
                               static_cast<long double>(poly.denominator));
  }
  long double acc = 0.0L;
  for (int k = poly.degree; k >= 0; --k) {
    acc = acc * static_cast<long double>(p) + static_cast<long double>(poly.coeff[k]);
  }
  return static_cast<double>(acc / static_cast<long double>(poly.denominator));
}

double guard_variance(double variance, double mean) {
  if (variance >= 0.0) return variance;
  if (variance >= -1e-9 * mean * mean) return 0.0;
  throw InternalError("negative variance " + std::to_string(variance));
}

}  // namespace

CutModel::CutModel(std::uint64_t n, double p, unsigned d) : n_(n), p_(p), d_(d) {
  if (n == 0) throw DomainError("number of cuts must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("success probability " + std::to_string(p) + " outside [0, 1]");
  }
  if (d == 0) throw DomainError("dimension must be at least 1");
}

std::string_view to_string(MomentMethod method) {
  switch (method) {
    case MomentMethod::exact_enumeration: return "exact_enumeration";
    case MomentMethod::closed_form: return "closed_form";
    case MomentMethod::asymptotic: return "asymptotic";
    case MomentMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

std::uint64_t region_count(std::uint64_t successes, unsigned d) {
  return max_regions(successes, d);
}

std::vector<double> binomial_pmf(std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0, 1]");
  std::vector<double> pmf(n + 1, 0.0);
  if (p == 0.0) {
    pmf.front() = 1.0;
    return pmf;
  }
  if (p == 1.0) {
    pmf.back() = 1.0;
    return pmf;
  }
  const double q = 1.0 - p;
  const double odds = p / q;
  const auto mode = std::min<std::uint64_t>(
      n, static_cast<std::uint64_t>(std::floor(static_cast<double>(n + 1) * p)));
  pmf[mode] = 1.0;
  for (std::uint64_t k = mode; k < n; ++k) {
    pmf[k + 1] = pmf[k] * static_cast<double>(n - k) / static_cast<double>(k + 1) * odds;
  }
  for (std::uint64_t k = mode; k > 0; --k) {
    pmf[k - 1] = pmf[k] * static_cast<double>(k) / static_cast<double>(n - k + 1) / odds;
  }
  CompensatedSum total;
  for (double w : pmf) total.add(w);
  const double norm = total.value();
  for (double& w : pmf) w /= norm;
  return pmf;
}

double expected_regions(const CutModel& model) {
  const auto n = static_cast<double>(model.n());
  const double p = model.p();
  CompensatedSum sum;
  double term = 1.0;  // C(n, i) p^i
  sum.add(term);
  const std::uint64_t top = std::min<std::uint64_t>(model.d(), model.n());
  for (std::uint64_t i = 1; i <= top; ++i) {
    term *= (n - static_cast<double>(i - 1)) / static_cast<double>(i) * p;
    sum.add(term);
  }
  return sum.value();
}

double second_moment_2d(const CutModel& model) {
  if (model.d() != 2) throw UnsupportedError("second_moment_2d requires d = 2");
  const auto n = static_cast<double>(model.n());
  const double p = model.p();
  const double f1 = n * p;
  const double f2 = f1 * (n - 1) * p;
  const double f3 = f2 * (n - 2) * p;
  const double f4 = f3 * (n - 3) * p;
  return 1.0 + 3.0 * f1 + 4.5 * f2 + 2.0 * f3 + 0.25 * f4;
}

double variance_closed_form(const CutModel& model) {
  const double v = evaluate(variance_polynomial(model.n(), model.d()), model.p());
  return guard_variance(v, expected_regions(model));
}

RegionMoments variance_exact(const CutModel& model, const EnumerationOptions& opts) {
  if (model.n() > opts.max_n) {
    throw DomainError("enumeration bound exceeded: n = " + std::to_string(model.n()) +
                      " > " + std::to_string(opts.max_n));
  }
  const std::vector<double> pmf = binomial_pmf(model.n(), model.p());
  std::vector<double> regions(pmf.size());
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    regions[x] = static_cast<double>(region_count(x, model.d()));
  }

  CompensatedSum mean_sum;
  for (std::size_t x = 0; x < pmf.size(); ++x) mean_sum.add(pmf[x] * regions[x]);
  const double mean = mean_sum.value();

  // Second pass about the mean avoids cancellation in E(R^2) - E(R)^2.
  CompensatedSum var_sum;
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    const double dev = regions[x] - mean;
    var_sum.add(pmf[x] * dev * dev);
  }
  const double variance = guard_variance(var_sum.value(), mean);
  return {mean, variance, variance + mean * mean, MomentMethod::exact_enumeration, model.d()};
}

double variance_asymptotic(const CutModel& model) {
  const double np = static_cast<double>(model.n()) * model.p();
  const double q = 1.0 - model.p();
  switch (model.d()) {
    case 2: return np * np * np * q;
    case 3: return 0.25 * std::pow(np, 5) * q;
    default:
      throw UnsupportedError("asymptotic variance exists only for d = 2 and d = 3");
  }
}

RegionMoments region_moments(const CutModel& model, MomentMethod method,
                             const EnumerationOptions& opts) {
  switch (method) {
    case MomentMethod::exact_enumeration: return variance_exact(model, opts);
    case MomentMethod::closed_form: {
      const double mean = expected_regions(model);
      const double variance = variance_closed_form(model);
      const double second =
          model.d() == 2 ? second_moment_2d(model) : variance + mean * mean;
      return {mean, variance, second, method, model.d()};
    }
    case MomentMethod::asymptotic:
      return {expected_regions(model), variance_asymptotic(model), std::nullopt, method,
              model.d()};
    case MomentMethod::monte_carlo: break;
  }
  throw UnsupportedError("monte_carlo moments are produced by the sampler, not here");
}

double chebyshev_tail(const CutModel& model, double lambda, const EnumerationOptions& opts) {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  const double variance = model.n() <= opts.max_n ? variance_exact(model, opts).variance
                                                  : variance_closed_form(model);
  return std::min(1.0, variance / (lambda * lambda));
}

ConcentrationWindow concentration_window(const CutModel& model) {
  if (model.d() != 2) throw UnsupportedError("concentration window is defined for d = 2");
  return {expected_regions(model), std::sqrt(variance_closed_form(model))};
}

}  // namespace maxdiv
