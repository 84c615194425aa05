// Test-only reference computations. Nothing here calls into the code path it
// is used to check.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "maxdiv/geometry.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

struct ExactMoments {
  double mean;
  double second_moment;
  double variance;
};

// C(x, 0) + ... + C(x, d) by Pascal's rule, no closed-form binomials.
inline std::uint64_t pascal_region_count(std::uint64_t x, unsigned d) {
  std::vector<std::vector<std::uint64_t>> c(x + 1, std::vector<std::uint64_t>(d + 1, 0));
  for (std::uint64_t i = 0; i <= x; ++i) {
    c[i][0] = 1;
    for (unsigned j = 1; j <= d && j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j < i ? c[i - 1][j] : 0);
  }
  std::uint64_t total = 0;
  for (unsigned j = 0; j <= d; ++j) total += c[x][j];
  return total;
}

// Regions of d-space cut by n hyperplanes in general position, from the
// recurrence R(n, d) = R(n-1, d) + R(n-1, d-1), R(0, d) = R(n, 0) = 1.
inline std::uint64_t hyperplane_regions(std::uint64_t n, unsigned d) {
  if (n == 0 || d == 0) return 1;
  return hyperplane_regions(n - 1, d) + hyperplane_regions(n - 1, d - 1);
}

// Moments of sum_{i<=d} C(X, i), X ~ Bin(n, num/den), in exact rational
// arithmetic over the full pmf.
inline ExactMoments rational_moments(unsigned n, unsigned num, unsigned den, unsigned d) {
  const Rational p(num, den);
  const Rational q = 1 - p;
  Rational mean = 0;
  Rational second = 0;
  boost::multiprecision::cpp_int binom = 1;
  for (unsigned x = 0; x <= n; ++x) {
    if (x > 0) binom = binom * (n - x + 1) / x;
    Rational w = binom;
    for (unsigned i = 0; i < x; ++i) w *= p;
    for (unsigned i = x; i < n; ++i) w *= q;
    const Rational r = pascal_region_count(x, d);
    mean += w * r;
    second += w * r * r;
  }
  const Rational var = second - mean * mean;
  return {static_cast<double>(mean), static_cast<double>(second), static_cast<double>(var)};
}

inline double population_sd(const std::vector<double>& v) {
  double mean = 0;
  for (double a : v) mean += a;
  mean /= static_cast<double>(v.size());
  double ss = 0;
  for (double a : v) ss += (a - mean) * (a - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

inline double mean_abs_deviation(const std::vector<double>& v, double center) {
  double s = 0;
  for (double a : v) s += std::abs(a - center);
  return s / static_cast<double>(v.size());
}

// Distinct side-of-line patterns met inside the disk. Each arrangement cell
// intersected with the disk is convex, hence one region per pattern. Points
// are probed on a grid and around every crossing and chord endpoint, so no
// region, however thin, is missed.
inline std::size_t sign_vector_regions(const maxdiv::ChordSet& set, int grid = 400) {
  const auto& chords = set.chords();
  std::set<std::vector<bool>> patterns;
  auto probe = [&](double x, double y) {
    if (x * x + y * y >= 1.0) return;
    std::vector<bool> key;
    for (const auto& c : chords) key.push_back(c.nx() * x + c.ny() * y > c.offset);
    patterns.insert(std::move(key));
  };
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; j <= grid; ++j) {
      probe(-1.0 + 2.0 * (i + 0.5) / (grid + 1), -1.0 + 2.0 * (j + 0.5) / (grid + 1));
    }
  }
  std::vector<maxdiv::Point> anchors;
  for (std::size_t i = 0; i < chords.size(); ++i) {
    const auto& c = chords[i];
    const double half = std::sqrt(1.0 - c.offset * c.offset);
    const double bx = c.offset * c.nx();
    const double by = c.offset * c.ny();
    // Endpoints pulled slightly inward.
    anchors.push_back({(bx - half * c.ny()) * (1 - 1e-7), (by + half * c.nx()) * (1 - 1e-7)});
    anchors.push_back({(bx + half * c.ny()) * (1 - 1e-7), (by - half * c.nx()) * (1 - 1e-7)});
    for (std::size_t j = i + 1; j < chords.size(); ++j) {
      anchors.push_back(maxdiv::intersect(chords[i], chords[j]));
    }
  }
  constexpr int kRays = 64;
  for (const auto& a : anchors) {
    for (int k = 0; k < kRays; ++k) {
      const double t = 2.0 * maxdiv::kPi * (k + 0.5) / kRays;
      probe(a.x + 1e-10 * std::cos(t), a.y + 1e-10 * std::sin(t));
    }
  }
  return patterns.size();
}

// The symmetric three-chord cut for arc length x: three chords at distance
// sin(pi/6 - x/2) from the centre, 120 degrees apart.
inline maxdiv::ChordSet symmetric_cut(double x) {
  const double h = std::sin(maxdiv::kPi / 6.0 - x / 2.0);
  return maxdiv::ChordSet({{0.0, h}, {2.0 * maxdiv::kPi / 3.0, h}, {4.0 * maxdiv::kPi / 3.0, h}});
}

// Areas of the regions of a chord set by midpoint integration on a grid,
// sorted ascending.
inline std::vector<double> grid_region_areas(const maxdiv::ChordSet& set, int grid) {
  const auto& chords = set.chords();
  std::map<std::vector<bool>, double> area;
  const double cell = (2.0 / grid) * (2.0 / grid);
  for (int i = 0; i < grid; ++i) {
    const double x = -1.0 + 2.0 * (i + 0.5) / grid;
    for (int j = 0; j < grid; ++j) {
      const double y = -1.0 + 2.0 * (j + 0.5) / grid;
      if (x * x + y * y >= 1.0) continue;
      std::vector<bool> key;
      for (const auto& c : chords) key.push_back(c.nx() * x + c.ny() * y > c.offset);
      area[key] += cell;
    }
  }
  std::vector<double> out;
  for (const auto& [key, a] : area) out.push_back(a);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
