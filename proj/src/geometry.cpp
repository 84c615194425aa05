#include "maxdiv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "maxdiv/error.hpp"

namespace maxdiv {

namespace {

// sin(pi/6 - x/2); equal to cos(pi/3 + x/2).
double half_angle_term(double x) { return std::sin(kPi / 6.0 - x / 2.0); }

}  // namespace

ArcLength::ArcLength(double x) : x_(x) {
  if (!(x >= 0.0 && x <= kArcMax)) {
    throw DomainError("arc length " + std::to_string(x) + " outside [0, pi/3]");
  }
}

double AreaProfile::smallest() const noexcept {
  return std::min({triangle, circular_triangle, circular_trapezoid});
}

std::vector<double> AreaProfile::pieces() const {
  return {triangle,           circular_triangle,  circular_triangle, circular_triangle,
          circular_trapezoid, circular_trapezoid, circular_trapezoid};
}

double area_triangle(ArcLength x) {
  const double s = half_angle_term(x.value());
  return 3.0 * std::sqrt(3.0) * s * s;
}

double area_circular_triangle(ArcLength x) {
  const double v = x.value();
  return v / 2.0 - 2.0 * std::sin(v / 2.0) * half_angle_term(v);
}

double area_circular_trapezoid(ArcLength x) {
  const double v = x.value();
  const double s = half_angle_term(v);
  return kPi / 3.0 - v / 2.0 + 2.0 * std::sin(v / 2.0) * s - std::sqrt(3.0) * s * s;
}

AreaProfile area_profile(ArcLength x) {
  return {area_triangle(x), area_circular_triangle(x), area_circular_trapezoid(x)};
}

std::uint64_t max_regions(std::uint64_t n, unsigned d) {
  if (d == 0) throw DomainError("dimension must be at least 1");
  __extension__ using u128 = unsigned __int128;
  constexpr u128 kMax = static_cast<u128>(UINT64_MAX);
  u128 total = 1;
  u128 binom = 1;  // C(n, i)
  const std::uint64_t top = std::min<std::uint64_t>(d, n);
  for (std::uint64_t i = 1; i <= top; ++i) {
    // C(n, i) = C(n, i-1) * (n - i + 1) / i is exact; both factors are below
    // 2^64 so the product fits in 128 bits.
    binom = binom * (n - i + 1) / i;
    total += binom;
    if (binom > kMax || total > kMax) throw OverflowError("region count overflows 64 bits");
  }
  return static_cast<std::uint64_t>(total);
}

double Chord::nx() const { return std::cos(theta); }
double Chord::ny() const { return std::sin(theta); }

Point intersect(const Chord& a, const Chord& b) {
  const double det = a.nx() * b.ny() - a.ny() * b.nx();
  if (std::abs(det) < 1e-15) throw DegenerateError("parallel chords");
  return {(a.offset * b.ny() - b.offset * a.ny()) / det,
          (a.nx() * b.offset - b.nx() * a.offset) / det};
}

namespace {

double norm(Point p) { return std::hypot(p.x, p.y); }
double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Checks the crossings of chord j against chords [0, j). Returns false instead
// of throwing so random generation can retry cheaply.
bool compatible(const std::vector<Chord>& chords, std::size_t j, std::vector<Point>& crossings,
                std::string* why) {
  const Chord& c = chords[j];
  if (!(std::abs(c.offset) < 1.0 - ChordSet::kTolerance)) {
    if (why) *why = "chord misses the unit disk";
    return false;
  }
  const std::size_t before = crossings.size();
  for (std::size_t i = 0; i < j; ++i) {
    const double det = chords[i].nx() * c.ny() - chords[i].ny() * c.nx();
    if (std::abs(det) < 1e-12) {
      if (why) *why = "parallel chords";
      crossings.resize(before);
      return false;
    }
    const Point p = intersect(chords[i], c);
    if (!(norm(p) < 1.0 - ChordSet::kTolerance)) {
      if (why) *why = "crossing not strictly inside the disk";
      crossings.resize(before);
      return false;
    }
    for (const Point& q : crossings) {
      if (distance(p, q) < ChordSet::kTolerance) {
        if (why) *why = "three chords (nearly) concurrent";
        crossings.resize(before);
        return false;
      }
    }
    crossings.push_back(p);
  }
  return true;
}

}  // namespace

ChordSet::ChordSet(std::vector<Chord> chords) : chords_(std::move(chords)) {
  std::vector<Point> crossings;
  for (std::size_t j = 0; j < chords_.size(); ++j) {
    std::string why;
    if (!compatible(chords_, j, crossings, &why)) {
      if (why == "chord misses the unit disk") throw DomainError(why);
      throw DegenerateError(why);
    }
  }
}

std::uint64_t count_regions_geometric(const ChordSet& set) {
  const auto& chords = set.chords();
  const std::size_t n = chords.size();
  if (n == 0) return 1;

  // Interior vertices, deduplicated so that a concurrent triple would be
  // counted once; ChordSet rules that out but the count does not rely on it.
  std::vector<Point> vertices;
  std::uint64_t chord_edges = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Point> on_chord;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      const Point p = intersect(chords[i], chords[j]);
      if (norm(p) >= 1.0) continue;
      const bool seen = std::any_of(on_chord.begin(), on_chord.end(), [&](Point q) {
        return distance(p, q) < ChordSet::kTolerance;
      });
      if (!seen) on_chord.push_back(p);
    }
    chord_edges += on_chord.size() + 1;
    for (const Point& p : on_chord) {
      const bool seen = std::any_of(vertices.begin(), vertices.end(), [&](Point q) {
        return distance(p, q) < ChordSet::kTolerance;
      });
      if (!seen) vertices.push_back(p);
    }
  }
  // Every chord contributes two endpoints on the circle, which split it into
  // 2n arcs.
  const std::uint64_t endpoints = 2 * n;
  const std::uint64_t arc_edges = endpoints;
  const std::uint64_t v = vertices.size() + endpoints;
  const std::uint64_t e = chord_edges + arc_edges;
  // V - E + F = 2 on the connected subdivision; drop the outer face.
  return e - v + 1;
}

ChordSet random_chord_set(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("random_chord_set needs n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> direction(0.0, kPi);
  std::uniform_real_distribution<double> offset(-0.2, 0.2);

  std::vector<Chord> chords;
  std::vector<Point> crossings;
  int rejected = 0;
  while (chords.size() < n) {
    const double theta = direction(rng);
    const double c = offset(rng);
    chords.push_back({theta, c});
    if (compatible(chords, chords.size() - 1, crossings, nullptr)) continue;
    chords.pop_back();
    if (++rejected > kChordRetryBudget) {
      throw DegenerateError("random_chord_set: retry budget exhausted for n = " +
                            std::to_string(n));
    }
  }
  return ChordSet(std::move(chords));
}

}  // namespace maxdiv
