#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

namespace maxdiv {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kArcMax = kPi / 3.0;

/// Length of arc AB on the unit circle for the symmetric three-chord family.
/// Construction rejects values outside [0, pi/3]; nothing is clamped.
class ArcLength {
 public:
  explicit ArcLength(double x);

  [[nodiscard]] double value() const noexcept { return x_; }

  static ArcLength lower() { return ArcLength(0.0); }
  static ArcLength upper() { return ArcLength(kArcMax); }

 private:
  double x_;
};

/// Region areas of the symmetric configuration, grouped by symmetry class.
/// The disk has unit radius, so the seven areas sum to pi.
struct AreaProfile {
  double triangle = 0.0;            // x1
  double circular_triangle = 0.0;   // x3
  double circular_trapezoid = 0.0;  // x3

  static constexpr int kTriangleCount = 1;
  static constexpr int kCircularTriangleCount = 3;
  static constexpr int kCircularTrapezoidCount = 3;
  static constexpr int kRegionCount = 7;

  [[nodiscard]] double total() const noexcept {
    return triangle + 3.0 * circular_triangle + 3.0 * circular_trapezoid;
  }
  [[nodiscard]] double smallest() const noexcept;
  /// The seven areas in the order triangle, 3 circular triangles, 3 trapezoids.
  [[nodiscard]] std::vector<double> pieces() const;
};

double area_triangle(ArcLength x);
double area_circular_triangle(ArcLength x);
double area_circular_trapezoid(ArcLength x);
AreaProfile area_profile(ArcLength x);

/// Steiner count sum_{i=0}^{d} C(n, i): the largest number of regions that
/// n hyperplanes cut d-space into. Throws OverflowError rather than wrapping.
std::uint64_t max_regions(std::uint64_t n, unsigned d);

/// A line { q : normal . q = offset } with unit normal (cos theta, sin theta).
struct Chord {
  double theta = 0.0;
  double offset = 0.0;

  [[nodiscard]] double nx() const;
  [[nodiscard]] double ny() const;

  friend bool operator==(const Chord&, const Chord&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Lines through the unit disk in general position with every pairwise
/// crossing strictly inside the disk. The constructor validates.
class ChordSet {
 public:
  /// Distance a crossing must keep from the circle and from other crossings.
  static constexpr double kTolerance = 1e-9;

  ChordSet() = default;
  explicit ChordSet(std::vector<Chord> chords);

  [[nodiscard]] const std::vector<Chord>& chords() const noexcept { return chords_; }
  [[nodiscard]] std::size_t size() const noexcept { return chords_.size(); }

  friend bool operator==(const ChordSet&, const ChordSet&) = default;

 private:
  std::vector<Chord> chords_;
};

/// Crossing of two non-parallel lines. Throws DegenerateError when parallel.
Point intersect(const Chord& a, const Chord& b);

/// Number of regions the chords cut the disk into, by Euler's formula on the
/// planar graph formed by the chords and the boundary circle.
std::uint64_t count_regions_geometric(const ChordSet& chords);

/// Deterministic random chord set: direction uniform on [0, pi), offset
/// uniform on [-0.2, 0.2], each line redrawn until it is compatible with the
/// ones already placed. Throws DegenerateError once the retry budget is spent.
ChordSet random_chord_set(std::size_t n, std::uint64_t seed);

inline constexpr int kChordRetryBudget = 1000;

}  // namespace maxdiv
