#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "maxdiv/geometry.hpp"

namespace maxdiv {

/// Mean area of the seven pieces of a unit pizza.
inline constexpr double kMeanPiece = kPi / 7.0;

struct FairnessReport {
  ArcLength x;
  double sd = 0.0;
  double mad = 0.0;
  double min_piece = 0.0;
  AreaProfile profile;
};

enum class OptimumKind { global_min, local_min, global_max };

std::string_view to_string(OptimumKind kind);

struct Optimum {
  ArcLength x_star;
  double objective_value = 0.0;
  OptimumKind kind = OptimumKind::global_min;
  bool at_boundary = false;
};

struct MadOptima {
  Optimum global;
  std::vector<Optimum> locals;  // sorted by x_star; never contains the global
};

// Population standard deviation and mean absolute deviation of the seven
// pieces about pi/7. Any profile is accepted, so these double as the
// reference statistics for synthetic inputs.
double sd_of(const AreaProfile& profile);
double mad_of(const AreaProfile& profile);

double sd(ArcLength x);

/// The standard deviation written out as a single closed form in x, using
/// cos(pi/3 + x/2) in place of sin(pi/6 - x/2). Independent of area_profile.
double sd_closed_form(ArcLength x);

double mad(ArcLength x);

/// Mean deviation with the trapezoid term expanded without its absolute
/// value. Only equal to mad(x) where area_circular_trapezoid(x) >= pi/7.
double mad_expanded_form(ArcLength x);

double min_piece(ArcLength x);

FairnessReport evaluate(ArcLength x);

struct SearchOptions {
  std::size_t grid_points = 4096;
  double tol = 1e-10;
};

struct Candidate {
  double x = 0.0;
  double value = 0.0;
  bool at_boundary = false;
};

/// Every local minimum of f on [lo, hi]: discrete minima of a uniform grid
/// (endpoints included) refined by golden-section search to opts.tol.
/// Results are sorted by x.
std::vector<Candidate> bracketed_minima(const std::function<double(double)>& f, double lo,
                                      double hi, const SearchOptions& opts);

/// Golden-section search for a minimum inside [a, b], stopping once the
/// bracket is narrower than tol. Returns the bracket midpoint.
double golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                               double tol);

Optimum minimize_sd(double tol = 1e-10);
MadOptima minimize_mad(double tol = 1e-10);
Optimum maximize_min_piece(double tol = 1e-10);

/// Reports at grid_points evenly spaced x over [0, pi/3], both ends included.
std::vector<FairnessReport> scan(std::size_t grid_points);

}  // namespace maxdiv
