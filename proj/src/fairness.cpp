#include "maxdiv/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxdiv/error.hpp"

namespace maxdiv {

namespace {

constexpr double kTieTolerance = 1e-12;

void require_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw DomainError("tolerance must be positive, got " + std::to_string(tol));
  }
}

}  // namespace

std::string_view to_string(OptimumKind kind) {
  switch (kind) {
    case OptimumKind::global_min: return "global_min";
    case OptimumKind::local_min: return "local_min";
    case OptimumKind::global_max: return "global_max";
  }
  return "unknown";
}

double sd_of(const AreaProfile& a) {
  const double d1 = a.triangle - kMeanPiece;
  const double d2 = a.circular_triangle - kMeanPiece;
  const double d3 = a.circular_trapezoid - kMeanPiece;
  return std::sqrt((d1 * d1 + 3.0 * d2 * d2 + 3.0 * d3 * d3) / 7.0);
}

double mad_of(const AreaProfile& a) {
  return (std::abs(a.triangle - kMeanPiece) + 3.0 * std::abs(a.circular_triangle - kMeanPiece) +
          3.0 * std::abs(a.circular_trapezoid - kMeanPiece)) /
         7.0;
}

double sd(ArcLength x) { return sd_of(area_profile(x)); }

double sd_closed_form(ArcLength x) {
  const double v = x.value();
  const double c = std::cos(kPi / 3.0 + v / 2.0);
  const double s = std::sin(v / 2.0);
  const double small = v / 2.0 - 2.0 * s * c;
  const double trap = kPi / 3.0 - v / 2.0 + 2.0 * s * c - std::sqrt(3.0) * c * c;
  const double bracket =
      21.0 * small * small + 189.0 * c * c * c * c + 21.0 * trap * trap - kPi * kPi;
  if (bracket < -1e-12) {
    throw InternalError("negative radicand in closed-form standard deviation");
  }
  return std::sqrt(std::max(bracket, 0.0)) / 7.0;
}

double mad(ArcLength x) { return mad_of(area_profile(x)); }

double mad_expanded_form(ArcLength x) {
  const double v = x.value();
  const double c = std::cos(kPi / 3.0 + v / 2.0);
  const double s = std::sin(v / 2.0);
  return 3.0 / 7.0 * std::abs(v / 2.0 - 2.0 * s * c - kPi / 7.0) +
         1.0 / 7.0 * std::abs(-3.0 * std::sqrt(3.0) * c * c + kPi / 7.0) + 4.0 / 49.0 * kPi -
         3.0 / 14.0 * v + 6.0 / 7.0 * s * c - 3.0 * std::sqrt(3.0) / 7.0 * c * c;
}

double min_piece(ArcLength x) { return area_profile(x).smallest(); }

FairnessReport evaluate(ArcLength x) {
  const AreaProfile profile = area_profile(x);
  return {x, sd_of(profile), mad_of(profile), profile.smallest(), profile};
}

double golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                               double tol) {
  require_tolerance(tol);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  // The bracket shrinks by a fixed ratio, so this terminates; the cap only
  // matters for tolerances below the spacing of doubles.
  for (int iter = 0; iter < 500 && (b - a) > tol; ++iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

std::vector<Candidate> bracketed_minima(const std::function<double(double)>& f, double lo,
                                      double hi, const SearchOptions& opts) {
  require_tolerance(opts.tol);
  if (opts.grid_points < 3) throw DomainError("search grid needs at least 3 points");
  if (!(lo < hi)) throw DomainError("empty search interval");

  const std::size_t n = opts.grid_points;
  std::vector<double> xs(n);
  std::vector<double> fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = (i + 1 == n) ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    fs[i] = f(xs[i]);
  }

  std::vector<Candidate> found;
  auto add = [&](double x, double value, bool boundary) {
    // Neighbouring grid points on a flat stretch can bracket the same minimum.
    const double spacing = (hi - lo) / static_cast<double>(n - 1);
    if (!found.empty() && std::abs(found.back().x - x) < spacing) {
      if (value < found.back().value) found.back() = {x, value, boundary};
      return;
    }
    found.push_back({x, value, boundary});
  };

  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || fs[i] <= fs[i - 1];
    const bool right_ok = i + 1 == n || fs[i] <= fs[i + 1];
    if (!left_ok || !right_ok) continue;

    const double a = xs[i == 0 ? 0 : i - 1];
    const double b = xs[i + 1 == n ? n - 1 : i + 1];
    double x = golden_section_minimize(f, a, b, opts.tol);
    double value = f(x);
    if (fs[i] < value) {
      x = xs[i];
      value = fs[i];
    }
    // An endpoint minimum stays on the endpoint unless the interior is lower.
    if (i == 0 && fs[0] <= value) {
      x = lo;
      value = fs[0];
    } else if (i + 1 == n && fs[n - 1] <= value) {
      x = hi;
      value = fs[n - 1];
    }
    const bool boundary = std::abs(x - lo) <= opts.tol || std::abs(x - hi) <= opts.tol;
    add(x, value, boundary);
  }
  return found;
}

namespace {

// Index of the smallest value; ties within kTieTolerance go to smaller x.
std::size_t pick_global(const std::vector<Candidate>& candidates) {
  if (candidates.empty()) throw InternalError("no minimum bracketed");
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double diff = candidates[i].value - candidates[best].value;
    if (diff < -kTieTolerance ||
        (std::abs(diff) <= kTieTolerance && candidates[i].x < candidates[best].x)) {
      best = i;
    }
  }
  return best;
}

Optimum to_optimum(const Candidate& c, OptimumKind kind) {
  return {ArcLength(c.x), c.value, kind, c.at_boundary};
}

SearchOptions options_for(double tol) {
  SearchOptions opts;
  opts.tol = tol;
  return opts;
}

}  // namespace

Optimum minimize_sd(double tol) {
  auto candidates =
      bracketed_minima([](double x) { return sd(ArcLength(x)); }, 0.0, kArcMax, options_for(tol));
  return to_optimum(candidates[pick_global(candidates)], OptimumKind::global_min);
}

MadOptima minimize_mad(double tol) {
  auto candidates =
      bracketed_minima([](double x) { return mad(ArcLength(x)); }, 0.0, kArcMax, options_for(tol));
  const std::size_t g = pick_global(candidates);
  MadOptima result{to_optimum(candidates[g], OptimumKind::global_min), {}};
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i == g) continue;
    if (candidates[i].value > candidates[g].value + kTieTolerance) {
      result.locals.push_back(to_optimum(candidates[i], OptimumKind::local_min));
    }
  }
  return result;
}

Optimum maximize_min_piece(double tol) {
  auto candidates = bracketed_minima([](double x) { return -min_piece(ArcLength(x)); }, 0.0,
                                     kArcMax, options_for(tol));
  Optimum best = to_optimum(candidates[pick_global(candidates)], OptimumKind::global_max);
  best.objective_value = -best.objective_value;

  // The maximum of the smallest piece sits where the shrinking central
  // triangle meets the growing circular triangles. Locate that crossing
  // separately and insist both routes agree.
  double lo = 0.0;
  double hi = kArcMax;
  const double target = tol / 4.0;
  for (int iter = 0; iter < 200 && hi - lo > target; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const ArcLength x(mid);
    if (area_triangle(x) - area_circular_triangle(x) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double crossing = 0.5 * (lo + hi);
  if (std::abs(crossing - best.x_star.value()) > tol) {
    throw InternalError("maximin optimum at x = " + std::to_string(best.x_star.value()) +
                        " disagrees with the triangle/circular-triangle crossing at " +
                        std::to_string(crossing));
  }
  return best;
}

std::vector<FairnessReport> scan(std::size_t grid_points) {
  if (grid_points < 2) throw DomainError("scan needs at least 2 grid points");
  std::vector<FairnessReport> rows;
  rows.reserve(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = (i + 1 == grid_points)
                         ? kArcMax
                         : kArcMax * static_cast<double>(i) / static_cast<double>(grid_points - 1);
    rows.push_back(evaluate(ArcLength(x)));
  }
  return rows;
}

}  // namespace maxdiv
