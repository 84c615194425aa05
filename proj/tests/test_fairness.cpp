#include <doctest.h>

#include <cmath>
#include <random>

#include "maxdiv/error.hpp"
#include "maxdiv/fairness.hpp"
#include "oracles.hpp"

using namespace maxdiv;

namespace {

// Reference values computed independently at 30 significant digits by
// evaluating the seven areas and solving for the kinks and crossings.
constexpr double kSdAtZero = 0.448684681115689803;
constexpr double kMadGlobalX = 0.969764020883517789;  // circular triangle = pi/7
constexpr double kMadGlobalValue = 0.126003963417772654;
constexpr double kMadLocalX = 0.450609259794921250;  // triangle = pi/7
constexpr double kMadLocalValue = 0.304119740993802992;
constexpr double kMaximinX = 0.652000505798627816;  // triangle = circular triangle
constexpr double kMaximinValue = 0.200257839177496703;
constexpr double kMaximinTrapezoid = 0.780187098959935475;

const double kSdMin = kPi / std::sqrt(294.0);

ArcLength grid_x(int i, int n) { return ArcLength(i == n ? kArcMax : kArcMax * i / n); }

}  // namespace

TEST_CASE("sd and mad of a synthetic equal profile vanish") {
  const AreaProfile equal{kPi / 7.0, kPi / 7.0, kPi / 7.0};
  CHECK(sd_of(equal) == doctest::Approx(0.0));
  CHECK(mad_of(equal) == doctest::Approx(0.0));
}

TEST_CASE("standard deviation values") {
  CHECK(sd(ArcLength::upper()) == doctest::Approx(kSdMin).epsilon(1e-13));
  CHECK(sd(ArcLength::lower()) == doctest::Approx(kSdAtZero).epsilon(1e-13));
  CHECK(sd_closed_form(ArcLength::upper()) == doctest::Approx(kSdMin).epsilon(1e-12));
  CHECK(std::abs(sd_closed_form(ArcLength(0.5)) - sd(ArcLength(0.5))) <= 1e-10);
  CHECK(std::abs(sd_closed_form(ArcLength(0.96976)) - sd(ArcLength(0.96976))) <= 1e-10);
}

TEST_CASE("sd agrees with the closed form and a generic seven-value SD") {
  for (int i = 0; i <= 1000; ++i) {
    const ArcLength x = grid_x(i, 1000);
    REQUIRE(std::abs(sd(x) - sd_closed_form(x)) <= 1e-10);
    REQUIRE(std::abs(sd(x) - oracle::population_sd(area_profile(x).pieces())) <= 1e-12);
  }
}

TEST_CASE("sd is strictly decreasing") {
  double prev = sd(ArcLength::lower());
  for (int i = 1; i <= 1000; ++i) {
    const double cur = sd(grid_x(i, 1000));
    REQUIRE(cur < prev);
    prev = cur;
  }
}

TEST_CASE("mean absolute deviation") {
  CHECK(mad(ArcLength::upper()) == doctest::Approx(2.0 * kPi / 49.0).epsilon(1e-13));
  CHECK(mad(ArcLength(kMadGlobalX)) == doctest::Approx(kMadGlobalValue).epsilon(1e-12));

  for (int i = 0; i <= 1000; ++i) {
    const ArcLength x = grid_x(i, 1000);
    REQUIRE(std::abs(mad(x) - oracle::mean_abs_deviation(area_profile(x).pieces(), kPi / 7.0)) <= 1e-13);
  }
}

TEST_CASE("expanded mean deviation matches where the trapezoid exceeds the mean") {
  int checked = 0;
  for (int i = 0; i <= 1000; ++i) {
    const ArcLength x = grid_x(i, 1000);
    if (area_circular_trapezoid(x) < kPi / 7.0) continue;
    ++checked;
    REQUIRE(std::abs(mad(x) - mad_expanded_form(x)) <= 1e-10);
  }
  CHECK(checked == 1001);
}

TEST_CASE("smallest piece") {
  CHECK(std::abs(min_piece(ArcLength::upper())) < 1e-15);
  CHECK(min_piece(ArcLength::lower()) == 0.0);
  CHECK(std::abs(min_piece(ArcLength(0.648)) - 0.200) < 0.01);
  CHECK(std::abs(min_piece(ArcLength(kMaximinX)) - kMaximinValue) < 1e-12);
}

TEST_CASE("evaluate bundles one profile") {
  const FairnessReport r = evaluate(ArcLength(0.3));
  CHECK(r.sd == sd_of(r.profile));
  CHECK(r.mad == mad_of(r.profile));
  CHECK(r.min_piece == r.profile.smallest());
}

TEST_CASE("golden-section search on a smooth and a kinked function") {
  CHECK(golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-10) ==
        doctest::Approx(0.3).epsilon(1e-7));
  CHECK(golden_section_minimize([](double x) { return std::abs(x - 0.71); }, 0.0, 1.0, 1e-12) ==
        doctest::Approx(0.71).epsilon(1e-11));
  CHECK_THROWS_AS(golden_section_minimize([](double x) { return x; }, 0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("bracketed minima finds every well and both endpoints") {
  // cos(3x) on [0, 4] has interior minima at pi/3 and pi; the right end rises.
  const auto found = bracketed_minima([](double x) { return std::cos(3.0 * x); }, 0.0, 4.0, {});
  REQUIRE(found.size() == 2);
  CHECK(found[0].x == doctest::Approx(kPi / 3.0).epsilon(1e-7));
  CHECK(found[1].x == doctest::Approx(kPi).epsilon(1e-7));

  const auto ends = bracketed_minima([](double x) { return -(x - 0.5) * (x - 0.5); }, 0.0, 1.0, {});
  REQUIRE(ends.size() == 2);
  CHECK(ends[0].x == 0.0);
  CHECK(ends[0].at_boundary);
  CHECK(ends[1].x == 1.0);
  CHECK(ends[1].at_boundary);
}

TEST_CASE("minimize_sd lands on the right endpoint") {
  const Optimum fine = minimize_sd(1e-8);
  CHECK(fine.x_star.value() == kArcMax);
  CHECK(fine.at_boundary);
  CHECK(fine.kind == OptimumKind::global_min);
  CHECK(std::abs(fine.objective_value - kSdMin) <= 1e-9);

  const AreaProfile starve = area_profile(fine.x_star);
  CHECK(std::abs(starve.triangle) < 1e-15);
  CHECK(starve.circular_triangle == doctest::Approx(kPi / 6.0));
  CHECK(starve.circular_trapezoid == doctest::Approx(kPi / 6.0));

  const Optimum coarse = minimize_sd(1e-3);
  CHECK(std::abs(coarse.x_star.value() - kArcMax) <= 1e-3);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> interior(0.0, kArcMax);
  for (int i = 0; i < 200; ++i) CHECK(fine.objective_value <= sd(ArcLength(interior(rng))));
}

TEST_CASE("minimize_mad finds the global and the interior local minimum") {
  const MadOptima opt = minimize_mad();
  CHECK(opt.global.kind == OptimumKind::global_min);
  CHECK_FALSE(opt.global.at_boundary);
  CHECK(std::abs(opt.global.x_star.value() - kMadGlobalX) < 1e-8);
  CHECK(std::abs(opt.global.objective_value - kMadGlobalValue) < 1e-9);
  CHECK(std::abs(opt.global.x_star.value() - 0.96976) < 1e-3);

  const AreaProfile g = area_profile(opt.global.x_star);
  CHECK(std::abs(g.triangle - 0.00779) < 5e-4);
  CHECK(std::abs(g.circular_triangle - 0.44880) < 5e-4);
  CHECK(std::abs(g.circular_trapezoid - 0.59581) < 5e-4);

  const Optimum* local = nullptr;
  for (const Optimum& o : opt.locals) {
    CHECK(o.kind == OptimumKind::local_min);
    CHECK(o.objective_value > opt.global.objective_value);
    if (std::abs(o.x_star.value() - 0.45061) < 1e-3) local = &o;
  }
  REQUIRE(local != nullptr);
  CHECK(std::abs(local->x_star.value() - kMadLocalX) < 1e-8);
  CHECK(std::abs(local->objective_value - kMadLocalValue) < 1e-9);
  const AreaProfile l = area_profile(local->x_star);
  CHECK(std::abs(l.triangle - 0.44880) < 5e-4);
  CHECK(std::abs(l.circular_triangle - 0.09399) < 5e-4);
  CHECK(std::abs(l.circular_trapezoid - 0.80361) < 5e-4);
}

TEST_CASE("maximin optimum is the triangle / circular-triangle crossing") {
  const Optimum opt = maximize_min_piece();
  CHECK(opt.kind == OptimumKind::global_max);
  CHECK(std::abs(opt.x_star.value() - kMaximinX) < 1e-9);
  CHECK(std::abs(opt.objective_value - kMaximinValue) < 1e-10);
  const AreaProfile a = area_profile(opt.x_star);
  CHECK(std::abs(a.triangle - a.circular_triangle) <= 1e-10);
  CHECK(a.triangle <= a.circular_trapezoid);
  CHECK(std::abs(a.circular_trapezoid - kMaximinTrapezoid) < 1e-9);
  CHECK(std::abs(a.circular_trapezoid - 0.78) < 0.01);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> any(0.0, kArcMax);
  for (int i = 0; i < 200; ++i) CHECK(opt.objective_value >= min_piece(ArcLength(any(rng))));

  const Optimum coarse = maximize_min_piece(1e-3);
  CHECK(std::abs(coarse.x_star.value() - kMaximinX) < 1e-3);
}

TEST_CASE("optimizers reject a non-positive tolerance and are repeatable") {
  CHECK_THROWS_AS(minimize_sd(0.0), DomainError);
  CHECK_THROWS_AS(minimize_mad(-1.0), DomainError);
  CHECK_THROWS_AS(maximize_min_piece(std::nan("")), DomainError);

  const MadOptima a = minimize_mad();
  const MadOptima b = minimize_mad();
  CHECK(a.global.x_star.value() == b.global.x_star.value());
  REQUIRE(a.locals.size() == b.locals.size());
  for (std::size_t i = 0; i < a.locals.size(); ++i) {
    CHECK(a.locals[i].x_star.value() == b.locals[i].x_star.value());
  }
  CHECK(maximize_min_piece().x_star.value() == maximize_min_piece().x_star.value());
}

TEST_CASE("scan covers [0, pi/3] inclusive") {
  const auto two = scan(2);
  REQUIRE(two.size() == 2);
  CHECK(two.front().x.value() == 0.0);
  CHECK(two.back().x.value() == kArcMax);
  CHECK_THROWS_AS(scan(1), DomainError);

  const auto rows = scan(1000);
  REQUIRE(rows.size() == 1000);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    REQUIRE(std::abs(rows[i].profile.total() - kPi) <= 1e-12);
    if (i > 0) REQUIRE(rows[i].sd < rows[i - 1].sd);
  }
}
