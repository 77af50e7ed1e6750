#include <doctest.h>

#include <cmath>
#include <numbers>

#include "greyhelm/metrics.hpp"

using namespace greyhelm;

namespace {

Trajectory constant_trajectory(std::size_t n, const MotionState& s) {
  Trajectory t;
  t.dt = 0.1;
  for (std::size_t i = 0; i < n; ++i) {
    t.times.push_back(0.1 * static_cast<double>(i));
    t.states.push_back(s);
    t.poses.push_back({});
    t.controls.push_back({});
  }
  return t;
}

// exact circle of given radius, tangent heading, ccw, one pose per degree
Trajectory circle_trajectory(double radius, double revolutions) {
  Trajectory t;
  t.dt = 0.1;
  const int n = static_cast<int>(revolutions * 360.0);
  for (int i = 0; i <= n; ++i) {
    const double theta = static_cast<double>(i) * std::numbers::pi / 180.0;
    t.times.push_back(0.1 * i);
    t.states.push_back({1.0, 0.0, 0.0});
    t.poses.push_back({radius * std::cos(theta), radius * std::sin(theta),
                       theta + std::numbers::pi / 2.0});
    t.controls.push_back({});
  }
  return t;
}

}  // namespace

TEST_CASE("rmse basics") {
  const Trajectory a = constant_trajectory(50, {1.0, 2.0, 0.3});
  SUBCASE("identical series") {
    const ChannelRmse e = rmse(a, a);
    CHECK(e.u == 0.0);
    CHECK(e.v == 0.0);
    CHECK(e.r == 0.0);
    CHECK(e.total() == 0.0);
  }
  SUBCASE("constant offset is returned exactly") {
    const Trajectory b = constant_trajectory(50, {1.1, 2.0, 0.3});
    CHECK(rmse(a, b).u == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(rmse(a, b).v == 0.0);
  }
  SUBCASE("symmetric and non-negative") {
    const Trajectory b = constant_trajectory(50, {0.7, 2.5, 0.1});
    const ChannelRmse ab = rmse(a, b);
    const ChannelRmse ba = rmse(b, a);
    CHECK(ab.u == ba.u);
    CHECK(ab.v == ba.v);
    CHECK(ab.r == ba.r);
    CHECK(ab.u >= 0.0);
  }
  SUBCASE("length mismatch throws") {
    const Trajectory b = constant_trajectory(49, {1.0, 2.0, 0.3});
    CHECK_THROWS_AS(rmse(a, b), std::invalid_argument);
  }
}

TEST_CASE("Kasa circle fit on exact points") {
  const Trajectory t = circle_trajectory(15.0, 1.0);
  const auto fit = fit_circle_kasa(t.poses);
  REQUIRE(fit.has_value());
  CHECK(fit->radius == doctest::Approx(15.0).epsilon(1e-9));
  CHECK(fit->cx == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(fit->cy == doctest::Approx(0.0).epsilon(1e-9));

  SUBCASE("degenerate input") {
    CHECK(!fit_circle_kasa({}).has_value());
    CHECK(!fit_circle_kasa({{0, 0, 0}, {1, 1, 0}}).has_value());
  }
}

TEST_CASE("turning diameter") {
  SUBCASE("exact circle sampled at one degree") {
    const Trajectory t = circle_trajectory(15.0, 2.5);
    CHECK(turning_diameter(t) == doctest::Approx(30.0).epsilon(3e-4));
  }
  SUBCASE("straight line has no steady turn") {
    Trajectory t;
    t.dt = 0.1;
    for (int i = 0; i < 100; ++i) {
      t.times.push_back(0.1 * i);
      t.states.push_back({1.0, 0.0, 0.0});
      t.poses.push_back({static_cast<double>(i), 0.0, 0.0});
      t.controls.push_back({});
    }
    CHECK_THROWS_WITH_AS(turning_diameter(t), doctest::Contains("no steady turn"),
                         std::invalid_argument);
  }
  SUBCASE("a turn just short of 540 degrees is rejected") {
    const Trajectory t = circle_trajectory(15.0, 1.4);
    CHECK_THROWS_AS(turning_diameter(t), std::invalid_argument);
  }
  SUBCASE("total heading change accumulates unwrapped") {
    const Trajectory t = circle_trajectory(15.0, 2.0);
    CHECK(total_heading_change(t.poses) ==
          doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-9));
  }
}

TEST_CASE("per-revolution diameters are stable on an exact circle") {
  const Trajectory t = circle_trajectory(12.0, 3.2);
  const auto diameters = per_revolution_diameters(t.poses);
  REQUIRE(diameters.size() == 3);
  for (double d : diameters) CHECK(d == doctest::Approx(24.0).epsilon(1e-6));
}
