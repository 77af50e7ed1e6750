#include <doctest.h>

#include <cmath>
#include <numbers>

#include "greyhelm/physics.hpp"
#include "greyhelm/rng.hpp"
#include "greyhelm/types.hpp"

using namespace greyhelm;

namespace {

const VesselParams kVessel = reference_vessel();

}  // namespace

TEST_CASE("prime conversion maps the reference scales") {
  const NondimScheme scheme{7.5, 5.0, 1000.0};
  const MotionState zero = to_prime({0.0, 0.0, 0.0}, scheme);
  CHECK(zero.u == 0.0);
  CHECK(zero.v == 0.0);
  CHECK(zero.r == 0.0);

  const MotionState p = to_prime({5.0, 0.0, 0.0}, scheme);
  CHECK(p.u == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.v == 0.0);
  CHECK(p.r == 0.0);
}

TEST_CASE("prime round-trip is the identity") {
  const NondimScheme scheme{7.5, 5.0, 1000.0};
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    const MotionState s{rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0),
                        rng.uniform(-0.8, 0.8)};
    const MotionState back = from_prime(to_prime(s, scheme), scheme);
    CHECK(back.u == doctest::Approx(s.u).epsilon(1e-12));
    CHECK(back.v == doctest::Approx(s.v).epsilon(1e-12));
    CHECK(back.r == doctest::Approx(s.r).epsilon(1e-12));
  }
  const MotionState s{1.3, -0.2, 0.1};
  const MotionState back = from_prime(to_prime(s, scheme), scheme);
  CHECK(back.u == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(back.v == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(back.r == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("jet thrust at the catalogued operating point") {
  const JetParams jet{0.95, 0.016, 0.0075, -7.0, 1};
  // V_j = 0.0075*2000 - 7 = 8 m/s; thrust = 0.95*1000*0.016*64
  CHECK(jet_thrust({0.0, 2000.0}, jet, 1000.0) == doctest::Approx(972.8).epsilon(1e-12));

  SUBCASE("nozzle speed clamps at zero") {
    CHECK(jet_thrust({0.0, 100.0}, jet, 1000.0) == 0.0);
    CHECK(jet_thrust({0.0, 0.0}, jet, 1000.0) == 0.0);
  }
  SUBCASE("steering at 90 degrees produces no axial force") {
    CHECK(jet_thrust({std::numbers::pi / 2.0, 2000.0}, jet, 1000.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("even in delta, non-negative inside +-90 degrees") {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
      const double d = rng.uniform(0.0, 1.5);
      const double n = rng.uniform(0.0, 6000.0);
      const double plus = jet_thrust({d, n}, jet, 1000.0);
      const double minus = jet_thrust({-d, n}, jet, 1000.0);
      CHECK(plus == doctest::Approx(minus).epsilon(1e-14));
      CHECK(plus >= 0.0);
    }
  }
  SUBCASE("two jets double the force") {
    JetParams twin = jet;
    twin.jet_count = 2;
    CHECK(jet_thrust({0.0, 2000.0}, twin, 1000.0) ==
          doctest::Approx(2.0 * 972.8).epsilon(1e-12));
  }
}

TEST_CASE("surge acceleration against hand-evaluated cases") {
  VesselParams p = kVessel;
  CHECK(p.mass_prime() == doctest::Approx(0.014222222222222223).epsilon(1e-14));
  CHECK(p.accel_denom() == doctest::Approx(0.021422222222222224).epsilon(1e-14));

  SUBCASE("all terms vanish at rest with no thrust") {
    VesselParams zero_thrust = p;
    zero_thrust.jet.b = 0.0;
    zero_thrust.jet.a = 0.0;
    CHECK(surge_accel({0.0, 0.0, 0.0}, {0.0, 0.0}, zero_thrust) == 0.0);
  }
  SUBCASE("pure thrust at rest") {
    // X_P = 972.8 N -> X_P' = 972.8/703125; du' = X_P'/(m' - x_udot)
    const double du = surge_accel({0.0, 0.0, 0.0}, {0.0, 2000.0}, p);
    CHECK(du == doctest::Approx(0.06458423236514522).epsilon(1e-12));
  }
  SUBCASE("cubic resistance at u' = 1 with no thrust") {
    VesselParams no_thrust = p;
    no_thrust.jet.a = 0.0;
    no_thrust.jet.b = 0.0;
    const double du = surge_accel({1.0, 0.0, 0.0}, {0.0, 0.0}, no_thrust);
    CHECK(du == doctest::Approx(-1.191286307053942).epsilon(1e-12));
  }
}

TEST_CASE("sway/yaw acceleration matches a term-by-term oracle") {
  const SwayYawCoeffs& c = kVessel.swayyaw;

  SUBCASE("only the constant slots survive at rest") {
    const auto [dv, dr] = sway_yaw_accel({0.0, 0.0, 0.0}, {0.0, 0.0}, c);
    CHECK(dv == doctest::Approx(0.00183).epsilon(1e-12));
    CHECK(dr == doctest::Approx(0.00227).epsilon(1e-12));
  }
  SUBCASE("all-zero coefficients give zero acceleration") {
    const auto [dv, dr] = sway_yaw_accel({1.0, -0.5, 0.3}, {0.4, 0.0}, SwayYawCoeffs{});
    CHECK(dv == 0.0);
    CHECK(dr == 0.0);
  }
  SUBCASE("mixed state, term-by-term evaluation") {
    const double u = 1.0, v = 0.1, r = 0.05, d = 0.2;
    // oracle: explicit term list summed independently of the implementation
    const double sway_terms[] = {c.v_v * v,          c.v_r * r,       c.v_delta * d,
                                 c.v_rrr * r * r * r, c.v_vrdelta * v * r * d,
                                 c.v_ur * u * r,     c.v_0};
    const double yaw_terms[] = {c.r_r * r,           c.r_delta * d,
                                c.r_rrr * r * r * r, c.r_vrdelta * v * r * d,
                                c.r_ur * u * r,      c.r_rdd * r * d * d,
                                c.r_vrr * v * r * r, c.r_0};
    double dv_expect = 0.0, dr_expect = 0.0;
    for (double t : sway_terms) dv_expect += t;
    for (double t : yaw_terms) dr_expect += t;

    const auto [dv, dr] = sway_yaw_accel({u, v, r}, {d, 0.0}, c);
    CHECK(dv == doctest::Approx(dv_expect).epsilon(1e-14));
    CHECK(dr == doctest::Approx(dr_expect).epsilon(1e-14));
    CHECK(dv == doctest::Approx(0.013169877500000001).epsilon(1e-12));
    CHECK(dr == doctest::Approx(0.011124450000000001).epsilon(1e-12));
  }
  SUBCASE("linear in the coefficient vector") {
    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
      SwayYawCoeffs c1, c2;
      double* f1 = &c1.v_v;
      double* f2 = &c2.v_v;
      for (int k = 0; k < 15; ++k) {
        f1[k] = rng.uniform(-3.0, 3.0);
        f2[k] = rng.uniform(-3.0, 3.0);
      }
      SwayYawCoeffs sum = c1;
      double* fs = &sum.v_v;
      for (int k = 0; k < 15; ++k) fs[k] = f1[k] + f2[k];

      const MotionState s{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                          rng.uniform(-0.5, 0.5)};
      const ControlInput ctl{rng.uniform(-0.5, 0.5), 0.0};
      const auto [dv1, dr1] = sway_yaw_accel(s, ctl, c1);
      const auto [dv2, dr2] = sway_yaw_accel(s, ctl, c2);
      const auto [dvs, drs] = sway_yaw_accel(s, ctl, sum);
      CHECK(dvs == doctest::Approx(dv1 + dv2).epsilon(1e-11));
      CHECK(drs == doctest::Approx(dr1 + dr2).epsilon(1e-11));
    }
  }
}

TEST_CASE("physical_rhs converts prime evaluation back to SI") {
  SUBCASE("matches the explicit prime-space composition") {
    const MotionState s{2.4, -0.4, 0.12};
    const ControlInput ctl{0.3, 4200.0};
    const StateDeriv d = physical_rhs(s, ctl, kVessel);

    const NondimScheme& ns = kVessel.nondim;
    const MotionState p = to_prime(s, ns);
    const double du_p = surge_accel(p, ctl, kVessel);
    const auto [dv_p, dr_p] = sway_yaw_accel(p, ctl, kVessel.swayyaw);
    const double a = ns.u_ref * ns.u_ref / ns.length;
    CHECK(d.du == doctest::Approx(du_p * a).epsilon(1e-14));
    CHECK(d.dv == doctest::Approx(dv_p * a).epsilon(1e-14));
    CHECK(d.dr == doctest::Approx(dr_p * a / ns.length).epsilon(1e-14));
  }
  SUBCASE("zero coefficients and zero thrust: rhs vanishes when v*r = 0") {
    VesselParams bare = kVessel;
    bare.surge = SurgeCoeffs{};   // keeps x_udot = 0; denominator is m' > 0
    bare.swayyaw = SwayYawCoeffs{};
    bare.jet.a = 0.0;
    bare.jet.b = 0.0;
    bare.validate();
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
      const double u = rng.uniform(-4.0, 4.0);
      // the surge Coriolis term m'v'r' survives zero coefficients, so the
      // exact-zero property holds on the v*r = 0 slice
      const MotionState sv{u, rng.uniform(-4.0, 4.0), 0.0};
      const MotionState sr{u, 0.0, rng.uniform(-0.4, 0.4)};
      for (const MotionState& s : {sv, sr}) {
        const StateDeriv d = physical_rhs(s, {rng.uniform(-0.5, 0.5), 0.0}, bare);
        CHECK(d.du == 0.0);
        CHECK(d.dv == 0.0);
        CHECK(d.dr == 0.0);
      }
    }
  }
  SUBCASE("constant offsets at rest scale as U^2/L and U^2/L^2") {
    const StateDeriv d = physical_rhs({0.0, 0.0, 0.0}, {0.0, 0.0}, [] {
      VesselParams p = reference_vessel();
      p.jet.a = 0.0;
      p.jet.b = 0.0;
      return p;
    }());
    const double a = 25.0 / 7.5;
    CHECK(d.dv == doctest::Approx(0.00183 * a).epsilon(1e-12));
    CHECK(d.dr == doctest::Approx(0.00227 * a / 7.5).epsilon(1e-12));
  }
  SUBCASE("rejects non-finite state") {
    CHECK_THROWS_AS(physical_rhs({std::nan(""), 0.0, 0.0}, {0.0, 0.0}, kVessel),
                    std::invalid_argument);
  }
}

TEST_CASE("vessel validation enforces the acceleration denominator") {
  VesselParams p = kVessel;
  p.surge.x_udot = 1.0;  // m' - x_udot' < 0
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  VesselParams bad_mass = kVessel;
  bad_mass.mass = -1.0;
  CHECK_THROWS_AS(bad_mass.validate(), std::invalid_argument);

  VesselParams bad_jet = kVessel;
  bad_jet.jet.alpha = 1.5;
  CHECK_THROWS_AS(bad_jet.validate(), std::invalid_argument);
}
