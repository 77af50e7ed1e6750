#include "greyhelm/types.hpp"

namespace greyhelm {

VesselParams reference_vessel() {
  VesselParams p;
  p.mass = 3000.0;
  p.nondim = {7.5, 5.0, 1000.0};
  p.delta_max = 30.0 * M_PI / 180.0;

  p.jet = {0.95, 0.016, 0.0075, -7.0, 1};

  p.surge.x_udot = -0.0072;
  p.surge.x_u = -0.04130;
  p.surge.x_uu = 0.01600;
  p.surge.x_uuu = -0.00022;

  p.swayyaw.v_v = -0.10667;
  p.swayyaw.v_r = -0.00304;
  p.swayyaw.v_delta = 0.10280;
  p.swayyaw.v_rrr = -4.54642;
  p.swayyaw.v_vrdelta = 2.15718;
  p.swayyaw.v_ur = 0.00020;
  p.swayyaw.v_0 = 0.00183;

  p.swayyaw.r_r = -0.86381;
  p.swayyaw.r_delta = 0.23587;
  p.swayyaw.r_rrr = -3.09984;
  p.swayyaw.r_vrdelta = -3.33673;
  p.swayyaw.r_ur = 0.12056;
  p.swayyaw.r_rdd = 0.07598;
  p.swayyaw.r_vrr = 9.66080;
  p.swayyaw.r_0 = 0.00227;

  p.validate();
  return p;
}

}  // namespace greyhelm
