#pragma once

#include "hapd/types.hpp"

namespace hapd {

struct AirData {
    double v_tas = 0.0;  // m/s
    double alpha = 0.0;  // rad
    double beta = 0.0;   // rad
};

// Airdata quantities from body velocity and wind:
//   V_TAS = |V_B - V_W|
//   alpha = atan((w_B - w_W) / (u_B - u_W))
//   beta  = asin((v_B - v_W) / |V_B|)
// Note beta is normalized by |V_B|, not by V_TAS, matching the model's
// definition; the two only coincide at zero wind.
// Throws SingularityError when u_B - u_W = 0 or the beta argument leaves [-1, 1].
AirData airdata(const Vec3& v_body, const Vec3& v_wind);

}  // namespace hapd
