#include "hapd/airdata.hpp"

#include "hapd/errors.hpp"

#include <cmath>

namespace hapd {

AirData airdata(const Vec3& v_body, const Vec3& v_wind) {
    const Vec3 rel = v_body - v_wind;
    AirData out;
    out.v_tas = rel.norm();
    if (rel[0] == 0.0)
        throw SingularityError("airdata: u_B - u_W = 0, angle of attack undefined");
    out.alpha = std::atan(rel[2] / rel[0]);
    const double v = v_body.norm();
    if (v == 0.0) throw SingularityError("airdata: |V_B| = 0, sideslip undefined");
    const double arg = rel[1] / v;
    if (arg < -1.0 || arg > 1.0)
        throw SingularityError("airdata: sideslip argument outside [-1, 1]");
    out.beta = std::asin(arg);
    return out;
}

}  // namespace hapd
