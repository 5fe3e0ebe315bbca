#pragma once

#include "hapd/trim.hpp"

namespace hapd {

struct LinearModel {
    Mat12 a;
    Mat12x13 b;
    FlightState x_trim;
    ControlInput u_trim;
    double v_tas = 0.0;
    double altitude = 0.0;
};

// Continuous-time Jacobians (A, B) of state_derivative at a trim point,
// by central finite differences with per-variable steps
// h_i = max(1e-6, 1e-6 |x_i|) and one Richardson halving step; entries where
// the two estimates agree to 1e-5 relative take the extrapolated value,
// entries below 1e-9 absolute are snapped to structural zeros.
// Requires trim residual < 1e-6. Non-finite entries raise LinearizationError
// naming the entry.
LinearModel linearize(const TrimResult& trim_point, const AircraftModel& model);

}  // namespace hapd
