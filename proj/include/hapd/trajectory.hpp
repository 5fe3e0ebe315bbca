#pragma once

#include "hapd/sim_ldi.hpp"
#include "hapd/sim_nonlinear.hpp"

#include <string>

namespace hapd {

// CSV column order: time, the 12 states in vector order, the 12 effective
// deflections, thrust. Angles, rates and deflections are written in degrees;
// headers carry the units. Files are written atomically (temp + rename) with
// full decimal precision.
void write_nonlinear_csv(const std::string& path, const NonlinearTrajectory& traj);

// Deviation-coordinate CSV: time, the 12 state deviations (degrees for the
// angular entries), the 13 input deviations, then per-step |w|, |z| and
// sigma_max(Delta). The rows for the final sample leave the per-step columns
// empty.
void write_ldi_csv(const std::string& path, const LdiTrajectory& traj);

}  // namespace hapd
