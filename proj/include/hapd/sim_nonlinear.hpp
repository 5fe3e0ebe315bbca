#pragma once

#include "hapd/dynamics.hpp"
#include "hapd/scenario.hpp"

#include <vector>

namespace hapd {

// Time-stamped result of a nonlinear run. Sample k holds the state at
// t_k = k * step together with the input that was active over
// [t_k, t_{k+1}); the final sample repeats the last active input.
struct NonlinearTrajectory {
    double step = 0.0;
    std::vector<double> time;
    std::vector<FlightState> x;
    std::vector<Vec12> delta_eff;  // effective deflections, rad
    std::vector<double> thrust;    // N

    size_t samples() const { return time.size(); }
};

// Classical fixed-step RK4 on state_derivative. Commands pass through the
// actuator position/rate limiter before every step; the limited input is held
// constant across the step's four stages. The horizon is rounded to the
// nearest whole number of steps. Throws SimulationAbort (with the failure
// time) when the state hits a polar-form singularity or |theta| >= pi/2.
NonlinearTrajectory integrate_nonlinear(const SimScenario& scenario, const AircraftModel& model);

// Single RK4 step of xdot = f(x, u, wind) with u held constant.
FlightState rk4_step(const FlightState& x, const ControlInput& u, const WindVector& wind,
                     const AircraftModel& model, double altitude, double h);

}  // namespace hapd
