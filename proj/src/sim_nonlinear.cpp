#include "hapd/sim_nonlinear.hpp"

#include "hapd/actuator.hpp"
#include "hapd/errors.hpp"

#include <cmath>

namespace hapd {

FlightState rk4_step(const FlightState& x, const ControlInput& u, const WindVector& wind,
                     const AircraftModel& model, double altitude, double h) {
    const Vec12 x0 = x.vec();
    const Vec12 k1 = state_derivative(x, u, wind, model, altitude);
    const Vec12 k2 =
        state_derivative(FlightState::from_vec(x0 + 0.5 * h * k1), u, wind, model, altitude);
    const Vec12 k3 =
        state_derivative(FlightState::from_vec(x0 + 0.5 * h * k2), u, wind, model, altitude);
    const Vec12 k4 = state_derivative(FlightState::from_vec(x0 + h * k3), u, wind, model, altitude);
    return FlightState::from_vec(x0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

NonlinearTrajectory integrate_nonlinear(const SimScenario& scenario, const AircraftModel& model) {
    scenario.validate();

    const double h = scenario.step;
    const long n_steps = std::max<long>(1, std::lround(scenario.duration / h));

    Vec12 base_delta;
    for (int i = 0; i < kNumSurfaces; ++i) base_delta[i] = scenario.base.delta[i];
    ActuatorLimiter limiter(model.params.deflection_limit, model.params.rate_limit, base_delta);

    NonlinearTrajectory traj;
    traj.step = h;
    traj.time.reserve(n_steps + 1);
    traj.x.reserve(n_steps + 1);
    traj.delta_eff.reserve(n_steps + 1);
    traj.thrust.reserve(n_steps + 1);

    FlightState x = scenario.initial;
    for (long k = 0; k < n_steps; ++k) {
        const double t = k * h;
        const Vec13 dev = scenario.schedule.deviation_at(t);
        const Vec12 commanded = base_delta + dev.head<kNumSurfaces>();
        const Vec12& effective = limiter.step(commanded, h);

        ControlInput u;
        for (int i = 0; i < kNumSurfaces; ++i) u.delta[i] = effective[i];
        u.thrust = scenario.base.thrust + dev[kNumSurfaces];

        traj.time.push_back(t);
        traj.x.push_back(x);
        traj.delta_eff.push_back(effective);
        traj.thrust.push_back(u.thrust);

        try {
            x = rk4_step(x, u, scenario.wind, model, scenario.altitude, h);
        } catch (const SingularityError& e) {
            throw SimulationAbort(e.what(), t);
        }
        if (std::abs(x.theta) >= M_PI / 2.0)
            throw SimulationAbort("pitch attitude reached +/-90 deg", (k + 1) * h);
    }

    traj.time.push_back(n_steps * h);
    traj.x.push_back(x);
    traj.delta_eff.push_back(traj.delta_eff.back());
    traj.thrust.push_back(traj.thrust.back());
    return traj;
}

}  // namespace hapd
