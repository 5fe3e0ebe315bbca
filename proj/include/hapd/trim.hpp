#pragma once

#include "hapd/dynamics.hpp"

#include <optional>

namespace hapd {

inline constexpr double kEnvelopeVtasMin = 17.0;
inline constexpr double kEnvelopeVtasMax = 23.0;
inline constexpr double kEnvelopeAltMin = 300.0;
inline constexpr double kEnvelopeAltMax = 700.0;

struct TrimSpec {
    double v_tas = 20.0;     // m/s
    double altitude = 500.0;  // m
    WindVector wind{};
    // When set, thrust is held at this value instead of being solved for.
    std::optional<double> fixed_thrust{};
};

bool within_envelope(const TrimSpec& spec);

struct TrimResult {
    FlightState x;
    ControlInput u;
    double residual_norm = 0.0;  // inf-norm of xdot at (x, u), phi-row excluded
    double v_tas = 0.0;
    double altitude = 0.0;
    WindVector wind{};
    int iterations = 0;
};

// Steady symmetric level-flight trim: beta = 0, rates zero, phi = 0,
// theta = alpha (zero flight-path angle), eta_a = 0, etadot = 0, lateral
// surfaces zero, one common deflection on all six elevators. Damped
// Gauss-Newton on (alpha, elevator, thrust, eta_s); V follows from alpha,
// wind and the V_TAS target. Throws TrimFailure on non-convergence after
// 100 iterations or when the solution violates the control limits.
TrimResult trim(const TrimSpec& spec, const AircraftModel& model);

// State/input assembled from the trim parameterization (shared with oracles).
FlightState trim_state(double v, double alpha, double eta_s);
ControlInput trim_input(double elevator, double thrust);

// Airspeed satisfying |V_B(V, alpha) - V_W| = v_tas for level symmetric flight.
double trim_airspeed(double alpha, double v_tas, const WindVector& wind);

}  // namespace hapd
