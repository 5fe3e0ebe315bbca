#pragma once

#include "hapd/aero.hpp"
#include "hapd/types.hpp"

#include <array>

namespace hapd {

// Everything needed to evaluate the nonlinear dynamics. Immutable after load.
struct AircraftModel {
    AircraftParameters params;
    std::array<ElasticModeParams, 2> modes{};  // [0] symmetric, [1] asymmetric
    AeroCoefficientTable coeffs;
};

// Wind-axis gravity components (g1, g2, g3).
Vec3 gravity_components(double alpha, double beta, double phi, double theta, double g);

inline constexpr double kSingularityEps = 1e-6;

// Full nonlinear state derivative xdot = f(x, u, wind) of the polar-form 6DoF
// equations plus the two aero-elastic modes. The derivative vector uses the
// same ordering as the state.
//
// Wind enters through the true airspeed V_TAS = |V_B(V, alpha, beta) - V_W|
// scaling the aerodynamic prefactors; at zero wind V_TAS = V.
//
// Preconditions: V > 0, |cos beta| > 1e-6, |cos theta| > 1e-6; violations
// throw SingularityError.
Vec12 state_derivative(const FlightState& state, const ControlInput& input,
                       const WindVector& wind, const AircraftModel& model, double altitude);

}  // namespace hapd
