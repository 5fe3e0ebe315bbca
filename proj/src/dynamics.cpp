#include "hapd/dynamics.hpp"

#include "hapd/atmosphere.hpp"
#include "hapd/errors.hpp"

#include <cmath>

namespace hapd {

Vec3 gravity_components(double alpha, double beta, double phi, double theta, double g) {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    const double cth = std::cos(theta), sth = std::sin(theta);
    return Vec3(g * (-ca * cb * sth + sb * sphi * cth + sa * cb * cphi * cth),
                g * (ca * sb * sth + cb * sphi * cth - sa * sb * cphi * cth),
                g * (sa * sth + ca * cphi * cth));
}

Vec12 state_derivative(const FlightState& x, const ControlInput& u, const WindVector& wind,
                       const AircraftModel& model, double altitude) {
    if (!(x.v > 0.0)) throw SingularityError("state_derivative: V <= 0");
    const double cb = std::cos(x.beta);
    if (!(std::abs(cb) > kSingularityEps))
        throw SingularityError("state_derivative: cos(beta) ~ 0");
    if (!(std::abs(std::cos(x.theta)) > kSingularityEps))
        throw SingularityError("state_derivative: cos(theta) ~ 0");

    const AircraftParameters& par = model.params;
    const double rho = air_density(altitude);
    const double v_tas = (x.body_velocity() - wind.vec()).norm();

    const ForcesAndMoments f =
        aero_forces_moments(x, u, v_tas, rho, model.coeffs, par);
    const Vec3 grav = gravity_components(x.alpha, x.beta, x.phi, x.theta, par.gravity);

    const double ca = std::cos(x.alpha), sa = std::sin(x.alpha);
    const double sb = std::sin(x.beta);
    const double m = par.mass;
    const double thrust = u.thrust;

    Vec12 xdot;
    // Translational equations in (V, beta, alpha).
    xdot[ix::V] = (thrust * ca * cb - f.drag) / m + grav[0];
    xdot[ix::Beta] = (-thrust * ca * sb + f.side + m * grav[1]) / (m * x.v) - x.r;
    xdot[ix::Alpha] = (-thrust * sa - f.lift + m * x.v * x.q + m * grav[2]) / (m * x.v * cb);

    // Rotational equations; (pdot, rdot) couple through Ixz.
    const double rhs_p = f.roll + x.q * x.r * (par.iy - par.iz) + x.p * x.q * par.ixz;
    const double rhs_r = f.yaw + x.p * x.q * (par.ix - par.iy) - x.q * x.r * par.ixz;
    const double det = par.ix * par.iz - par.ixz * par.ixz;
    xdot[ix::P] = (par.iz * rhs_p + par.ixz * rhs_r) / det;
    xdot[ix::R] = (par.ixz * rhs_p + par.ix * rhs_r) / det;
    xdot[ix::Q] = (f.pitch + x.r * x.p * (par.iz - par.ix) +
                   (x.r * x.r - x.p * x.p) * par.ixz) / par.iy;

    // Attitude kinematics.
    const double tth = std::tan(x.theta);
    const double cphi = std::cos(x.phi), sphi = std::sin(x.phi);
    xdot[ix::Phi] = x.p + x.q * tth * sphi + x.r * tth * cphi;
    xdot[ix::Theta] = x.q * cphi - x.r * sphi;

    // Aero-elastic modes: M eta'' + c eta' + k eta = Q.
    const ElasticModeParams& ms = model.modes[0];
    const ElasticModeParams& ma = model.modes[1];
    xdot[ix::EtaS] = x.etadot_s;
    xdot[ix::EtaDotS] = (f.q_eta_s - ms.damping_constant() * x.etadot_s -
                         ms.stiffness_constant() * x.eta_s) / ms.generalized_mass;
    xdot[ix::EtaA] = x.etadot_a;
    xdot[ix::EtaDotA] = (f.q_eta_a - ma.damping_constant() * x.etadot_a -
                         ma.stiffness_constant() * x.eta_a) / ma.generalized_mass;
    return xdot;
}

}  // namespace hapd
