#include "hapd/trim.hpp"

#include "hapd/errors.hpp"

#include <cmath>
#include <limits>

namespace hapd {

bool within_envelope(const TrimSpec& spec) {
    return spec.v_tas >= kEnvelopeVtasMin && spec.v_tas <= kEnvelopeVtasMax &&
           spec.altitude >= kEnvelopeAltMin && spec.altitude <= kEnvelopeAltMax;
}

FlightState trim_state(double v, double alpha, double eta_s) {
    FlightState x;
    x.v = v;
    x.alpha = alpha;
    x.theta = alpha;  // level flight path
    x.eta_s = eta_s;
    return x;
}

ControlInput trim_input(double elevator, double thrust) {
    ControlInput u;
    for (int i = kElevIbDx; i <= kElevObSx; ++i) u.delta[i] = elevator;
    u.thrust = thrust;
    return u;
}

double trim_airspeed(double alpha, double v_tas, const WindVector& wind) {
    const Vec3 dir(std::cos(alpha), 0.0, std::sin(alpha));
    const double proj = dir.dot(wind.vec());
    const double disc = proj * proj - wind.vec().squaredNorm() + v_tas * v_tas;
    if (!(disc >= 0.0))
        throw TrimFailure("trim: wind incompatible with target V_TAS", std::numeric_limits<double>::infinity());
    return proj + std::sqrt(disc);
}

namespace {

// Residual rows driven to zero by the Newton iteration.
constexpr int kResidualRows[] = {ix::V, ix::Alpha, ix::Q, ix::EtaDotS};

VecX trim_residual(const VecX& z, const TrimSpec& spec, const AircraftModel& model,
                   bool solve_thrust) {
    const double alpha = z[0];
    const double elevator = z[1];
    const double thrust = solve_thrust ? z[2] : *spec.fixed_thrust;
    const double eta_s = z[solve_thrust ? 3 : 2];
    const double v = trim_airspeed(alpha, spec.v_tas, spec.wind);
    const FlightState x = trim_state(v, alpha, eta_s);
    const ControlInput u = trim_input(elevator, thrust);
    const Vec12 xdot = state_derivative(x, u, spec.wind, model, spec.altitude);
    VecX r(4);
    for (int i = 0; i < 4; ++i) r[i] = xdot[kResidualRows[i]];
    return r;
}

double full_residual_norm(const FlightState& x, const ControlInput& u, const TrimSpec& spec,
                          const AircraftModel& model) {
    const Vec12 xdot = state_derivative(x, u, spec.wind, model, spec.altitude);
    double n = 0.0;
    for (int i = 0; i < kNumStates; ++i) {
        if (i == ix::Phi) continue;  // identically zero under the constraint set
        n = std::max(n, std::abs(xdot[i]));
    }
    return n;
}

}  // namespace

TrimResult trim(const TrimSpec& spec, const AircraftModel& model) {
    constexpr double kTol = 1e-8;
    constexpr int kMaxIter = 100;
    constexpr int kMaxHalvings = 30;

    const bool solve_thrust = !spec.fixed_thrust.has_value();
    const int n = solve_thrust ? 4 : 3;

    // Start from a small incidence and a drag-balance thrust guess.
    VecX z = VecX::Zero(n);
    z[0] = 0.02;
    if (solve_thrust) {
        const double q_bar = 0.5 * 1.2 * spec.v_tas * spec.v_tas * model.params.wing_area;
        z[2] = q_bar * std::max(model.coeffs.chan[kChanDrag].bias, 0.01);
    }

    auto residual = [&](const VecX& zz) { return trim_residual(zz, spec, model, solve_thrust); };

    VecX r = residual(z);
    int iter = 0;
    for (; iter < kMaxIter; ++iter) {
        if (r.lpNorm<Eigen::Infinity>() < 0.1 * kTol) break;

        // Jacobian by central differences.
        MatX jac(4, n);
        for (int j = 0; j < n; ++j) {
            const double h = std::max(1e-7, 1e-7 * std::abs(z[j]));
            VecX zp = z, zm = z;
            zp[j] += h;
            zm[j] -= h;
            jac.col(j) = (residual(zp) - residual(zm)) / (2.0 * h);
        }

        const VecX step = jac.colPivHouseholderQr().solve(-r);
        if (!step.allFinite())
            throw TrimFailure("trim: singular Newton system", r.lpNorm<Eigen::Infinity>());

        // Backtracking on the residual norm.
        double s = 1.0;
        const double r0 = r.norm();
        bool accepted = false;
        for (int h = 0; h <= kMaxHalvings; ++h) {
            const VecX zc = z + s * step;
            VecX rc;
            try {
                rc = residual(zc);
            } catch (const SingularityError&) {
                s *= 0.5;
                continue;
            }
            if (rc.norm() < r0 || rc.lpNorm<Eigen::Infinity>() < kTol) {
                z = zc;
                r = rc;
                accepted = true;
                break;
            }
            s *= 0.5;
        }
        if (!accepted)
            throw TrimFailure("trim: line search stalled", r.lpNorm<Eigen::Infinity>());
    }

    const double alpha = z[0];
    const double elevator = z[1];
    const double thrust = solve_thrust ? z[2] : *spec.fixed_thrust;
    const double eta_s = z[solve_thrust ? 3 : 2];

    TrimResult out;
    out.x = trim_state(trim_airspeed(alpha, spec.v_tas, spec.wind), alpha, eta_s);
    out.u = trim_input(elevator, thrust);
    out.v_tas = spec.v_tas;
    out.altitude = spec.altitude;
    out.wind = spec.wind;
    out.iterations = iter;
    out.residual_norm = full_residual_norm(out.x, out.u, spec, model);

    if (out.residual_norm >= kTol)
        throw TrimFailure("trim: did not converge", out.residual_norm);
    if (std::abs(elevator) > model.params.deflection_limit)
        throw TrimFailure("trim: elevator deflection exceeds limit", out.residual_norm);
    if (thrust < 0.0)
        throw TrimFailure("trim: negative thrust required", out.residual_norm);
    return out;
}

}  // namespace hapd
