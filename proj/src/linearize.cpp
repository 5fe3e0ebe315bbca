#include "hapd/linearize.hpp"

#include "hapd/errors.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace hapd {

namespace {

constexpr double kStructuralZero = 1e-9;
constexpr double kAgreeRel = 1e-5;

// Central difference with one Richardson halving. f maps a scalar
// perturbation of one variable to the 12-vector derivative.
Vec12 refined_column(const std::function<Vec12(double)>& f, double h, const char* label,
                     int col) {
    auto central = [&](double step) { return ((f(step) - f(-step)) / (2.0 * step)).eval(); };
    Vec12 d1 = central(h);
    Vec12 d2 = central(0.5 * h);
    for (int pass = 0; pass < 2; ++pass) {
        bool ok = true;
        for (int i = 0; i < kNumStates; ++i) {
            const double scale = std::max(std::abs(d1[i]), std::abs(d2[i]));
            if (scale < kStructuralZero) continue;
            if (std::abs(d1[i] - d2[i]) > std::max(kAgreeRel * scale, kStructuralZero)) {
                ok = false;
                break;
            }
        }
        if (ok) break;
        h *= 0.5;
        d1 = d2;
        d2 = central(0.5 * h);
    }
    Vec12 out = (4.0 * d2 - d1) / 3.0;
    for (int i = 0; i < kNumStates; ++i) {
        if (!std::isfinite(out[i]))
            throw LinearizationError(std::string("linearize: non-finite entry ") + label + "(" +
                                     std::to_string(i) + "," + std::to_string(col) + ")");
        if (std::abs(out[i]) < kStructuralZero) out[i] = 0.0;
    }
    return out;
}

}  // namespace

LinearModel linearize(const TrimResult& tp, const AircraftModel& model) {
    if (!(tp.residual_norm < 1e-6))
        throw std::invalid_argument("linearize: trim residual " +
                                    std::to_string(tp.residual_norm) + " >= 1e-6");

    const Vec12 x0 = tp.x.vec();
    const Vec13 u0 = tp.u.vec();

    LinearModel m;
    m.x_trim = tp.x;
    m.u_trim = tp.u;
    m.v_tas = tp.v_tas;
    m.altitude = tp.altitude;

    for (int j = 0; j < kNumStates; ++j) {
        const double h = std::max(1e-6, 1e-6 * std::abs(x0[j]));
        auto f = [&](double step) {
            Vec12 x = x0;
            x[j] += step;
            return state_derivative(FlightState::from_vec(x), tp.u, tp.wind, model,
                                    tp.altitude);
        };
        m.a.col(j) = refined_column(f, h, "A", j);
    }
    for (int j = 0; j < kNumInputs; ++j) {
        const double h = std::max(1e-6, 1e-6 * std::abs(u0[j]));
        auto f = [&](double step) {
            Vec13 u = u0;
            u[j] += step;
            return state_derivative(tp.x, ControlInput::from_vec(u), tp.wind, model,
                                    tp.altitude);
        };
        m.b.col(j) = refined_column(f, h, "B", j);
    }
    return m;
}

}  // namespace hapd
