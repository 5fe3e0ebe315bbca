#include "hapd/actuator.hpp"

#include <algorithm>
#include <stdexcept>

namespace hapd {

Vec12 clamp_deflections(const Vec12& commanded, double limit) {
    Vec12 out;
    for (int i = 0; i < kNumSurfaces; ++i) out[i] = std::clamp(commanded[i], -limit, limit);
    return out;
}

ActuatorLimiter::ActuatorLimiter(double deflection_limit, double rate_limit, const Vec12& initial)
    : deflection_limit_(deflection_limit), rate_limit_(rate_limit) {
    if (!(deflection_limit > 0.0) || !(rate_limit > 0.0))
        throw std::invalid_argument("actuator limits must be positive");
    position_ = clamp_deflections(initial, deflection_limit_);
}

const Vec12& ActuatorLimiter::step(const Vec12& commanded, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("actuator step dt must be positive");
    const double max_move = rate_limit_ * dt;
    for (int i = 0; i < kNumSurfaces; ++i) {
        const double move = std::clamp(commanded[i] - position_[i], -max_move, max_move);
        position_[i] = std::clamp(position_[i] + move, -deflection_limit_, deflection_limit_);
    }
    return position_;
}

}  // namespace hapd
