#pragma once

#include "hapd/types.hpp"

namespace hapd {

// Position + rate limiter for the 12 control surfaces. Holds the effective
// deflections between calls; each step slews toward the commanded value by at
// most rate_limit * dt per surface and clamps the result into the position
// limits, so |effective| <= deflection_limit always and the per-step change
// never exceeds rate_limit * dt.
class ActuatorLimiter {
public:
    // The initial position is clamped into the position limits.
    ActuatorLimiter(double deflection_limit, double rate_limit, const Vec12& initial);

    // Effective deflections after advancing one interval dt toward `commanded`.
    const Vec12& step(const Vec12& commanded, double dt);

    const Vec12& position() const { return position_; }

private:
    double deflection_limit_;
    double rate_limit_;
    Vec12 position_;
};

// One-shot position clamp (no rate component).
Vec12 clamp_deflections(const Vec12& commanded, double limit);

}  // namespace hapd
