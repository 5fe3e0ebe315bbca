#pragma once

#include "hapd/linearize.hpp"

namespace hapd {

struct DiscreteModel {
    Mat12 phi;
    Mat12x13 g;
    Mat8x12 c = output_selector();
    double ts = 0.0;
};

// Matrix exponential by scaling-and-squaring of a truncated Taylor series;
// the series is summed until the term falls below tol relative to the sum.
MatX expm(const MatX& m, double tol = 1e-12);

// Zero-order-hold discretization: Phi = exp(A Ts),
// G = (integral_0^Ts exp(A tau) dtau) B, both taken from the exponential of
// the augmented matrix [[A, B], [0, 0]] * Ts.
DiscreteModel discretize(const LinearModel& model, double ts);

}  // namespace hapd
