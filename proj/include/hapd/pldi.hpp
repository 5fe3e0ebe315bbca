#pragma once

#include "hapd/discretize.hpp"
#include "hapd/grid.hpp"

#include <vector>

namespace hapd {

struct PldiVertex {
    TrimResult trim;
    LinearModel lin;
    DiscreteModel disc;
};

// Polytopic family of discrete models: the convex hull of the per-condition
// (Phi_i, G_i), represented by its generators (no pruning).
struct PldiModel {
    std::vector<PldiVertex> vertices;
    double ts = 0.0;
    EnvelopeGrid grid;
};

// Trim + linearize + discretize at every grid point. Propagates trim and
// linearization failures with the offending flight condition attached;
// rejects families with fewer than 2 vertices.
PldiModel build_pldi(const EnvelopeGrid& grid, const AircraftModel& model, double ts);

}  // namespace hapd
