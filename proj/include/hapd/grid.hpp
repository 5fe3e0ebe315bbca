#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hapd {

struct FlightCondition {
    double v_tas = 0.0;
    double altitude = 0.0;
};

struct EnvelopeGrid {
    std::vector<double> speeds;     // m/s
    std::vector<double> altitudes;  // m

    int size() const { return static_cast<int>(speeds.size() * altitudes.size()); }
    // Row-major: speed-major, altitude-minor.
    FlightCondition point(int i) const;

    // Stable 64-bit fingerprint of the grid, stored in NLDI archives so a
    // model can be matched to the vertex family it was fitted on.
    std::string hash() const;
};

// Uniformly spaced grid including both endpoints; counts must be >= 2.
EnvelopeGrid build_grid(double v_min, double v_max, int n_speeds, double alt_min,
                        double alt_max, int n_altitudes);

EnvelopeGrid default_grid();  // 6 speeds x 5 altitudes over the flight envelope

}  // namespace hapd
