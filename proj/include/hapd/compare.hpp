#pragma once

#include "hapd/sim_ldi.hpp"
#include "hapd/sim_nonlinear.hpp"

#include <array>
#include <string>

namespace hapd {

// Per-output deviation between a nonlinear run and a discrete LDI run over a
// shared horizon, both measured about the same trim anchor.
struct ComparisonMetrics {
    std::array<double, kNumOutputs> max_err{};
    std::array<double, kNumOutputs> rms_err{};
    double overall_max = 0.0;
    int samples = 0;  // compared sample count (steps + 1)
};

// Resamples the nonlinear trajectory at the LDI sample time (the ratio
// ts / step must be a whole number) and compares y = C (x_nl - x_anchor)
// against y = C x_ldi sample by sample. Throws std::invalid_argument when
// the time bases are incompatible or the nonlinear horizon is too short.
ComparisonMetrics compare_responses(const NonlinearTrajectory& nl, const FlightState& anchor,
                                    const LdiTrajectory& ldi, const Mat8x12& c);

// Plain-text table, one row per output.
std::string format_comparison(const ComparisonMetrics& m);

// Machine-readable form: output, max_err, rms_err rows.
void write_comparison_csv(const std::string& path, const ComparisonMetrics& m);

}  // namespace hapd
