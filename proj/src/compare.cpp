#include "hapd/compare.hpp"

#include "hapd/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hapd {

ComparisonMetrics compare_responses(const NonlinearTrajectory& nl, const FlightState& anchor,
                                    const LdiTrajectory& ldi, const Mat8x12& c) {
    if (!(nl.step > 0.0) || !(ldi.ts > 0.0))
        throw std::invalid_argument("compare_responses: trajectories carry no time base");
    const double ratio = ldi.ts / nl.step;
    const long m = std::lround(ratio);
    if (m < 1 || std::abs(ratio - m) > 1e-9 * ratio)
        throw std::invalid_argument(
            "compare_responses: LDI sample time must be a whole multiple of the integrator step");

    const size_t steps = ldi.steps();
    if (nl.samples() < steps * m + 1)
        throw std::invalid_argument("compare_responses: nonlinear horizon shorter than LDI horizon");

    ComparisonMetrics out;
    const Vec12 x_anchor = anchor.vec();
    std::array<double, kNumOutputs> sum_sq{};
    for (size_t k = 0; k <= steps; ++k) {
        const Eigen::Matrix<double, kNumOutputs, 1> y_nl =
            c * (nl.x[k * m].vec() - x_anchor);
        const Eigen::Matrix<double, kNumOutputs, 1> y_ldi = c * ldi.x[k];
        for (int j = 0; j < kNumOutputs; ++j) {
            const double e = std::abs(y_nl[j] - y_ldi[j]);
            out.max_err[j] = std::max(out.max_err[j], e);
            sum_sq[j] += e * e;
            out.overall_max = std::max(out.overall_max, e);
        }
    }
    out.samples = static_cast<int>(steps + 1);
    for (int j = 0; j < kNumOutputs; ++j) out.rms_err[j] = std::sqrt(sum_sq[j] / (steps + 1));
    return out;
}

std::string format_comparison(const ComparisonMetrics& m) {
    std::ostringstream out;
    out << "output     max_err               rms_err\n";
    for (int j = 0; j < kNumOutputs; ++j) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-10s %-21.17g %-21.17g\n", state_name(j),
                      m.max_err[j], m.rms_err[j]);
        out << line;
    }
    out << "samples = " << m.samples << "\n";
    out << "overall_max = " << format_double(m.overall_max) << "\n";
    return out.str();
}

void write_comparison_csv(const std::string& path, const ComparisonMetrics& m) {
    std::ostringstream out;
    out << "output,max_err,rms_err\n";
    for (int j = 0; j < kNumOutputs; ++j)
        out << state_name(j) << "," << format_double(m.max_err[j]) << ","
            << format_double(m.rms_err[j]) << "\n";

    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + tmp);
        f << out.str();
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace hapd
