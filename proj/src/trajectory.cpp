#include "hapd/trajectory.hpp"

#include "hapd/matrix_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hapd {

namespace {

// Degrees for the angular states, native units otherwise.
const char* kStateUnitSuffix[kNumStates] = {
    "_mps", "_deg", "_deg", "_degps", "_degps", "_degps", "_deg", "_deg", "", "", "", "",
};

bool state_is_angular(int i) { return i >= ix::Alpha && i <= ix::Theta; }

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + tmp);
        f << content;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

void write_nonlinear_csv(const std::string& path, const NonlinearTrajectory& traj) {
    std::ostringstream out;
    out << "t_s";
    for (int i = 0; i < kNumStates; ++i) out << "," << state_name(i) << kStateUnitSuffix[i];
    for (int i = 0; i < kNumSurfaces; ++i) out << ",d_" << surface_name(i) << "_deg";
    out << ",thrust_N\n";

    for (size_t k = 0; k < traj.samples(); ++k) {
        out << format_double(traj.time[k]);
        const Vec12 x = traj.x[k].vec();
        for (int i = 0; i < kNumStates; ++i)
            out << "," << format_double(state_is_angular(i) ? x[i] * kDegPerRad : x[i]);
        for (int i = 0; i < kNumSurfaces; ++i)
            out << "," << format_double(traj.delta_eff[k][i] * kDegPerRad);
        out << "," << format_double(traj.thrust[k]) << "\n";
    }
    write_atomic(path, out.str());
}

void write_ldi_csv(const std::string& path, const LdiTrajectory& traj) {
    std::ostringstream out;
    out << "t_s";
    for (int i = 0; i < kNumStates; ++i) out << ",d" << state_name(i) << kStateUnitSuffix[i];
    for (int i = 0; i < kNumSurfaces; ++i) out << ",dd_" << surface_name(i) << "_deg";
    out << ",dthrust_N,wnorm,znorm,delta_sigma\n";

    const size_t steps = traj.steps();
    for (size_t k = 0; k < traj.x.size(); ++k) {
        out << format_double(k * traj.ts);
        for (int i = 0; i < kNumStates; ++i)
            out << ","
                << format_double(state_is_angular(i) ? traj.x[k][i] * kDegPerRad : traj.x[k][i]);
        if (k < steps) {
            for (int i = 0; i < kNumSurfaces; ++i)
                out << "," << format_double(traj.u[k][i] * kDegPerRad);
            out << "," << format_double(traj.u[k][kNumSurfaces]);
            out << "," << format_double(traj.w[k].norm());
            out << "," << format_double(traj.z[k].norm());
            out << "," << format_double(traj.delta_norm[k]);
        } else {
            for (int i = 0; i < kNumSurfaces + 4; ++i) out << ",";  // 16 per-step columns
        }
        out << "\n";
    }
    write_atomic(path, out.str());
}

}  // namespace hapd
