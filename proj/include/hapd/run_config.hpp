#pragma once

#include <cstdint>
#include <string>

namespace hapd {

// Pipeline settings shared by the command-line tools. Sections: [files]
// (parameter and coefficient tables, relative to the config file), [grid]
// (envelope sweep), [discretize], [sim], [out]. Unknown keys are errors.
struct RunConfig {
    std::string params_path;
    std::string coeffs_path;

    double vtas_min = 17.0;
    double vtas_max = 23.0;
    int vtas_count = 6;
    double alt_min = 300.0;
    double alt_max = 700.0;
    int alt_count = 5;

    double ts = 0.02;
    double sim_step = 0.005;
    uint64_t seed = 0;

    std::string out_dir = "out";
};

RunConfig load_run_config(const std::string& path);

}  // namespace hapd
