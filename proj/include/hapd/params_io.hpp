#pragma once

#include "hapd/dynamics.hpp"

#include <string>

namespace hapd {

struct ModelParams {
    AircraftParameters aircraft;
    std::array<ElasticModeParams, 2> modes{};
};

// Defaults embed the published airframe constants plus the reference modal set.
ModelParams default_model_params();

// Parameters file: same strict key-value format as the coefficient table.
// Angles are in degrees at the file boundary.
ModelParams load_model_params(const std::string& path);
void save_model_params(const std::string& path, const ModelParams& p);

// Convenience: parameters + coefficient table -> evaluation context.
AircraftModel load_aircraft_model(const std::string& params_path,
                                  const std::string& coeffs_path);

}  // namespace hapd
