#include "hapd/atmosphere.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hapd {

double air_density(double altitude_m) {
    if (!(altitude_m >= 0.0) || !(altitude_m <= kMaxTropopauseAltitude))
        throw std::domain_error("air_density: altitude " + std::to_string(altitude_m) +
                                " m outside [0, 11000] m");
    return kSeaLevelDensity * std::pow(1.0 - 2.25577e-5 * altitude_m, 4.2559);
}

}  // namespace hapd
