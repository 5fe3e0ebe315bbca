#pragma once

namespace hapd {

inline constexpr double kSeaLevelDensity = 1.225;  // kg/m^3
inline constexpr double kMaxTropopauseAltitude = 11000.0;  // m

// ISA troposphere density. Valid for 0 <= altitude <= 11000 m; throws
// std::domain_error outside.
double air_density(double altitude_m);

}  // namespace hapd
