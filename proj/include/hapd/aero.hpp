#pragma once

#include "hapd/types.hpp"

#include <array>
#include <string>

namespace hapd {

// One aerodynamic channel: an affine function of the motion variables,
// the deflections and the modal coordinates.
struct ChannelCoeffs {
    double bias = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;
    std::array<double, kNumSurfaces> delta{};
    double eta_s = 0.0;
    double eta_a = 0.0;
    double etadot_s = 0.0;  // units: s (multiplies etadot directly)
    double etadot_a = 0.0;
};

enum Channel {
    kChanLift = 0,
    kChanDrag,
    kChanSide,
    kChanRoll,
    kChanPitch,
    kChanYaw,
    kChanQEtaS,
    kChanQEtaA,
    kNumChannels,
};

// Key prefix of each channel in the coefficient file ("C_L", ..., "Q.s", "Q.a").
const char* channel_key(int chan);

struct AeroCoefficientTable {
    enum class RateConvention {
        kNormalized,  // p,r scaled by b/2V_TAS, q by c/2V_TAS before applying derivatives
        kRaw,         // angular rates applied in rad/s
    };

    RateConvention rate_convention = RateConvention::kNormalized;
    std::array<ChannelCoeffs, kNumChannels> chan{};

    // Rejects tables whose drag channel goes non-positive in the trim band.
    void validate() const;
};

// Strict loader/writer for the documented key-value table format. Unknown,
// missing or duplicate keys are errors naming the key.
AeroCoefficientTable load_coefficient_table(const std::string& path);
void save_coefficient_table(const std::string& path, const AeroCoefficientTable& table);

// Aerodynamic forces, moments and generalized forces.
//   L, D, Y      : rho V_TAS^2 S / 2 * C
//   Lbar, Nbar   : rho V_TAS^2 S b / 2 * C
//   Mbar         : rho V_TAS^2 S c / 2 * C
//   Q_eta        : rho V_TAS^2 S / 2 * C
// Each channel is affine in (alpha, beta, p, q, r, delta, eta, etadot) for
// fixed (V_TAS, rho).
ForcesAndMoments aero_forces_moments(const FlightState& state, const ControlInput& input,
                                     double v_tas, double rho,
                                     const AeroCoefficientTable& table,
                                     const AircraftParameters& params);

}  // namespace hapd
