#include "hapd/aero.hpp"

#include "hapd/errors.hpp"
#include "hapd/keyvalue.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hapd {

namespace {
constexpr const char* kChannelKeys[kNumChannels] = {
    "C_L", "C_D", "C_Y", "C_l", "C_m", "C_n", "Q.s", "Q.a",
};

double eval_channel(const ChannelCoeffs& c, double alpha, double beta, double p_hat,
                    double q_hat, double r_hat, const std::array<double, kNumSurfaces>& delta,
                    double eta_s, double etadot_s, double eta_a, double etadot_a) {
    double acc = c.bias + c.alpha * alpha + c.beta * beta + c.p * p_hat + c.q * q_hat +
                 c.r * r_hat + c.eta_s * eta_s + c.etadot_s * etadot_s + c.eta_a * eta_a +
                 c.etadot_a * etadot_a;
    for (int i = 0; i < kNumSurfaces; ++i) acc += c.delta[i] * delta[i];
    return acc;
}
}  // namespace

const char* channel_key(int chan) { return kChannelKeys[chan]; }

void AeroCoefficientTable::validate() const {
    // Drag must oppose motion across the trim band (sanity on a loaded table).
    const ChannelCoeffs& d = chan[kChanDrag];
    for (double alpha : {0.0, 0.05, 0.1}) {
        if (!(d.bias + d.alpha * alpha > 0.0))
            throw std::invalid_argument(
                "coefficient table: C_D non-positive at alpha = " + std::to_string(alpha));
    }
}

AeroCoefficientTable load_coefficient_table(const std::string& path) {
    KeyValueFile f = KeyValueFile::load(path);
    AeroCoefficientTable t;

    const std::string conv = f.get_string("rate_convention");
    if (conv == "normalized")
        t.rate_convention = AeroCoefficientTable::RateConvention::kNormalized;
    else if (conv == "raw")
        t.rate_convention = AeroCoefficientTable::RateConvention::kRaw;
    else
        throw ParseError(path, f.line_of("rate_convention"),
                         "rate_convention must be 'normalized' or 'raw', got '" + conv + "'");

    for (int c = 0; c < kNumChannels; ++c) {
        const std::string base = kChannelKeys[c];
        ChannelCoeffs& ch = t.chan[c];
        ch.bias = f.get_double(base + ".0");
        ch.alpha = f.get_double(base + ".alpha");
        ch.beta = f.get_double(base + ".beta");
        ch.p = f.get_double(base + ".p");
        ch.q = f.get_double(base + ".q");
        ch.r = f.get_double(base + ".r");
        for (int i = 0; i < kNumSurfaces; ++i)
            ch.delta[i] = f.get_double(base + ".delta[" + std::to_string(i) + "]");
        ch.eta_s = f.get_double(base + ".eta.s");
        ch.eta_a = f.get_double(base + ".eta.a");
        ch.etadot_s = f.get_double(base + ".etadot.s");
        ch.etadot_a = f.get_double(base + ".etadot.a");
    }
    f.finish();
    t.validate();
    return t;
}

void save_coefficient_table(const std::string& path, const AeroCoefficientTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    out << "# Aerodynamic coefficient table (dimensionless).\n"
        << "# rate_convention=normalized: p,r derivatives multiply p*b/2V_TAS, r*b/2V_TAS;\n"
        << "#   q derivatives multiply q*c/2V_TAS. etadot derivatives multiply etadot (units s).\n";
    out << "rate_convention = "
        << (table.rate_convention == AeroCoefficientTable::RateConvention::kNormalized
                ? "normalized"
                : "raw")
        << "\n";
    for (int c = 0; c < kNumChannels; ++c) {
        const std::string base = kChannelKeys[c];
        const ChannelCoeffs& ch = table.chan[c];
        out << base << ".0 = " << ch.bias << "\n";
        out << base << ".alpha = " << ch.alpha << "\n";
        out << base << ".beta = " << ch.beta << "\n";
        out << base << ".p = " << ch.p << "\n";
        out << base << ".q = " << ch.q << "\n";
        out << base << ".r = " << ch.r << "\n";
        for (int i = 0; i < kNumSurfaces; ++i)
            out << base << ".delta[" << i << "] = " << ch.delta[i] << "\n";
        out << base << ".eta.s = " << ch.eta_s << "\n";
        out << base << ".eta.a = " << ch.eta_a << "\n";
        out << base << ".etadot.s = " << ch.etadot_s << "\n";
        out << base << ".etadot.a = " << ch.etadot_a << "\n";
    }
}

ForcesAndMoments aero_forces_moments(const FlightState& state, const ControlInput& input,
                                     double v_tas, double rho,
                                     const AeroCoefficientTable& table,
                                     const AircraftParameters& params) {
    double p_hat = state.p, q_hat = state.q, r_hat = state.r;
    if (table.rate_convention == AeroCoefficientTable::RateConvention::kNormalized) {
        const double inv2v = 1.0 / (2.0 * v_tas);
        p_hat *= params.wing_span * inv2v;
        q_hat *= params.mean_chord * inv2v;
        r_hat *= params.wing_span * inv2v;
    }

    const double pressure = 0.5 * rho * v_tas * v_tas * params.wing_area;

    double c[kNumChannels];
    for (int i = 0; i < kNumChannels; ++i)
        c[i] = eval_channel(table.chan[i], state.alpha, state.beta, p_hat, q_hat, r_hat,
                            input.delta, state.eta_s, state.etadot_s, state.eta_a,
                            state.etadot_a);

    ForcesAndMoments f;
    f.lift = pressure * c[kChanLift];
    f.drag = pressure * c[kChanDrag];
    f.side = pressure * c[kChanSide];
    f.roll = pressure * params.wing_span * c[kChanRoll];
    f.pitch = pressure * params.mean_chord * c[kChanPitch];
    f.yaw = pressure * params.wing_span * c[kChanYaw];
    f.q_eta_s = pressure * c[kChanQEtaS];
    f.q_eta_a = pressure * c[kChanQEtaA];
    return f;
}

}  // namespace hapd
