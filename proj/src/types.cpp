#include "hapd/types.hpp"

namespace hapd {

namespace {
constexpr const char* kSurfaceNames[kNumSurfaces] = {
    "elev_ib_dx", "elev_ib_sx", "elev_mid_dx", "elev_mid_sx",
    "elev_ob_dx", "elev_ob_sx", "ail_ib_dx",   "ail_ib_sx",
    "ail_ob_dx",  "ail_ob_sx",  "rudder_sup",  "rudder_inf",
};

constexpr const char* kStateNames[kNumStates] = {
    "V", "alpha", "beta", "p", "q", "r", "phi", "theta",
    "eta_s", "etadot_s", "eta_a", "etadot_a",
};
}  // namespace

const char* surface_name(int i) { return kSurfaceNames[i]; }
const char* state_name(int i) { return kStateNames[i]; }

Vec12 FlightState::vec() const {
    Vec12 x;
    x << v, alpha, beta, p, q, r, phi, theta, eta_s, etadot_s, eta_a, etadot_a;
    return x;
}

FlightState FlightState::from_vec(const Vec12& x) {
    FlightState s;
    s.v = x[ix::V];
    s.alpha = x[ix::Alpha];
    s.beta = x[ix::Beta];
    s.p = x[ix::P];
    s.q = x[ix::Q];
    s.r = x[ix::R];
    s.phi = x[ix::Phi];
    s.theta = x[ix::Theta];
    s.eta_s = x[ix::EtaS];
    s.etadot_s = x[ix::EtaDotS];
    s.eta_a = x[ix::EtaA];
    s.etadot_a = x[ix::EtaDotA];
    return s;
}

Vec3 FlightState::body_velocity() const {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    return Vec3(v * ca * cb, v * sb, v * sa * cb);
}

Vec13 ControlInput::vec() const {
    Vec13 u;
    for (int i = 0; i < kNumSurfaces; ++i) u[i] = delta[i];
    u[kNumSurfaces] = thrust;
    return u;
}

ControlInput ControlInput::from_vec(const Vec13& u) {
    ControlInput c;
    for (int i = 0; i < kNumSurfaces; ++i) c.delta[i] = u[i];
    c.thrust = u[kNumSurfaces];
    return c;
}

void AircraftParameters::validate() const {
    auto positive = [](double x, const char* name) {
        if (!(x > 0.0)) throw std::invalid_argument(std::string(name) + " must be positive");
    };
    positive(mass, "mass");
    positive(wing_area, "wing_area");
    positive(wing_span, "wing_span");
    positive(mean_chord, "mean_chord");
    positive(ix, "ix");
    positive(iy, "iy");
    positive(iz, "iz");
    positive(gravity, "gravity");
    positive(deflection_limit, "deflection_limit");
    positive(rate_limit, "rate_limit");
    if (!(ix * iz - ixz * ixz > 0.0))
        throw std::invalid_argument("inertia matrix not positive definite: Ix*Iz - Ixz^2 <= 0");
}

double ElasticModeParams::damping_constant() const {
    if (stiffness_convention == StiffnessConvention::kLiteral) return damping;
    return 2.0 * generalized_mass * damping * natural_frequency;
}

double ElasticModeParams::stiffness_constant() const {
    if (stiffness_convention == StiffnessConvention::kLiteral)
        return generalized_mass * natural_frequency;
    return generalized_mass * natural_frequency * natural_frequency;
}

void ElasticModeParams::validate() const {
    if (!(generalized_mass > 0.0))
        throw std::invalid_argument("elastic mode generalized_mass must be positive");
    if (!(damping >= 0.0)) throw std::invalid_argument("elastic mode damping must be >= 0");
    if (!(natural_frequency > 0.0))
        throw std::invalid_argument("elastic mode natural_frequency must be positive");
}

Mat8x12 output_selector() {
    Mat8x12 c = Mat8x12::Zero();
    for (int i = 0; i < kNumOutputs; ++i) c(i, i) = 1.0;
    return c;
}

}  // namespace hapd
