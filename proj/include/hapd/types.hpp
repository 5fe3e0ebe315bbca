#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hapd {

using Vec3 = Eigen::Vector3d;
using Vec12 = Eigen::Matrix<double, 12, 1>;
using Vec13 = Eigen::Matrix<double, 13, 1>;
using Mat12 = Eigen::Matrix<double, 12, 12>;
using Mat12x13 = Eigen::Matrix<double, 12, 13>;
using Mat8x12 = Eigen::Matrix<double, 8, 12>;
using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

inline constexpr int kNumStates = 12;
inline constexpr int kNumSurfaces = 12;
inline constexpr int kNumInputs = 13;  // 12 surface deflections + collective thrust
inline constexpr int kNumOutputs = 8;  // y = [V, alpha, beta, p, q, r, phi, theta]

inline constexpr double kDegPerRad = 180.0 / M_PI;
inline constexpr double kRadPerDeg = M_PI / 180.0;

// State vector ordering: x = [V, alpha, beta, p, q, r, phi, theta,
//                             eta_s, etadot_s, eta_a, etadot_a].
namespace ix {
inline constexpr int V = 0;
inline constexpr int Alpha = 1;
inline constexpr int Beta = 2;
inline constexpr int P = 3;
inline constexpr int Q = 4;
inline constexpr int R = 5;
inline constexpr int Phi = 6;
inline constexpr int Theta = 7;
inline constexpr int EtaS = 8;
inline constexpr int EtaDotS = 9;
inline constexpr int EtaA = 10;
inline constexpr int EtaDotA = 11;
}  // namespace ix

// Surface ordering of the deflection vector.
enum Surface {
    kElevIbDx = 0,
    kElevIbSx,
    kElevMidDx,
    kElevMidSx,
    kElevObDx,
    kElevObSx,
    kAilIbDx,
    kAilIbSx,
    kAilObDx,
    kAilObSx,
    kRudderSup,
    kRudderInf,
};

const char* surface_name(int i);

// Names used for CSV headers / diagnostics, in state-vector order.
const char* state_name(int i);

struct FlightState {
    double v = 0.0;      // |V_B|, m/s
    double alpha = 0.0;  // rad
    double beta = 0.0;   // rad
    double p = 0.0;      // rad/s
    double q = 0.0;      // rad/s
    double r = 0.0;      // rad/s
    double phi = 0.0;    // rad
    double theta = 0.0;  // rad
    double eta_s = 0.0;  // symmetric modal coordinate
    double etadot_s = 0.0;
    double eta_a = 0.0;  // asymmetric modal coordinate
    double etadot_a = 0.0;

    Vec12 vec() const;
    static FlightState from_vec(const Vec12& x);

    // Body velocity reconstructed from (V, alpha, beta).
    Vec3 body_velocity() const;
};

struct ControlInput {
    std::array<double, kNumSurfaces> delta{};  // rad
    double thrust = 0.0;                       // N, collective over all propellers

    Vec13 vec() const;
    static ControlInput from_vec(const Vec13& u);
};

struct WindVector {
    double u = 0.0;  // m/s, body-resolved components
    double v = 0.0;
    double w = 0.0;

    Vec3 vec() const { return Vec3(u, v, w); }
};

struct AircraftParameters {
    double mass = 184.4;        // kg
    double wing_area = 13.5;    // m^2
    double wing_span = 16.55;   // m
    double mean_chord = 0.557;  // m
    double ix = 1.997e3;        // kg m^2
    double iy = 258.6;
    double iz = 2.196e3;
    double ixz = -66.3;
    double gravity = 9.81;                         // m/s^2
    double deflection_limit = 25.0 * kRadPerDeg;   // rad
    double rate_limit = 200.0 * kRadPerDeg;        // rad/s

    void validate() const;
};

enum class StiffnessConvention {
    kLiteral,             // M_eta deta'' + zeta deta' + M_eta*omega*eta = Q
    kStandardSecondOrder  // M_eta (eta'' + 2 zeta omega eta' + omega^2 eta) = Q
};

struct ElasticModeParams {
    double generalized_mass = 0.0;   // kg
    double damping = 0.0;            // zeta: literal damping constant, or ratio (standard)
    double natural_frequency = 0.0;  // rad/s
    StiffnessConvention stiffness_convention = StiffnessConvention::kLiteral;

    // Effective constants of  M eta'' + c eta' + k eta = Q  under the convention flag.
    double damping_constant() const;
    double stiffness_constant() const;

    void validate() const;
};

struct ForcesAndMoments {
    double lift = 0.0;   // N
    double drag = 0.0;   // N
    double side = 0.0;   // N
    double roll = 0.0;   // N m
    double pitch = 0.0;  // N m
    double yaw = 0.0;    // N m
    double q_eta_s = 0.0;  // generalized forces
    double q_eta_a = 0.0;
};

// Output selector y = C x = first eight states.
Mat8x12 output_selector();

}  // namespace hapd
