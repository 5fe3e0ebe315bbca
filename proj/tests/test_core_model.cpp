#include <doctest.h>

#include "hapd/aero.hpp"
#include "hapd/atmosphere.hpp"
#include "hapd/dynamics.hpp"
#include "hapd/errors.hpp"
#include "hapd/keyvalue.hpp"
#include "hapd/params_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>

using namespace hapd;

namespace {

std::string data_dir() { return HAPD_DATA_DIR; }

const AircraftModel& reference_model() {
    static const AircraftModel model = load_aircraft_model(
        data_dir() + "/hapd_params", data_dir() + "/hapd_ref_coeffs");
    return model;
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Random state away from the V <= 0, |beta| ~ 90 deg, |theta| ~ 90 deg guards.
FlightState random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(-1.0, 1.0);
    FlightState x;
    x.v = 12.0 + 10.0 * std::abs(u01(rng));
    x.alpha = 0.3 * u01(rng);
    x.beta = 0.3 * u01(rng);
    x.p = 1.0 * u01(rng);
    x.q = 1.0 * u01(rng);
    x.r = 1.0 * u01(rng);
    x.phi = 1.2 * u01(rng);
    x.theta = 1.2 * u01(rng);
    x.eta_s = 0.5 * u01(rng);
    x.etadot_s = 2.0 * u01(rng);
    x.eta_a = 0.5 * u01(rng);
    x.etadot_a = 2.0 * u01(rng);
    return x;
}

ControlInput random_input(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(-1.0, 1.0);
    ControlInput u;
    for (double& d : u.delta) d = 25.0 * kRadPerDeg * u01(rng);
    u.thrust = 150.0 * (1.0 + u01(rng));
    return u;
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = "/tmp/" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("air density follows the troposphere profile") {
    // Independent route: the closed-form profile evaluated directly here.
    for (double h : {0.0, 123.4, 300.0, 500.0, 700.0, 5000.0, 11000.0}) {
        const double expected = 1.225 * std::pow(1.0 - 2.25577e-5 * h, 4.2559);
        CHECK(close_rel(air_density(h), expected, 1e-15));
    }
    // Frozen regression pins.
    CHECK(air_density(0.0) == 1.225);
    CHECK(close_rel(air_density(300.0), 1.1901054954504291, 1e-15));
    CHECK(close_rel(air_density(500.0), 1.1672685323646277, 1e-15));
    CHECK(close_rel(air_density(700.0), 1.1447683423528214, 1e-15));
    // Density decreases with altitude.
    CHECK(air_density(700.0) < air_density(300.0));
    CHECK_THROWS_AS((void)air_density(-1.0), std::domain_error);
    CHECK_THROWS_AS((void)air_density(11000.1), std::domain_error);
}

TEST_CASE("gravity components are a pure rotation of the gravity vector") {
    // Frozen pin at a generic attitude.
    const Vec3 g = gravity_components(0.1, 0.05, 0.2, 0.1, 9.81);
    CHECK(close_rel(g[0], 0.077519773600594338, 1e-14));
    CHECK(close_rel(g[1], 1.9377568399077119, 1e-14));
    CHECK(close_rel(g[2], 9.6164020877920766, 1e-14));

    // Wings-level zero-incidence: gravity is all in the third component.
    const Vec3 g0 = gravity_components(0.0, 0.0, 0.0, 0.0, 9.81);
    CHECK(g0[0] == 0.0);
    CHECK(g0[1] == 0.0);
    CHECK(g0[2] == 9.81);

    // Level symmetric flight (theta = alpha): no along-path component.
    for (double a : {-0.2, 0.01, 0.15}) {
        const Vec3 gl = gravity_components(a, 0.0, 0.0, a, 9.81);
        CHECK(std::abs(gl[0]) < 1e-14);
    }

    // Rotations preserve length: |(g1,g2,g3)| = g for arbitrary attitudes.
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> ang(-1.5, 1.5);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 gi =
            gravity_components(ang(rng), ang(rng), ang(rng), ang(rng), 9.81);
        CHECK(close_rel(gi.norm(), 9.81, 1e-12));
    }
}

TEST_CASE("aero forces scale with dynamic pressure at fixed nondimensional rates") {
    const AircraftModel& m = reference_model();
    const double rho = air_density(500.0);
    const double lambda = 1.7;
    std::mt19937_64 rng(202);
    for (int i = 0; i < 1000; ++i) {
        FlightState x = random_state(rng);
        const ControlInput u = random_input(rng);
        const double v_tas = x.v;

        FlightState xs = x;  // scaled point: V and rates by lambda
        xs.v *= lambda;
        xs.p *= lambda;
        xs.q *= lambda;
        xs.r *= lambda;

        const ForcesAndMoments f = aero_forces_moments(x, u, v_tas, rho, m.coeffs, m.params);
        const ForcesAndMoments fs =
            aero_forces_moments(xs, u, lambda * v_tas, rho, m.coeffs, m.params);
        const double l2 = lambda * lambda;
        CHECK(close_rel(fs.lift, l2 * f.lift, 1e-10));
        CHECK(close_rel(fs.drag, l2 * f.drag, 1e-10));
        CHECK(close_rel(fs.side, l2 * f.side, 1e-10));
        CHECK(close_rel(fs.roll, l2 * f.roll, 1e-10));
        CHECK(close_rel(fs.pitch, l2 * f.pitch, 1e-10));
        CHECK(close_rel(fs.yaw, l2 * f.yaw, 1e-10));
        CHECK(close_rel(fs.q_eta_s, l2 * f.q_eta_s, 1e-10));
        CHECK(close_rel(fs.q_eta_a, l2 * f.q_eta_a, 1e-10));
    }
}

namespace {

double chan_value(const ForcesAndMoments& f, int c) {
    switch (c) {
        case 0: return f.lift;
        case 1: return f.drag;
        case 2: return f.side;
        case 3: return f.roll;
        case 4: return f.pitch;
        case 5: return f.yaw;
        case 6: return f.q_eta_s;
        default: return f.q_eta_a;
    }
}

}  // namespace

TEST_CASE("aero forces are affine in the surface deflections") {
    const AircraftModel& m = reference_model();
    const double rho = air_density(400.0);
    std::mt19937_64 rng(303);
    for (int i = 0; i < 200; ++i) {
        const FlightState x = random_state(rng);
        const double v_tas = x.v;
        const ControlInput ua = random_input(rng);
        const ControlInput ub = random_input(rng);
        ControlInput uab, u0;
        for (int j = 0; j < kNumSurfaces; ++j) uab.delta[j] = ua.delta[j] + ub.delta[j];

        const ForcesAndMoments fa = aero_forces_moments(x, ua, v_tas, rho, m.coeffs, m.params);
        const ForcesAndMoments fb = aero_forces_moments(x, ub, v_tas, rho, m.coeffs, m.params);
        const ForcesAndMoments fab = aero_forces_moments(x, uab, v_tas, rho, m.coeffs, m.params);
        const ForcesAndMoments f0 = aero_forces_moments(x, u0, v_tas, rho, m.coeffs, m.params);
        for (int c = 0; c < 8; ++c) {
            // Affine map: f(a) + f(b) = f(a + b) + f(0).
            CHECK(close_rel(chan_value(fa, c) + chan_value(fb, c),
                            chan_value(fab, c) + chan_value(f0, c), 1e-10));
        }

        // Collinearity: doubling the deviation doubles the response.
        ControlInput u2a;
        for (int j = 0; j < kNumSurfaces; ++j) u2a.delta[j] = 2.0 * ua.delta[j];
        const ForcesAndMoments f2a = aero_forces_moments(x, u2a, v_tas, rho, m.coeffs, m.params);
        for (int c = 0; c < 8; ++c) {
            CHECK(close_rel(chan_value(f2a, c) - chan_value(f0, c),
                            2.0 * (chan_value(fa, c) - chan_value(f0, c)), 1e-10));
        }
    }
}

TEST_CASE("aero forces respect lateral mirror symmetry") {
    const AircraftModel& m = reference_model();
    const double rho = air_density(600.0);
    std::mt19937_64 rng(404);
    for (int i = 0; i < 1000; ++i) {
        const FlightState x = random_state(rng);
        const ControlInput u = random_input(rng);

        // Mirror the state: lateral quantities flip sign.
        FlightState xm = x;
        xm.beta = -x.beta;
        xm.p = -x.p;
        xm.r = -x.r;
        xm.phi = -x.phi;
        xm.eta_a = -x.eta_a;
        xm.etadot_a = -x.etadot_a;

        // Mirror the controls: swap left/right pairs, flip the rudders.
        ControlInput um = u;
        for (int pair = 0; pair < 5; ++pair)
            std::swap(um.delta[2 * pair], um.delta[2 * pair + 1]);
        um.delta[10] = -u.delta[10];
        um.delta[11] = -u.delta[11];

        const double v_tas = x.v;
        const ForcesAndMoments f = aero_forces_moments(x, u, v_tas, rho, m.coeffs, m.params);
        const ForcesAndMoments fm = aero_forces_moments(xm, um, v_tas, rho, m.coeffs, m.params);

        // Symmetric channels are invariant, antisymmetric channels flip.
        CHECK(close_rel(fm.lift, f.lift, 1e-10));
        CHECK(close_rel(fm.drag, f.drag, 1e-10));
        CHECK(close_rel(fm.pitch, f.pitch, 1e-10));
        CHECK(close_rel(fm.q_eta_s, f.q_eta_s, 1e-10));
        CHECK(close_rel(fm.side, -f.side, 1e-10));
        CHECK(close_rel(fm.roll, -f.roll, 1e-10));
        CHECK(close_rel(fm.yaw, -f.yaw, 1e-10));
        CHECK(close_rel(fm.q_eta_a, -f.q_eta_a, 1e-10));
    }
}

TEST_CASE("state derivative reconstructs from forces, gravity and kinematics") {
    const AircraftModel& m = reference_model();
    const double altitude = 450.0;
    const double rho = air_density(altitude);
    const WindVector wind{1.5, -0.7, 0.4};
    std::mt19937_64 rng(505);
    for (int i = 0; i < 200; ++i) {
        const FlightState x = random_state(rng);
        const ControlInput u = random_input(rng);
        const Vec12 xdot = state_derivative(x, u, wind, m, altitude);

        const double v_tas = (x.body_velocity() - wind.vec()).norm();
        const ForcesAndMoments f = aero_forces_moments(x, u, v_tas, rho, m.coeffs, m.params);
        const Vec3 g = gravity_components(x.alpha, x.beta, x.phi, x.theta, m.params.gravity);
        const AircraftParameters& par = m.params;
        const double ca = std::cos(x.alpha), sa = std::sin(x.alpha);
        const double cb = std::cos(x.beta), sb = std::sin(x.beta);

        // Translational rows written independently in force-balance form.
        const double vdot = (u.thrust * ca * cb - f.drag) / par.mass + g[0];
        const double bdot =
            (-u.thrust * ca * sb + f.side + par.mass * g[1]) / (par.mass * x.v) - x.r;
        const double adot = (-u.thrust * sa - f.lift + par.mass * x.v * x.q +
                             par.mass * g[2]) / (par.mass * x.v * cb);
        CHECK(close_rel(xdot[ix::V], vdot, 1e-12));
        CHECK(close_rel(xdot[ix::Beta], bdot, 1e-12));
        CHECK(close_rel(xdot[ix::Alpha], adot, 1e-12));

        // Attitude kinematics.
        CHECK(close_rel(xdot[ix::Phi],
                        x.p + std::tan(x.theta) * (x.q * std::sin(x.phi) + x.r * std::cos(x.phi)),
                        1e-12));
        CHECK(close_rel(xdot[ix::Theta], x.q * std::cos(x.phi) - x.r * std::sin(x.phi), 1e-12));

        // Modal coordinates integrate their rates; accelerations balance the
        // generalized force against structural damping and stiffness.
        CHECK(xdot[ix::EtaS] == x.etadot_s);
        CHECK(xdot[ix::EtaA] == x.etadot_a);
        const ElasticModeParams& ms = m.modes[0];
        const ElasticModeParams& ma = m.modes[1];
        CHECK(close_rel(ms.generalized_mass * xdot[ix::EtaDotS] +
                            ms.damping_constant() * x.etadot_s +
                            ms.stiffness_constant() * x.eta_s,
                        f.q_eta_s, 1e-10));
        CHECK(close_rel(ma.generalized_mass * xdot[ix::EtaDotA] +
                            ma.damping_constant() * x.etadot_a +
                            ma.stiffness_constant() * x.eta_a,
                        f.q_eta_a, 1e-10));
    }
}

TEST_CASE("rotational accelerations invert the inertia tensor consistently") {
    const AircraftModel& m = reference_model();
    const double altitude = 350.0;
    const WindVector wind{};
    const AircraftParameters& par = m.params;
    std::mt19937_64 rng(606);
    for (int i = 0; i < 1000; ++i) {
        const FlightState x = random_state(rng);
        const ControlInput u = random_input(rng);
        const Vec12 xdot = state_derivative(x, u, wind, m, altitude);

        const double v_tas = x.body_velocity().norm();
        const ForcesAndMoments f =
            aero_forces_moments(x, u, v_tas, air_density(altitude), m.coeffs, m.params);

        // Multiply the solved accelerations back through the inertia tensor:
        // the original moment balance must be recovered.
        const double lhs_p = par.ix * xdot[ix::P] - par.ixz * xdot[ix::R];
        const double rhs_p = f.roll + x.q * x.r * (par.iy - par.iz) + x.p * x.q * par.ixz;
        const double lhs_r = par.iz * xdot[ix::R] - par.ixz * xdot[ix::P];
        const double rhs_r = f.yaw + x.p * x.q * (par.ix - par.iy) - x.q * x.r * par.ixz;
        const double lhs_q = par.iy * xdot[ix::Q];
        const double rhs_q =
            f.pitch + x.r * x.p * (par.iz - par.ix) + (x.r * x.r - x.p * x.p) * par.ixz;
        CHECK(close_rel(lhs_p, rhs_p, 1e-10));
        CHECK(close_rel(lhs_r, rhs_r, 1e-10));
        CHECK(close_rel(lhs_q, rhs_q, 1e-10));
    }
}

TEST_CASE("flow singularities are rejected with the failure cause") {
    const AircraftModel& m = reference_model();
    FlightState x;
    x.v = 20.0;
    const ControlInput u;
    const WindVector w;
    CHECK_NOTHROW((void)state_derivative(x, u, w, m, 500.0));

    FlightState bad = x;
    bad.v = 0.0;
    CHECK_THROWS_AS((void)state_derivative(bad, u, w, m, 500.0), SingularityError);
    bad.v = -3.0;
    CHECK_THROWS_AS((void)state_derivative(bad, u, w, m, 500.0), SingularityError);

    bad = x;
    bad.beta = M_PI / 2.0;
    CHECK_THROWS_AS((void)state_derivative(bad, u, w, m, 500.0), SingularityError);

    bad = x;
    bad.theta = M_PI / 2.0;
    CHECK_THROWS_AS((void)state_derivative(bad, u, w, m, 500.0), SingularityError);

    // Just inside the guards is accepted.
    bad = x;
    bad.beta = M_PI / 2.0 - 1e-3;
    CHECK_NOTHROW((void)state_derivative(bad, u, w, m, 500.0));
}

TEST_CASE("elastic-mode stiffness conventions are interchangeable") {
    // The literal convention stores (M, c, k/M); the standard form stores
    // (M, zeta, omega). Matching parameterizations give identical constants.
    ElasticModeParams lit;
    lit.generalized_mass = 20.0;
    lit.damping = 8.0;
    lit.natural_frequency = 15.0;
    lit.stiffness_convention = StiffnessConvention::kLiteral;

    const double omega = std::sqrt(15.0);
    ElasticModeParams std_form;
    std_form.generalized_mass = 20.0;
    std_form.damping = 8.0 / (2.0 * omega * 20.0);
    std_form.natural_frequency = omega;
    std_form.stiffness_convention = StiffnessConvention::kStandardSecondOrder;

    CHECK(close_rel(lit.damping_constant(), 8.0, 1e-12));
    CHECK(close_rel(lit.stiffness_constant(), 300.0, 1e-12));
    CHECK(close_rel(std_form.damping_constant(), lit.damping_constant(), 1e-12));
    CHECK(close_rel(std_form.stiffness_constant(), lit.stiffness_constant(), 1e-12));
}

TEST_CASE("raw and normalized rate conventions differ by the rate scaling") {
    const AircraftModel& m = reference_model();
    AeroCoefficientTable raw = m.coeffs;
    raw.rate_convention = AeroCoefficientTable::RateConvention::kRaw;

    FlightState x;
    x.v = 21.0;
    x.alpha = 0.05;
    const double v_tas = x.v;
    const double rho = air_density(500.0);
    const double b = m.params.wing_span;

    FlightState xp = x;
    xp.p = 0.8;
    const ControlInput u;
    const double dn = aero_forces_moments(xp, u, v_tas, rho, m.coeffs, m.params).roll -
                      aero_forces_moments(x, u, v_tas, rho, m.coeffs, m.params).roll;
    const double dr = aero_forces_moments(xp, u, v_tas, rho, raw, m.params).roll -
                      aero_forces_moments(x, u, v_tas, rho, raw, m.params).roll;
    // Normalized applies p * b / (2 V_TAS) where raw applies p directly.
    CHECK(close_rel(dn, dr * b / (2.0 * v_tas), 1e-12));
}

TEST_CASE("keyvalue parser reports file, line and unconsumed keys") {
    KeyValueFile kv = KeyValueFile::from_string(
        "# comment\n"
        "[sec]\n"
        "a = 1.5\n"
        "v = 1 2 3\n"
        "name = hello\n",
        "mem.cfg");
    CHECK(kv.get_double("sec.a") == 1.5);
    CHECK(kv.get_vector("sec.v", 3) == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(kv.get_string("sec.name") == "hello");
    CHECK_NOTHROW(kv.finish());

    KeyValueFile missing = KeyValueFile::from_string("[s]\nx = 1\n", "m2.cfg");
    CHECK_THROWS_AS((void)missing.get_double("s.y"), ParseError);

    try {
        KeyValueFile bad = KeyValueFile::from_string("[s]\nx = 1\nbroken-line\n", "m3.cfg");
        (void)bad;
        FAIL("malformed line accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("m3.cfg") != std::string::npos);
    }

    KeyValueFile extra = KeyValueFile::from_string("[s]\nx = 1\nunknown = 2\n", "m4.cfg");
    CHECK(extra.get_double("s.x") == 1.0);
    try {
        extra.finish();
        FAIL("unconsumed key accepted");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unknown") != std::string::npos);
    }

    CHECK_THROWS_AS(KeyValueFile::load("/nonexistent/nothing.cfg"), ParseError);

    // Wrong vector arity is rejected.
    KeyValueFile arity = KeyValueFile::from_string("[s]\nv = 1 2\n", "m5.cfg");
    CHECK_THROWS_AS((void)arity.get_vector("s.v", 3), ParseError);

    // Duplicate keys are rejected at load time.
    CHECK_THROWS_AS(KeyValueFile::from_string("[s]\nx = 1\nx = 2\n", "m6.cfg"), ParseError);
}

TEST_CASE("aircraft files load strictly and reject bad physical values") {
    const AircraftModel& m = reference_model();
    CHECK(m.params.mass == 184.4);
    CHECK(m.params.wing_span == 16.55);
    CHECK(m.params.deflection_limit == 25.0 * kRadPerDeg);
    CHECK(m.coeffs.chan[kChanLift].alpha == 5.7);
    CHECK(m.coeffs.chan[kChanPitch].delta[0] == -0.18);
    CHECK(m.coeffs.chan[kChanPitch].q == -18.0);
    CHECK(m.coeffs.rate_convention == AeroCoefficientTable::RateConvention::kNormalized);
    CHECK(m.modes[0].generalized_mass == 20.0);
    CHECK(m.modes[1].natural_frequency == 24.0);

    // A parameter file with a nonpositive mass is rejected.
    std::ifstream in(data_dir() + "/hapd_params");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    REQUIRE(!text.empty());
    const size_t pos = text.find("mass");
    REQUIRE(pos != std::string::npos);
    std::string broken = text;
    broken.replace(pos, text.find('\n', pos) - pos, "mass = -5");
    const std::string bad_path = write_temp("hapd_bad_params", broken);
    CHECK_THROWS_AS((void)load_model_params(bad_path), std::exception);
}
