#include <doctest.h>

#include "hapd/atmosphere.hpp"
#include "hapd/discretize.hpp"
#include "hapd/errors.hpp"
#include "hapd/grid.hpp"
#include "hapd/linearize.hpp"
#include "hapd/model_io.hpp"
#include "hapd/params_io.hpp"
#include "hapd/pldi.hpp"
#include "hapd/trim.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <fstream>
#include <random>
#include <string>

using namespace hapd;

namespace {

const AircraftModel& reference_model() {
    static const AircraftModel model = load_aircraft_model(
        std::string(HAPD_DATA_DIR) + "/hapd_params", std::string(HAPD_DATA_DIR) + "/hapd_ref_coeffs");
    return model;
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Closed-form level-trim predictor, independent of the Gauss-Newton solver.
// Exploits the affine channel structure: the pitch balance fixes the
// elevator for a given alpha, the lift balance then fixes alpha through a
// short fixed-point pass over the thrust component, and the modal balance
// gives eta_s explicitly.
struct PredictedTrim {
    double alpha = 0.0;
    double elevator = 0.0;
    double thrust = 0.0;
    double eta_s = 0.0;
};

PredictedTrim closed_form_trim(double v_tas, double altitude, const AircraftModel& m) {
    const AircraftParameters& par = m.params;
    const double qs = 0.5 * air_density(altitude) * v_tas * v_tas * par.wing_area;
    const ChannelCoeffs& cl = m.coeffs.chan[kChanLift];
    const ChannelCoeffs& cd = m.coeffs.chan[kChanDrag];
    const ChannelCoeffs& cm = m.coeffs.chan[kChanPitch];
    const ChannelCoeffs& cqs = m.coeffs.chan[kChanQEtaS];

    double sum_cl_d = 0.0, sum_cm_d = 0.0, sum_cq_d = 0.0;
    for (int j = 0; j < 6; ++j) {  // the six elevators move together
        sum_cl_d += cl.delta[j];
        sum_cm_d += cm.delta[j];
        sum_cq_d += cqs.delta[j];
    }

    PredictedTrim t;
    double alpha = 0.0;
    for (int pass = 0; pass < 50; ++pass) {
        // Pitch balance: C_m0 + C_ma a + sum(C_md) de = 0.
        const double de = -(cm.bias + cm.alpha * alpha) / sum_cm_d;
        // Drag balance along the path: T cos a cos 0 = D  (level, no wind).
        const double drag = qs * (cd.bias + cd.alpha * alpha);
        const double thrust = drag / std::cos(alpha);
        // Lift balance: L + T sin a = m g.
        const double cl_req = (par.mass * par.gravity - thrust * std::sin(alpha)) / qs;
        const double next = (cl_req - cl.bias - sum_cl_d * de) / cl.alpha;
        t.elevator = de;
        t.thrust = thrust;
        if (std::abs(next - alpha) < 1e-15) {
            alpha = next;
            break;
        }
        alpha = next;
    }
    t.alpha = alpha;
    const double k_s = m.modes[0].stiffness_constant();
    t.eta_s = qs * (cqs.bias + cqs.alpha * t.alpha + sum_cq_d * t.elevator) / k_s;
    return t;
}

}  // namespace

TEST_CASE("level trim matches the closed-form predictor and frozen values") {
    const AircraftModel& m = reference_model();
    TrimSpec spec;
    spec.v_tas = 20.0;
    spec.altitude = 500.0;
    const TrimResult t = trim(spec, m);

    // Trim invariants of the symmetric level parameterization.
    CHECK(t.x.beta == 0.0);
    CHECK(t.x.p == 0.0);
    CHECK(t.x.q == 0.0);
    CHECK(t.x.r == 0.0);
    CHECK(t.x.phi == 0.0);
    CHECK(t.x.theta == t.x.alpha);
    CHECK(t.x.eta_a == 0.0);
    CHECK(t.x.etadot_s == 0.0);
    CHECK(t.x.v == 20.0);  // no wind: body speed equals the airspeed target
    for (int j = 0; j < 6; ++j) CHECK(t.u.delta[j] == t.u.delta[0]);
    for (int j = 6; j < 12; ++j) CHECK(t.u.delta[j] == 0.0);
    CHECK(t.residual_norm < 1e-8);

    // Independent closed-form route.
    const PredictedTrim p = closed_form_trim(20.0, 500.0, m);
    CHECK(close_rel(t.x.alpha, p.alpha, 1e-9));
    CHECK(close_rel(t.u.delta[0], p.elevator, 1e-9));
    CHECK(close_rel(t.u.thrust, p.thrust, 1e-9));
    CHECK(close_rel(t.x.eta_s, p.eta_s, 1e-9));

    // Frozen regression values.
    CHECK(close_rel(t.x.alpha, 0.027951311124791437, 1e-12));
    CHECK(close_rel(t.u.delta[0], 0.015239283935416896, 1e-12));
    CHECK(close_rel(t.u.thrust, 106.04213925800308, 1e-12));
    CHECK(close_rel(t.x.eta_s, 0.21235762340249964, 1e-12));

    // The residual really is the dynamics: evaluate it directly.
    const Vec12 xdot = state_derivative(t.x, t.u, spec.wind, m, spec.altitude);
    for (int i = 0; i < kNumStates; ++i) CHECK(std::abs(xdot[i]) < 1e-8);
}

TEST_CASE("trim converges over the whole envelope against the predictor") {
    const AircraftModel& m = reference_model();
    for (double v : {17.0, 19.0, 21.0, 23.0}) {
        for (double h : {300.0, 500.0, 700.0}) {
            TrimSpec spec;
            spec.v_tas = v;
            spec.altitude = h;
            const TrimResult t = trim(spec, m);
            CHECK(t.residual_norm < 1e-8);
            CHECK(std::abs(t.u.delta[0]) <= m.params.deflection_limit);
            CHECK(t.u.thrust >= 0.0);
            const PredictedTrim p = closed_form_trim(v, h, m);
            CHECK(close_rel(t.x.alpha, p.alpha, 1e-8));
            CHECK(close_rel(t.u.thrust, p.thrust, 1e-8));
        }
    }
}

TEST_CASE("trim with wind holds the true airspeed, not the inertial speed") {
    const AircraftModel& m = reference_model();
    TrimSpec spec;
    spec.v_tas = 20.0;
    spec.altitude = 500.0;
    spec.wind = WindVector{-3.0, 0.0, 0.5};
    const TrimResult t = trim(spec, m);
    CHECK(t.residual_norm < 1e-8);
    const double v_tas = (t.x.body_velocity() - spec.wind.vec()).norm();
    CHECK(close_rel(v_tas, 20.0, 1e-10));
    CHECK(t.x.v != 20.0);  // body speed absorbs the wind triangle
    CHECK(close_rel(t.x.v, trim_airspeed(t.x.alpha, 20.0, spec.wind), 1e-12));
}

TEST_CASE("fixed-thrust trim reproduces the free trim at the solved thrust") {
    const AircraftModel& m = reference_model();
    TrimSpec spec;
    spec.v_tas = 19.0;
    spec.altitude = 600.0;
    const TrimResult free_trim = trim(spec, m);

    TrimSpec pinned = spec;
    pinned.fixed_thrust = free_trim.u.thrust;
    const TrimResult t = trim(pinned, m);
    CHECK(t.u.thrust == free_trim.u.thrust);
    CHECK(close_rel(t.x.alpha, free_trim.x.alpha, 1e-7));
    CHECK(t.residual_norm < 1e-6);
}

TEST_CASE("unreachable targets raise TrimFailure") {
    const AircraftModel& m = reference_model();
    TrimSpec spec;
    spec.v_tas = 3.0;  // needs a lift coefficient far beyond the surfaces
    spec.altitude = 500.0;
    CHECK_THROWS_AS((void)trim(spec, m), TrimFailure);
}

TEST_CASE("envelope membership") {
    TrimSpec s;
    s.v_tas = 17.0;
    s.altitude = 300.0;
    CHECK(within_envelope(s));
    s.v_tas = 23.0;
    s.altitude = 700.0;
    CHECK(within_envelope(s));
    s.v_tas = 16.9;
    CHECK(!within_envelope(s));
    s.v_tas = 20.0;
    s.altitude = 701.0;
    CHECK(!within_envelope(s));
}

TEST_CASE("central-difference Jacobians match a one-sided oracle") {
    const AircraftModel& m = reference_model();
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uv(kEnvelopeVtasMin, kEnvelopeVtasMax);
    std::uniform_real_distribution<double> uh(kEnvelopeAltMin, kEnvelopeAltMax);

    for (int trial = 0; trial < 3; ++trial) {
        TrimSpec spec;
        spec.v_tas = uv(rng);
        spec.altitude = uh(rng);
        const TrimResult t = trim(spec, m);
        const LinearModel lin = linearize(t, m);

        // One-sided forward differences with one extrapolation level,
        // entirely separate from the library's central-difference code.
        const Vec12 x0 = t.x.vec();
        const Vec13 u0 = t.u.vec();
        auto f = [&](const Vec12& xv, const Vec13& uv_) {
            return state_derivative(FlightState::from_vec(xv), ControlInput::from_vec(uv_),
                                    spec.wind, m, spec.altitude);
        };
        const Vec12 f0 = f(x0, u0);
        auto check_column = [&](const VecX& lib_col, int n_checked, auto eval) {
            for (int i = 0; i < kNumStates; ++i) {
                (void)n_checked;
                const double lib = lib_col[i];
                if (std::abs(lib) <= 1e-6) continue;
                CHECK(close_rel(lib, eval(i), 1e-4));
            }
        };
        for (int j = 0; j < kNumStates; ++j) {
            const double h = std::max(1e-7, 1e-7 * std::abs(x0[j]));
            Vec12 xp = x0, xp2 = x0;
            xp[j] += h;
            xp2[j] += 0.5 * h;
            const Vec12 d1 = (f(xp, u0) - f0) / h;
            const Vec12 d2 = (f(xp2, u0) - f0) / (0.5 * h);
            const Vec12 oracle = 2.0 * d2 - d1;  // one-sided, O(h^2)
            check_column(lin.a.col(j), kNumStates, [&](int i) { return oracle[i]; });
        }
        for (int j = 0; j < kNumInputs; ++j) {
            const double h = std::max(1e-7, 1e-7 * std::abs(u0[j]));
            Vec13 up = u0, up2 = u0;
            up[j] += h;
            up2[j] += 0.5 * h;
            const Vec12 d1 = (f(x0, up) - f0) / h;
            const Vec12 d2 = (f(x0, up2) - f0) / (0.5 * h);
            const Vec12 oracle = 2.0 * d2 - d1;
            check_column(lin.b.col(j), kNumStates, [&](int i) { return oracle[i]; });
        }
    }
}

TEST_CASE("structural Jacobian entries are exact") {
    const AircraftModel& m = reference_model();
    TrimSpec spec;
    spec.v_tas = 21.5;
    spec.altitude = 350.0;
    const TrimResult t = trim(spec, m);
    const LinearModel lin = linearize(t, m);

    CHECK(std::abs(lin.a(ix::Phi, ix::P) - 1.0) < 1e-8);
    CHECK(std::abs(lin.a(ix::Theta, ix::Q) - 1.0) < 1e-8);  // phi = 0 at trim
    CHECK(lin.a(ix::EtaS, ix::EtaDotS) == 1.0);
    CHECK(lin.a(ix::EtaA, ix::EtaDotA) == 1.0);

    // Rigid rows carry no modal columns in this airframe: snapped to hard zero.
    for (int i = 0; i < 8; ++i)
        for (int j = 8; j < 12; ++j) CHECK(lin.a(i, j) == 0.0);

    // Thrust enters the force rows only.
    CHECK(lin.b(ix::V, 12) != 0.0);
    CHECK(lin.b(ix::Phi, 12) == 0.0);
    CHECK(lin.b(ix::Q, 12) == 0.0);  // thrust line through the reference point
}

TEST_CASE("linearize rejects an unconverged trim") {
    const AircraftModel& m = reference_model();
    TrimSpec spec;
    spec.v_tas = 20.0;
    spec.altitude = 500.0;
    TrimResult t = trim(spec, m);
    t.residual_norm = 1.0;  // as if the solver had stopped early
    CHECK_THROWS_AS((void)linearize(t, m), std::invalid_argument);
}

TEST_CASE("matrix exponential matches an external implementation") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        MatX a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
        a *= 2.0 / std::sqrt(static_cast<double>(n));
        const MatX ours = expm(a);
        const MatX ref = a.exp();  // Eigen's Pade implementation
        CHECK((ours - ref).norm() <= 1e-12 * std::max(1.0, ref.norm()));
    }

    // Scalar pin.
    MatX s(1, 1);
    s(0, 0) = -0.02;
    CHECK(close_rel(expm(s)(0, 0), 0.9801986733067553, 1e-15));

    // Nilpotent block integrates exactly.
    MatX nil = MatX::Zero(2, 2);
    nil(0, 1) = 1.0;
    const MatX en = expm(nil);
    CHECK(en(0, 0) == 1.0);
    CHECK(en(0, 1) == 1.0);
    CHECK(en(1, 0) == 0.0);
    CHECK(en(1, 1) == 1.0);

    // Semigroup property on an aircraft A matrix.
    const AircraftModel& m = reference_model();
    TrimSpec spec;
    const TrimResult t = trim(spec, m);
    const LinearModel lin = linearize(t, m);
    const MatX e_full = expm(lin.a * 0.02);
    const MatX e_split = expm(lin.a * 0.013) * expm(lin.a * 0.007);
    CHECK((e_full - e_split).norm() <= 1e-10 * std::max(1.0, e_full.norm()));
}

TEST_CASE("zero-order hold matches the integrated linear response") {
    const AircraftModel& m = reference_model();
    TrimSpec spec;
    spec.v_tas = 18.0;
    spec.altitude = 650.0;
    const TrimResult t = trim(spec, m);
    const LinearModel lin = linearize(t, m);
    const DiscreteModel d = discretize(lin, 0.02);
    CHECK(d.ts == 0.02);

    // Independent route: integrate dx' = A dx + B du with RK4 on a fine grid.
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec12 dx;
    Vec13 du;
    for (int i = 0; i < 12; ++i) dx[i] = 0.01 * gauss(rng);
    for (int i = 0; i < 13; ++i) du[i] = 0.01 * gauss(rng);

    Vec12 y = dx;
    const int n_sub = 2000;
    const double h = 0.02 / n_sub;
    for (int k = 0; k < n_sub; ++k) {
        const Vec12 k1 = lin.a * y + lin.b * du;
        const Vec12 k2 = lin.a * (y + 0.5 * h * k1) + lin.b * du;
        const Vec12 k3 = lin.a * (y + 0.5 * h * k2) + lin.b * du;
        const Vec12 k4 = lin.a * (y + h * k3) + lin.b * du;
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const Vec12 zoh = d.phi * dx + d.g * du;
    CHECK((zoh - y).lpNorm<Eigen::Infinity>() < 1e-12);

    // Degenerate hold: A = 0 gives the identity map and G = Ts B.
    LinearModel zero = lin;
    zero.a.setZero();
    const DiscreteModel dz = discretize(zero, 0.02);
    CHECK(dz.phi == Mat12(Mat12::Identity()));
    CHECK((dz.g - 0.02 * zero.b).norm() == 0.0);
}

TEST_CASE("envelope grid layout, endpoints and fingerprint") {
    const EnvelopeGrid g = default_grid();
    REQUIRE(g.speeds.size() == 6);
    REQUIRE(g.altitudes.size() == 5);
    const std::vector<double> want_v{17.0, 18.2, 19.4, 20.6, 21.8, 23.0};
    const std::vector<double> want_h{300.0, 400.0, 500.0, 600.0, 700.0};
    for (int i = 0; i < 6; ++i) CHECK(close_rel(g.speeds[i], want_v[i], 1e-12));
    for (int i = 0; i < 5; ++i) CHECK(close_rel(g.altitudes[i], want_h[i], 1e-12));
    CHECK(g.size() == 30);

    // Row-major: speed-major, altitude-minor.
    CHECK(g.point(0).v_tas == g.speeds[0]);
    CHECK(g.point(0).altitude == g.altitudes[0]);
    CHECK(g.point(4).v_tas == g.speeds[0]);
    CHECK(g.point(4).altitude == g.altitudes[4]);
    CHECK(g.point(5).v_tas == g.speeds[1]);
    CHECK(g.point(5).altitude == g.altitudes[0]);
    CHECK(g.point(29).v_tas == g.speeds[5]);
    CHECK(g.point(29).altitude == g.altitudes[4]);

    // Fingerprint: stable for equal grids, sensitive to any change.
    CHECK(g.hash() == default_grid().hash());
    CHECK(g.hash() == "10ec52dbe205bf1d");  // frozen
    const EnvelopeGrid other = build_grid(17.0, 23.0, 6, 300.0, 700.1, 5);
    CHECK(g.hash() != other.hash());

    CHECK_THROWS_AS((void)build_grid(17.0, 23.0, 1, 300.0, 700.0, 5), std::invalid_argument);
    CHECK_THROWS_AS((void)build_grid(23.0, 17.0, 6, 300.0, 700.0, 5), std::invalid_argument);
}

TEST_CASE("vertex family construction stores consistent trims and models") {
    const AircraftModel& m = reference_model();
    const EnvelopeGrid g = build_grid(19.0, 21.0, 2, 400.0, 600.0, 2);
    const PldiModel pldi = build_pldi(g, m, 0.02);
    REQUIRE(pldi.vertices.size() == 4);
    CHECK(pldi.ts == 0.02);
    CHECK(pldi.grid.hash() == g.hash());
    for (int i = 0; i < 4; ++i) {
        const PldiVertex& v = pldi.vertices[i];
        CHECK(v.trim.v_tas == g.point(i).v_tas);
        CHECK(v.trim.altitude == g.point(i).altitude);
        CHECK(v.trim.residual_norm < 1e-8);
        CHECK(v.disc.ts == 0.02);
        // Phi deviates from identity by roughly A*Ts.
        CHECK((v.disc.phi - Mat12::Identity()).norm() > 0.01);
        CHECK((v.disc.phi - Mat12::Identity() - 0.02 * v.lin.a).norm() <
              0.5 * (0.02 * v.lin.a).norm());
    }
}

TEST_CASE("vertex archives round-trip and reject truncation") {
    const AircraftModel& m = reference_model();
    const EnvelopeGrid g = build_grid(19.0, 21.0, 2, 450.0, 550.0, 2);
    const PldiModel pldi = build_pldi(g, m, 0.02);

    const std::string path = "/tmp/hapd_vertex_rt.txt";
    save_vertex(path, pldi.vertices[1], pldi.ts);
    double ts = 0.0;
    const PldiVertex back = load_vertex(path, &ts);
    CHECK(ts == 0.02);
    CHECK((back.disc.phi - pldi.vertices[1].disc.phi).norm() == 0.0);
    CHECK((back.disc.g - pldi.vertices[1].disc.g).norm() == 0.0);
    CHECK(back.trim.v_tas == pldi.vertices[1].trim.v_tas);
    CHECK(back.trim.x.alpha == pldi.vertices[1].trim.x.alpha);

    // Truncated archive is a parse error, not silent garbage.
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::ofstream out("/tmp/hapd_vertex_cut.txt");
    out << text.substr(0, text.size() / 2);
    out.close();
    CHECK_THROWS_AS((void)load_vertex("/tmp/hapd_vertex_cut.txt"), ParseError);
}
