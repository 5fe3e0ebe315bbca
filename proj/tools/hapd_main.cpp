// hapd: flexible-aircraft model toolkit.
//
// Pipeline: trim a flight condition, linearize and discretize about it, sweep
// the envelope grid into a polytopic family, fit the norm-bounded uncertain
// model, certify coverage, and simulate (nonlinear or uncertain-linear).
//
// Exit codes: 0 success, 1 usage/config error, 2 numerical failure
// (trim/fit/coverage), 3 simulation singularity.

#include "hapd/compare.hpp"
#include "hapd/errors.hpp"
#include "hapd/matrix_io.hpp"
#include "hapd/model_io.hpp"
#include "hapd/nldi.hpp"
#include "hapd/params_io.hpp"
#include "hapd/run_config.hpp"
#include "hapd/scenario.hpp"
#include "hapd/sim_ldi.hpp"
#include "hapd/sim_nonlinear.hpp"
#include "hapd/trajectory.hpp"
#include "hapd/trim.hpp"

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace hapd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitSingularity = 3;

struct Options {
    std::string config = "data/hapd.cfg";
    std::string out;       // file or directory, command-specific
    double vtas = 20.0;
    double alt = 500.0;
    std::string grid;      // "NxM" override
    double ts = 0.0;       // 0 = config value
    long long seed = -1;   // -1 = config value
    std::string scenario;  // positional path
};

void warn_if_outside_envelope(const TrimSpec& spec) {
    if (!within_envelope(spec))
        std::cerr << "warning: V_TAS=" << spec.v_tas << " m/s, h=" << spec.altitude
                  << " m lies outside the design envelope [" << kEnvelopeVtasMin << ","
                  << kEnvelopeVtasMax << "] m/s x [" << kEnvelopeAltMin << ","
                  << kEnvelopeAltMax << "] m; attempting anyway\n";
}

void write_atomic(const std::string& path, const std::string& content) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + tmp);
        f << content;
    }
    fs::rename(tmp, path);
}

std::string condition_tag(double vtas, double alt) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "v%g_h%g", vtas, alt);
    return buf;
}

EnvelopeGrid grid_from(const RunConfig& cfg, const std::string& grid_flag) {
    int nv = cfg.vtas_count;
    int nh = cfg.alt_count;
    if (!grid_flag.empty()) {
        if (std::sscanf(grid_flag.c_str(), "%dx%d", &nv, &nh) != 2)
            throw std::invalid_argument("--grid expects the form NxM, e.g. 6x5");
    }
    return build_grid(cfg.vtas_min, cfg.vtas_max, nv, cfg.alt_min, cfg.alt_max, nh);
}

void print_trim_summary(const TrimResult& tr) {
    std::printf("trim at V_TAS = %g m/s, h = %g m\n", tr.v_tas, tr.altitude);
    std::printf("  residual       %.3e\n", tr.residual_norm);
    std::printf("  iterations     %d\n", tr.iterations);
    std::printf("  alpha          %.4f deg\n", tr.x.alpha * kDegPerRad);
    std::printf("  theta          %.4f deg\n", tr.x.theta * kDegPerRad);
    std::printf("  elevator       %.4f deg\n", tr.u.delta[kElevIbDx] * kDegPerRad);
    std::printf("  thrust         %.2f N\n", tr.u.thrust);
    std::printf("  eta_s          %.5f\n", tr.x.eta_s);
    std::printf("  body speed V   %.4f m/s\n", tr.x.v);
}

int cmd_trim(const Options& opt) {
    const RunConfig cfg = load_run_config(opt.config);
    const AircraftModel model = load_aircraft_model(cfg.params_path, cfg.coeffs_path);
    TrimSpec spec;
    spec.v_tas = opt.vtas;
    spec.altitude = opt.alt;
    warn_if_outside_envelope(spec);

    const TrimResult tr = trim(spec, model);
    print_trim_summary(tr);

    std::ostringstream out;
    out << "# trim point\n";
    write_kv_section_header(out, "CONDITION");
    out << "vtas = " << format_double(tr.v_tas) << "\n";
    out << "alt = " << format_double(tr.altitude) << "\n";
    out << "residual = " << format_double(tr.residual_norm) << "\n";
    out << "iterations = " << tr.iterations << "\n";
    write_matrix_section(out, "XTRIM", tr.x.vec().transpose());
    write_matrix_section(out, "UTRIM", tr.u.vec().transpose());

    const std::string path = opt.out.empty()
        ? (fs::path(cfg.out_dir) / ("trim_" + condition_tag(opt.vtas, opt.alt) + ".txt")).string()
        : opt.out;
    write_atomic(path, out.str());
    std::printf("wrote %s\n", path.c_str());
    return kExitOk;
}

int cmd_linearize(const Options& opt) {
    const RunConfig cfg = load_run_config(opt.config);
    const AircraftModel model = load_aircraft_model(cfg.params_path, cfg.coeffs_path);
    TrimSpec spec;
    spec.v_tas = opt.vtas;
    spec.altitude = opt.alt;
    warn_if_outside_envelope(spec);
    const double ts = opt.ts > 0.0 ? opt.ts : cfg.ts;

    PldiVertex v;
    v.trim = trim(spec, model);
    v.lin = linearize(v.trim, model);
    v.disc = discretize(v.lin, ts);

    print_trim_summary(v.trim);
    const Eigen::EigenSolver<Mat12> eig(v.lin.a);
    double abscissa = -1e300;
    for (int i = 0; i < kNumStates; ++i)
        abscissa = std::max(abscissa, eig.eigenvalues()[i].real());
    std::printf("  spectral abscissa of A: %.5f 1/s\n", abscissa);
    std::printf("  Ts = %g s\n", ts);

    const std::string path = opt.out.empty()
        ? (fs::path(cfg.out_dir) / ("model_" + condition_tag(opt.vtas, opt.alt) + ".txt")).string()
        : opt.out;
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    save_vertex(path, v, ts);
    std::printf("wrote %s\n", path.c_str());
    return kExitOk;
}

int cmd_synth(const Options& opt) {
    const RunConfig cfg = load_run_config(opt.config);
    const AircraftModel model = load_aircraft_model(cfg.params_path, cfg.coeffs_path);
    const EnvelopeGrid grid = grid_from(cfg, opt.grid);
    const double ts = opt.ts > 0.0 ? opt.ts : cfg.ts;
    const std::string dir = opt.out.empty() ? cfg.out_dir : opt.out;

    std::printf("sweeping %zu x %zu grid, Ts = %g s\n", grid.speeds.size(),
                grid.altitudes.size(), ts);
    const PldiModel pldi = build_pldi(grid, model, ts);
    save_pldi(dir, pldi);
    std::printf("wrote %d vertex models under %s\n", grid.size(), dir.c_str());

    const NldiModel nldi = fit_nldi(pldi);
    export_nldi((fs::path(dir) / "nldi.txt").string(), nldi);
    std::printf("fitted uncertainty channel rank r = %d\n", nldi.rank());

    const CoverageReport report = verify_coverage(nldi, pldi);
    const std::string text = format_coverage_report(report, &pldi);
    write_atomic((fs::path(dir) / "coverage.txt").string(), text);
    std::fputs(text.c_str(), stdout);
    return report.pass ? kExitOk : kExitNumerical;
}

int cmd_verify(const Options& opt) {
    const RunConfig cfg = load_run_config(opt.config);
    const std::string dir = opt.out.empty() ? cfg.out_dir : opt.out;

    const PldiModel pldi = load_pldi((fs::path(dir) / "manifest.txt").string());
    const NldiModel nldi = import_nldi((fs::path(dir) / "nldi.txt").string());
    if (!nldi.grid_hash.empty() && nldi.grid_hash != pldi.grid.hash())
        std::cerr << "warning: NLDI grid fingerprint does not match the vertex family\n";
    if (std::abs(nldi.ts - pldi.ts) > 1e-12)
        std::cerr << "warning: NLDI Ts differs from the vertex family Ts\n";

    const CoverageReport report = verify_coverage(nldi, pldi);
    std::fputs(format_coverage_report(report, &pldi).c_str(), stdout);
    return report.pass ? kExitOk : kExitNumerical;
}

// Shared by simulate/compare: anchor trim + resolved nonlinear scenario.
struct ResolvedScenario {
    ScenarioSpec spec;
    TrimResult anchor;
    SimScenario sim;
    fs::path dir;  // scenario file directory, for [ldi] path resolution
};

ResolvedScenario resolve_scenario(const std::string& path, const RunConfig& cfg,
                                  const AircraftModel& model) {
    ResolvedScenario r;
    r.spec = load_scenario(path);
    r.dir = fs::path(path).parent_path();

    TrimSpec tspec;
    tspec.v_tas = r.spec.anchor_vtas;
    tspec.altitude = r.spec.anchor_alt;
    tspec.wind = r.spec.wind;
    warn_if_outside_envelope(tspec);
    r.anchor = trim(tspec, model);

    r.sim.initial = FlightState::from_vec(r.anchor.x.vec() + r.spec.dx0);
    r.sim.base = r.anchor.u;
    r.sim.schedule = r.spec.schedule;
    r.sim.wind = r.spec.wind;
    r.sim.altitude = r.spec.anchor_alt;
    r.sim.duration = r.spec.duration;
    r.sim.step = r.spec.step > 0.0 ? r.spec.step : cfg.sim_step;
    return r;
}

std::string resolve_near(const fs::path& dir, const std::string& p) {
    fs::path f(p);
    return f.is_absolute() ? f.string() : (dir / f).string();
}

// Policy plus the PLDI needed by vertex replay.
struct PolicyBundle {
    DeltaPolicy policy;
    std::optional<PldiModel> pldi;
};

PolicyBundle resolve_policy(const ResolvedScenario& rs, uint64_t seed) {
    PolicyBundle b;
    const std::string& d = rs.spec.ldi_delta;
    if (d == "zero") {
        b.policy = DeltaPolicy::zero();
    } else if (d == "random") {
        b.policy = DeltaPolicy::random_contraction(seed);
    } else if (d.rfind("vertex:", 0) == 0) {
        const int index = std::stoi(d.substr(7));
        if (rs.spec.ldi_models.empty())
            throw std::invalid_argument(
                "delta = vertex:<i> needs the [ldi] models = <manifest> entry");
        b.pldi = load_pldi(resolve_near(rs.dir, rs.spec.ldi_models));
        b.policy = DeltaPolicy::vertex_replay(index);
    } else if (d == "constant") {
        if (rs.spec.ldi_delta_file.empty())
            throw std::invalid_argument(
                "delta = constant needs the [ldi] delta_file = <file> entry");
        const SectionedFile f = SectionedFile::load(resolve_near(rs.dir, rs.spec.ldi_delta_file));
        b.policy = DeltaPolicy::constant_matrix(f.matrix("DELTA"));
    } else {
        throw std::invalid_argument("unknown delta policy '" + d +
                                    "' (expected zero, random, vertex:<i> or constant)");
    }
    return b;
}

int cmd_simulate(const Options& opt) {
    const RunConfig cfg = load_run_config(opt.config);
    const AircraftModel model = load_aircraft_model(cfg.params_path, cfg.coeffs_path);
    const ResolvedScenario rs = resolve_scenario(opt.scenario, cfg, model);
    const uint64_t seed = opt.seed >= 0 ? static_cast<uint64_t>(opt.seed) : cfg.seed;

    if (rs.spec.mode == "nonlinear") {
        const NonlinearTrajectory traj = integrate_nonlinear(rs.sim, model);
        const std::string path = opt.out.empty()
            ? (fs::path(cfg.out_dir) / "trajectory.csv").string()
            : opt.out;
        fs::path p(path);
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        write_nonlinear_csv(path, traj);
        std::printf("nonlinear run: %zu samples at %g s steps\n", traj.samples(), traj.step);
        std::printf("wrote %s\n", path.c_str());
        return kExitOk;
    }

    if (rs.spec.ldi_model.empty())
        throw std::invalid_argument("mode = ldi needs the [ldi] model = <archive> entry");
    const NldiModel nldi = import_nldi(resolve_near(rs.dir, rs.spec.ldi_model));
    const int steps =
        std::max(1, static_cast<int>(std::lround(rs.spec.duration / nldi.ts)));
    const PolicyBundle pb = resolve_policy(rs, seed);

    const LdiTrajectory traj = simulate_discrete_ldi(
        nldi, pb.policy, rs.spec.schedule, steps, rs.spec.dx0,
        pb.pldi ? &*pb.pldi : nullptr);
    const std::string path = opt.out.empty()
        ? (fs::path(cfg.out_dir) / "trajectory_ldi.csv").string()
        : opt.out;
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_ldi_csv(path, traj);

    const L2CheckResult l2 = check_truncated_l2(traj.w, traj.z);
    std::printf("uncertain-linear run: %d steps at Ts = %g s, delta = %s\n", steps, nldi.ts,
                rs.spec.ldi_delta.c_str());
    std::printf("max sigma(Delta) over run: %.6f\n", traj.max_delta_norm);
    std::printf("truncated-l2 contract: %s (min slack %.3e)\n", l2.pass ? "PASS" : "FAIL",
                l2.min_slack);
    std::printf("wrote %s\n", path.c_str());
    return kExitOk;
}

int cmd_compare(const Options& opt) {
    const RunConfig cfg = load_run_config(opt.config);
    const AircraftModel model = load_aircraft_model(cfg.params_path, cfg.coeffs_path);
    const ResolvedScenario rs = resolve_scenario(opt.scenario, cfg, model);
    const uint64_t seed = opt.seed >= 0 ? static_cast<uint64_t>(opt.seed) : cfg.seed;

    const std::string nldi_path = rs.spec.ldi_model.empty()
        ? (fs::path(cfg.out_dir) / "nldi.txt").string()
        : resolve_near(rs.dir, rs.spec.ldi_model);
    const NldiModel nldi = import_nldi(nldi_path);

    const int steps =
        std::max(1, static_cast<int>(std::lround(rs.spec.duration / nldi.ts)));
    SimScenario sim = rs.sim;
    sim.duration = steps * nldi.ts;  // align the horizons exactly

    const NonlinearTrajectory nl = integrate_nonlinear(sim, model);
    const PolicyBundle pb = resolve_policy(rs, seed);
    const LdiTrajectory ldi = simulate_discrete_ldi(nldi, pb.policy, rs.spec.schedule, steps,
                                                    rs.spec.dx0, pb.pldi ? &*pb.pldi : nullptr);

    const ComparisonMetrics metrics = compare_responses(nl, rs.anchor.x, ldi, nldi.c);
    const std::string table = format_comparison(metrics);
    std::fputs(table.c_str(), stdout);

    const std::string dir = opt.out.empty() ? cfg.out_dir : opt.out;
    write_atomic((fs::path(dir) / "compare.txt").string(), table);
    write_comparison_csv((fs::path(dir) / "compare.csv").string(), metrics);
    std::printf("wrote %s and compare.csv\n", (fs::path(dir) / "compare.txt").string().c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "hapd: flexible-aircraft trim / linearization / uncertain-model toolkit.\n"
        "Angles are degrees at this interface and in scenario files; internal\n"
        "computation uses radians."};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool with_condition) {
        sub->add_option("--config", opt.config, "pipeline configuration file")
            ->capture_default_str();
        sub->add_option("--out", opt.out, "output file or directory (command-specific)");
        if (with_condition) {
            sub->add_option("--vtas", opt.vtas, "true airspeed, m/s")->capture_default_str();
            sub->add_option("--alt", opt.alt, "altitude, m")->capture_default_str();
        }
    };

    CLI::App* c_trim = app.add_subcommand("trim", "solve a level-flight trim point");
    add_common(c_trim, true);

    CLI::App* c_lin = app.add_subcommand(
        "linearize", "trim, then linearize and discretize about the trim point");
    add_common(c_lin, true);
    c_lin->add_option("--ts", opt.ts, "sample time, s (default from config)");

    CLI::App* c_synth = app.add_subcommand(
        "synth", "sweep the envelope grid and fit the norm-bounded uncertain model");
    add_common(c_synth, false);
    c_synth->add_option("--grid", opt.grid, "grid override as NxM (speeds x altitudes)");
    c_synth->add_option("--ts", opt.ts, "sample time, s (default from config)");

    CLI::App* c_verify = app.add_subcommand(
        "verify", "re-check the coverage certificate of a synthesized archive");
    add_common(c_verify, false);

    CLI::App* c_sim = app.add_subcommand("simulate", "run a scenario file");
    c_sim->add_option("scenario", opt.scenario, "scenario file")->required();
    add_common(c_sim, false);
    c_sim->add_option("--seed", opt.seed, "seed for the random contraction policy");

    CLI::App* c_cmp = app.add_subcommand(
        "compare", "run a scenario nonlinearly and as the uncertain linear model; report errors");
    c_cmp->add_option("scenario", opt.scenario, "scenario file")->required();
    add_common(c_cmp, false);
    c_cmp->add_option("--seed", opt.seed, "seed for the random contraction policy");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (c_trim->parsed()) return cmd_trim(opt);
        if (c_lin->parsed()) return cmd_linearize(opt);
        if (c_synth->parsed()) return cmd_synth(opt);
        if (c_verify->parsed()) return cmd_verify(opt);
        if (c_sim->parsed()) return cmd_simulate(opt);
        if (c_cmp->parsed()) return cmd_compare(opt);
    } catch (const SimulationAbort& e) {
        std::cerr << "error: simulation aborted: " << e.what() << "\n";
        return kExitSingularity;
    } catch (const TrimFailure& e) {
        std::cerr << "error: trim failed: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const FitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const LinearizationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSingularity;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
