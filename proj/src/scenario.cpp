#include "hapd/scenario.hpp"

#include "hapd/keyvalue.hpp"

#include <cmath>
#include <stdexcept>

namespace hapd {

void ControlSchedule::validate() const {
    double last = -1.0;
    for (const ControlSegment& seg : segments) {
        if (!(seg.t >= 0.0) || !std::isfinite(seg.t))
            throw std::invalid_argument("schedule times must be finite and >= 0");
        if (seg.t <= last) throw std::invalid_argument("schedule times must be strictly increasing");
        if (!seg.ddelta.allFinite() || !std::isfinite(seg.dthrust))
            throw std::invalid_argument("schedule commands must be finite");
        last = seg.t;
    }
}

Vec13 ControlSchedule::deviation_at(double t) const {
    Vec13 dev = Vec13::Zero();
    for (const ControlSegment& seg : segments) {
        if (seg.t > t) break;
        dev.head<kNumSurfaces>() = seg.ddelta;
        dev[kNumSurfaces] = seg.dthrust;
    }
    return dev;
}

void SimScenario::validate() const {
    if (!(duration > 0.0)) throw std::invalid_argument("scenario duration must be > 0");
    if (!(step > 0.0) || step > 0.05)
        throw std::invalid_argument("integrator step must lie in (0, 0.05] s");
    schedule.validate();
}

ScenarioSpec load_scenario(const std::string& path) {
    KeyValueFile kv = KeyValueFile::load(path);
    ScenarioSpec spec;

    spec.mode = kv.get_string_or("scenario.mode", "nonlinear");
    if (spec.mode != "nonlinear" && spec.mode != "ldi")
        throw ParseError(path, kv.line_of("scenario.mode"),
                         "scenario.mode must be 'nonlinear' or 'ldi'");
    spec.duration = kv.get_double("scenario.duration");
    spec.step = kv.get_double_or("scenario.step", 0.0);

    spec.anchor_vtas = kv.get_double("anchor.vtas");
    spec.anchor_alt = kv.get_double("anchor.alt");

    spec.dx0[ix::V] = kv.get_double_or("initial.dv", 0.0);
    spec.dx0[ix::Alpha] = kv.get_double_or("initial.dalpha", 0.0) * kRadPerDeg;
    spec.dx0[ix::Beta] = kv.get_double_or("initial.dbeta", 0.0) * kRadPerDeg;
    spec.dx0[ix::P] = kv.get_double_or("initial.dp", 0.0) * kRadPerDeg;
    spec.dx0[ix::Q] = kv.get_double_or("initial.dq", 0.0) * kRadPerDeg;
    spec.dx0[ix::R] = kv.get_double_or("initial.dr", 0.0) * kRadPerDeg;
    spec.dx0[ix::Phi] = kv.get_double_or("initial.dphi", 0.0) * kRadPerDeg;
    spec.dx0[ix::Theta] = kv.get_double_or("initial.dtheta", 0.0) * kRadPerDeg;
    spec.dx0[ix::EtaS] = kv.get_double_or("initial.deta_s", 0.0);
    spec.dx0[ix::EtaDotS] = kv.get_double_or("initial.detadot_s", 0.0);
    spec.dx0[ix::EtaA] = kv.get_double_or("initial.deta_a", 0.0);
    spec.dx0[ix::EtaDotA] = kv.get_double_or("initial.detadot_a", 0.0);

    spec.wind.u = kv.get_double_or("wind.u", 0.0);
    spec.wind.v = kv.get_double_or("wind.v", 0.0);
    spec.wind.w = kv.get_double_or("wind.w", 0.0);

    const int n_segments = kv.get_int_or("inputs.segments", 0);
    if (n_segments < 0)
        throw ParseError(path, kv.line_of("inputs.segments"), "inputs.segments must be >= 0");
    for (int i = 0; i < n_segments; ++i) {
        const std::string base = "inputs.seg" + std::to_string(i) + ".";
        ControlSegment seg;
        seg.t = kv.get_double(base + "t");
        if (kv.has(base + "delta")) {
            const std::vector<double> d = kv.get_vector(base + "delta", kNumSurfaces);
            for (int j = 0; j < kNumSurfaces; ++j) seg.ddelta[j] = d[j] * kRadPerDeg;
        }
        seg.dthrust = kv.get_double_or(base + "thrust", 0.0);
        spec.schedule.segments.push_back(seg);
    }

    spec.ldi_model = kv.get_string_or("ldi.model", "");
    spec.ldi_models = kv.get_string_or("ldi.models", "");
    spec.ldi_delta = kv.get_string_or("ldi.delta", "zero");
    spec.ldi_delta_file = kv.get_string_or("ldi.delta_file", "");

    kv.finish();

    try {
        spec.schedule.validate();
        SimScenario probe;
        probe.duration = spec.duration;
        probe.step = spec.step > 0.0 ? spec.step : 0.005;
        probe.validate();
        if (spec.step < 0.0) throw std::invalid_argument("integrator step must be positive");
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, 0, e.what());
    }
    return spec;
}

}  // namespace hapd
