#pragma once

#include "hapd/types.hpp"

#include <string>
#include <vector>

namespace hapd {

// One piecewise-constant command segment, expressed as a deviation from the
// anchor (trim) input. Active from time t until the next segment.
struct ControlSegment {
    double t = 0.0;        // activation time, s
    Vec12 ddelta = Vec12::Zero();  // rad
    double dthrust = 0.0;  // N
};

// Piecewise-constant deviation schedule; zero before the first segment.
struct ControlSchedule {
    std::vector<ControlSegment> segments;

    // Throws std::invalid_argument unless times are >= 0 and strictly increasing.
    void validate() const;

    // [ddelta; dthrust] active at time t.
    Vec13 deviation_at(double t) const;
};

// Fully resolved simulation input for the nonlinear integrator.
struct SimScenario {
    FlightState initial;          // absolute initial state
    ControlInput base;            // anchor input; the schedule adds to this
    ControlSchedule schedule;
    WindVector wind;
    double altitude = 500.0;      // m, held fixed over the run
    double duration = 0.0;        // s
    double step = 0.005;          // s, integrator step

    // duration > 0, step in (0, 0.05], schedule valid.
    void validate() const;
};

// Raw scenario file contents (angles already converted to radians). The
// caller resolves the anchor trim and, for LDI runs, loads the referenced
// model archives.
struct ScenarioSpec {
    std::string mode = "nonlinear";  // "nonlinear" | "ldi"
    double duration = 10.0;
    double step = 0.0;  // integrator step; 0 = take the pipeline default

    double anchor_vtas = 20.0;
    double anchor_alt = 500.0;

    Vec12 dx0 = Vec12::Zero();  // initial state deviation from the anchor trim
    WindVector wind;
    ControlSchedule schedule;

    // [ldi] section; paths are resolved relative to the scenario file.
    std::string ldi_model;       // NLDI archive
    std::string ldi_models;      // PLDI manifest (vertex replay only)
    std::string ldi_delta = "zero";  // zero | random | vertex:<i> | constant
    std::string ldi_delta_file;      // [DELTA] matrix file for "constant"
};

// Parses a scenario file. File syntax is the flat key-value format with
// sections [scenario], [anchor], [initial], [wind], [inputs], [ldi]; angles
// and surface deflections are given in degrees. Unknown keys are errors.
ScenarioSpec load_scenario(const std::string& path);

}  // namespace hapd
