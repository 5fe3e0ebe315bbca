#pragma once

#include "hapd/pldi.hpp"

#include <string>

namespace hapd {

// One-file-per-flight-condition archive of a linearized model:
// sections [CONDITION] (vtas, alt, ts, residual), [XTRIM], [UTRIM],
// [A], [B], [PHI], [G]. Matrices row-major, full-precision decimal.
void save_vertex(const std::string& path, const PldiVertex& v, double ts);
PldiVertex load_vertex(const std::string& path, double* ts_out = nullptr);

// Manifest listing the grid: one "vtas alt filename" line per vertex.
void save_pldi(const std::string& dir, const PldiModel& pldi);
PldiModel load_pldi(const std::string& manifest_path);

std::string vertex_filename(int index, const FlightCondition& fc);

}  // namespace hapd
