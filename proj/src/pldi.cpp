#include "hapd/pldi.hpp"

#include "hapd/errors.hpp"

#include <stdexcept>
#include <string>

namespace hapd {

PldiModel build_pldi(const EnvelopeGrid& grid, const AircraftModel& model, double ts) {
    if (grid.size() < 2)
        throw std::invalid_argument("build_pldi: need at least 2 vertices, got " +
                                    std::to_string(grid.size()));
    PldiModel pldi;
    pldi.ts = ts;
    pldi.grid = grid;
    pldi.vertices.reserve(grid.size());

    for (int i = 0; i < grid.size(); ++i) {
        const FlightCondition fc = grid.point(i);
        const std::string where = " at V_TAS=" + std::to_string(fc.v_tas) +
                                  " m/s, h=" + std::to_string(fc.altitude) + " m";
        try {
            PldiVertex v;
            v.trim = trim(TrimSpec{fc.v_tas, fc.altitude}, model);
            v.lin = linearize(v.trim, model);
            v.disc = discretize(v.lin, ts);
            pldi.vertices.push_back(std::move(v));
        } catch (const TrimFailure& e) {
            throw TrimFailure(std::string(e.what()) + where, e.final_residual());
        } catch (const LinearizationError& e) {
            throw LinearizationError(std::string(e.what()) + where);
        }
    }
    return pldi;
}

}  // namespace hapd
