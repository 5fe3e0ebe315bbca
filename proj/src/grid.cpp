#include "hapd/grid.hpp"

#include "hapd/matrix_io.hpp"
#include "hapd/trim.hpp"

#include <cstdio>
#include <stdexcept>

namespace hapd {

FlightCondition EnvelopeGrid::point(int i) const {
    const int na = static_cast<int>(altitudes.size());
    return {speeds[i / na], altitudes[i % na]};
}

std::string EnvelopeGrid::hash() const {
    // FNV-1a over the canonical full-precision grid description.
    std::string text = "speeds:";
    for (double v : speeds) text += format_double(v) + ",";
    text += ";altitudes:";
    for (double a : altitudes) text += format_double(a) + ",";

    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

EnvelopeGrid build_grid(double v_min, double v_max, int n_speeds, double alt_min,
                        double alt_max, int n_altitudes) {
    if (n_speeds < 2 || n_altitudes < 2)
        throw std::invalid_argument("build_grid: need at least 2 points per axis");
    if (!(v_min < v_max) || !(alt_min < alt_max))
        throw std::invalid_argument("build_grid: degenerate axis bounds");

    EnvelopeGrid g;
    for (int i = 0; i < n_speeds; ++i)
        g.speeds.push_back(v_min + (v_max - v_min) * i / (n_speeds - 1));
    for (int i = 0; i < n_altitudes; ++i)
        g.altitudes.push_back(alt_min + (alt_max - alt_min) * i / (n_altitudes - 1));
    return g;
}

EnvelopeGrid default_grid() {
    return build_grid(kEnvelopeVtasMin, kEnvelopeVtasMax, 6, kEnvelopeAltMin, kEnvelopeAltMax,
                      5);
}

}  // namespace hapd
