#include "hapd/model_io.hpp"

#include "hapd/errors.hpp"
#include "hapd/keyvalue.hpp"
#include "hapd/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hapd {

namespace fs = std::filesystem;

namespace {
MatX row_vector(const VecX& v) { return v.transpose(); }

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    fs::rename(tmp, path);
}
}  // namespace

std::string vertex_filename(int index, const FlightCondition& fc) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "vertex_%03d_v%g_h%g.txt", index, fc.v_tas, fc.altitude);
    return buf;
}

void save_vertex(const std::string& path, const PldiVertex& v, double ts) {
    std::ostringstream out;
    out << "# linearized flight model\n";
    write_kv_section_header(out, "CONDITION");
    out << "vtas = " << format_double(v.trim.v_tas) << "\n";
    out << "alt = " << format_double(v.trim.altitude) << "\n";
    out << "ts = " << format_double(ts) << "\n";
    out << "residual = " << format_double(v.trim.residual_norm) << "\n";
    write_matrix_section(out, "XTRIM", row_vector(v.trim.x.vec()));
    write_matrix_section(out, "UTRIM", row_vector(v.trim.u.vec()));
    write_matrix_section(out, "A", v.lin.a);
    write_matrix_section(out, "B", v.lin.b);
    write_matrix_section(out, "PHI", v.disc.phi);
    write_matrix_section(out, "G", v.disc.g);
    write_atomic(path, out.str());
}

PldiVertex load_vertex(const std::string& path, double* ts_out) {
    const SectionedFile f = SectionedFile::load(path);

    auto sized = [&](const char* name, int rows, int cols) -> const MatX& {
        const MatX& m = f.matrix(name);
        if (m.rows() != rows || m.cols() != cols)
            throw ParseError(path, 0,
                             std::string("section [") + name + "] must be " +
                                 std::to_string(rows) + "x" + std::to_string(cols));
        return m;
    };

    PldiVertex v;
    v.trim.v_tas = f.value_double("CONDITION", "vtas");
    v.trim.altitude = f.value_double("CONDITION", "alt");
    v.trim.residual_norm = f.value_double("CONDITION", "residual");
    const double ts = f.value_double("CONDITION", "ts");
    if (ts_out) *ts_out = ts;

    v.trim.x = FlightState::from_vec(sized("XTRIM", 1, kNumStates).row(0).transpose());
    v.trim.u = ControlInput::from_vec(sized("UTRIM", 1, kNumInputs).row(0).transpose());
    v.lin.a = sized("A", kNumStates, kNumStates);
    v.lin.b = sized("B", kNumStates, kNumInputs);
    v.lin.x_trim = v.trim.x;
    v.lin.u_trim = v.trim.u;
    v.lin.v_tas = v.trim.v_tas;
    v.lin.altitude = v.trim.altitude;
    v.disc.phi = sized("PHI", kNumStates, kNumStates);
    v.disc.g = sized("G", kNumStates, kNumInputs);
    v.disc.ts = ts;
    return v;
}

void save_pldi(const std::string& dir, const PldiModel& pldi) {
    fs::create_directories(dir);
    std::ostringstream manifest;
    manifest << "# linear model archive manifest\n";
    manifest << "ts = " << format_double(pldi.ts) << "\n";
    manifest << "speeds =";
    for (double s : pldi.grid.speeds) manifest << " " << format_double(s);
    manifest << "\n";
    manifest << "altitudes =";
    for (double a : pldi.grid.altitudes) manifest << " " << format_double(a);
    manifest << "\n";
    manifest << "count = " << pldi.vertices.size() << "\n";
    for (size_t i = 0; i < pldi.vertices.size(); ++i) {
        const std::string name =
            vertex_filename(static_cast<int>(i), pldi.grid.point(static_cast<int>(i)));
        save_vertex((fs::path(dir) / name).string(), pldi.vertices[i], pldi.ts);
        manifest << "vertex[" << i << "] = " << name << "\n";
    }
    write_atomic((fs::path(dir) / "manifest.txt").string(), manifest.str());
}

PldiModel load_pldi(const std::string& manifest_path) {
    KeyValueFile f = KeyValueFile::load(manifest_path);
    PldiModel pldi;
    pldi.ts = f.get_double("ts");
    pldi.grid.speeds = f.get_vector("speeds");
    pldi.grid.altitudes = f.get_vector("altitudes");
    const int count = f.get_int("count");
    if (count != pldi.grid.size())
        throw ParseError(manifest_path, f.line_of("count"),
                         "count does not match speeds x altitudes");
    const fs::path dir = fs::path(manifest_path).parent_path();
    for (int i = 0; i < count; ++i) {
        const std::string name = f.get_string("vertex[" + std::to_string(i) + "]");
        double ts = 0.0;
        PldiVertex v = load_vertex((dir / name).string(), &ts);
        if (std::abs(ts - pldi.ts) > 1e-12)
            throw ParseError(manifest_path, 0, "vertex " + name + " has mismatched Ts");
        pldi.vertices.push_back(std::move(v));
    }
    f.finish();
    return pldi;
}

}  // namespace hapd
