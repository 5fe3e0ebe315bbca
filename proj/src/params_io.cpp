#include "hapd/params_io.hpp"

#include "hapd/errors.hpp"
#include "hapd/keyvalue.hpp"

#include <fstream>
#include <stdexcept>

namespace hapd {

ModelParams default_model_params() {
    ModelParams p;
    // AircraftParameters defaults already carry the airframe constants.
    p.modes[0] = {20.0, 8.0, 15.0, StiffnessConvention::kLiteral};
    p.modes[1] = {14.0, 6.0, 24.0, StiffnessConvention::kLiteral};
    return p;
}

namespace {
ElasticModeParams load_mode(KeyValueFile& f, const std::string& base,
                            StiffnessConvention conv) {
    ElasticModeParams m;
    m.generalized_mass = f.get_double(base + ".mass");
    m.damping = f.get_double(base + ".damping");
    m.natural_frequency = f.get_double(base + ".frequency");
    m.stiffness_convention = conv;
    return m;
}
}  // namespace

ModelParams load_model_params(const std::string& path) {
    KeyValueFile f = KeyValueFile::load(path);
    ModelParams p;
    AircraftParameters& a = p.aircraft;
    a.mass = f.get_double("mass");
    a.wing_area = f.get_double("wing_area");
    a.wing_span = f.get_double("wing_span");
    a.mean_chord = f.get_double("mean_chord");
    a.ix = f.get_double("ix");
    a.iy = f.get_double("iy");
    a.iz = f.get_double("iz");
    a.ixz = f.get_double("ixz");
    a.gravity = f.get_double("gravity");
    a.deflection_limit = f.get_double("deflection_limit_deg") * kRadPerDeg;
    a.rate_limit = f.get_double("rate_limit_deg") * kRadPerDeg;

    StiffnessConvention conv;
    const std::string conv_s = f.get_string("stiffness_convention");
    if (conv_s == "literal")
        conv = StiffnessConvention::kLiteral;
    else if (conv_s == "standard")
        conv = StiffnessConvention::kStandardSecondOrder;
    else
        throw ParseError(path, f.line_of("stiffness_convention"),
                         "stiffness_convention must be 'literal' or 'standard', got '" +
                             conv_s + "'");
    p.modes[0] = load_mode(f, "mode.s", conv);
    p.modes[1] = load_mode(f, "mode.a", conv);
    f.finish();

    a.validate();
    p.modes[0].validate();
    p.modes[1].validate();
    return p;
}

void save_model_params(const std::string& path, const ModelParams& p) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.precision(17);
    const AircraftParameters& a = p.aircraft;
    out << "# Airframe parameters (SI units; limit angles in degrees).\n";
    out << "mass = " << a.mass << "\n";
    out << "wing_area = " << a.wing_area << "\n";
    out << "wing_span = " << a.wing_span << "\n";
    out << "mean_chord = " << a.mean_chord << "\n";
    out << "ix = " << a.ix << "\n";
    out << "iy = " << a.iy << "\n";
    out << "iz = " << a.iz << "\n";
    out << "ixz = " << a.ixz << "\n";
    out << "gravity = " << a.gravity << "\n";
    out << "deflection_limit_deg = " << a.deflection_limit * kDegPerRad << "\n";
    out << "rate_limit_deg = " << a.rate_limit * kDegPerRad << "\n";
    out << "stiffness_convention = "
        << (p.modes[0].stiffness_convention == StiffnessConvention::kLiteral ? "literal"
                                                                             : "standard")
        << "\n";
    for (int i = 0; i < 2; ++i) {
        const std::string base = i == 0 ? "mode.s" : "mode.a";
        out << base << ".mass = " << p.modes[i].generalized_mass << "\n";
        out << base << ".damping = " << p.modes[i].damping << "\n";
        out << base << ".frequency = " << p.modes[i].natural_frequency << "\n";
    }
}

AircraftModel load_aircraft_model(const std::string& params_path,
                                  const std::string& coeffs_path) {
    ModelParams p = load_model_params(params_path);
    AircraftModel m;
    m.params = p.aircraft;
    m.modes = p.modes;
    m.coeffs = load_coefficient_table(coeffs_path);
    return m;
}

}  // namespace hapd
