#include "hapd/nldi.hpp"

#include "hapd/errors.hpp"
#include "hapd/matrix_io.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hapd {

namespace {

constexpr int kResidualCols = kNumStates + kNumInputs;  // 25

MatX pseudo_inverse(const MatX& m, double rel_tol = 1e-12) {
    if (m.rows() == 0 || m.cols() == 0) return MatX::Zero(m.cols(), m.rows());
    Eigen::JacobiSVD<MatX> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const VecX& s = svd.singularValues();
    const double cutoff = rel_tol * s[0];
    VecX inv = VecX::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > cutoff) inv[i] = 1.0 / s[i];
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double spectral_norm(const MatX& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    return Eigen::JacobiSVD<MatX>(m).singularValues()[0];
}

int numerical_rank(const VecX& sigma, double rel_tol) {
    if (sigma.size() == 0 || sigma[0] <= 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma[i] > rel_tol * sigma[0]) ++r;
    return r;
}

MatX vertex_residual(const NldiModel& nldi, const Mat12& phi_i, const Mat12x13& g_i) {
    MatX r(kNumStates, kResidualCols);
    r.leftCols(kNumStates) = phi_i - nldi.phi0;
    r.rightCols(kNumInputs) = g_i - nldi.g0;
    return r;
}

}  // namespace

MatX NldiModel::cz_dz() const {
    MatX m(rank(), kResidualCols);
    m.leftCols(kNumStates) = c_z;
    m.rightCols(kNumInputs) = d_z;
    return m;
}

Mat12 NldiModel::member_phi(const MatX& delta) const { return phi0 + b_w * delta * c_z; }

Mat12x13 NldiModel::member_g(const MatX& delta) const { return g0 + b_w * delta * d_z; }

void NldiModel::validate() const {
    const int r = rank();
    if (r > kNumStates)
        throw std::invalid_argument("NLDI channel dimension r = " + std::to_string(r) +
                                    " exceeds 12");
    if (c_z.rows() != r || d_z.rows() != r)
        throw std::invalid_argument("NLDI C_z/D_z row count does not match B_w columns");
    if (b_w.rows() != kNumStates || c_z.cols() != kNumStates || d_z.cols() != kNumInputs)
        throw std::invalid_argument("NLDI matrix dimensions inconsistent");
    if (!phi0.allFinite() || !g0.allFinite() || !b_w.allFinite() || !c_z.allFinite() ||
        !d_z.allFinite())
        throw std::invalid_argument("NLDI contains non-finite entries");
    if (!(ts > 0.0)) throw std::invalid_argument("NLDI sample time must be positive");
}

MatX extract_delta(const NldiModel& nldi, const Mat12& phi_i, const Mat12x13& g_i) {
    if (nldi.rank() == 0) return MatX::Zero(0, 0);
    const MatX r = vertex_residual(nldi, phi_i, g_i);
    return pseudo_inverse(nldi.b_w) * r * pseudo_inverse(nldi.cz_dz());
}

NldiModel fit_nldi(const PldiModel& pldi, double rank_tolerance) {
    const int n = static_cast<int>(pldi.vertices.size());
    if (n < 2) throw FitError("fit_nldi: need at least 2 vertices");

    NldiModel nldi;
    nldi.ts = pldi.ts;
    nldi.grid_hash = pldi.grid.hash();

    nldi.phi0.setZero();
    nldi.g0.setZero();
    for (const PldiVertex& v : pldi.vertices) {
        nldi.phi0 += v.disc.phi;
        nldi.g0 += v.disc.g;
    }
    nldi.phi0 /= n;
    nldi.g0 /= n;

    // Input-scale weights make deflection and thrust columns commensurable.
    double thrust_scale = 0.0;
    for (const PldiVertex& v : pldi.vertices) thrust_scale += v.trim.u.thrust;
    thrust_scale /= n;
    if (!(thrust_scale > 1e-9)) thrust_scale = 1.0;
    VecX weights = VecX::Ones(kResidualCols);
    const AircraftParameters ref_params;  // limits are airframe constants
    for (int j = 0; j < kNumSurfaces; ++j)
        weights[kNumStates + j] = ref_params.deflection_limit;
    weights[kNumStates + kNumSurfaces] = thrust_scale;

    // Weighted residuals, stacked horizontally (shared columns space -> B_w)
    // and vertically (shared row space -> [C_z | D_z]).
    std::vector<MatX> residuals(n);
    MatX horiz(kNumStates, kResidualCols * n);
    MatX vert(kNumStates * n, kResidualCols);
    for (int i = 0; i < n; ++i) {
        MatX r = vertex_residual(nldi, pldi.vertices[i].disc.phi, pldi.vertices[i].disc.g);
        r = r * weights.asDiagonal();
        residuals[i] = r;
        horiz.middleCols(i * kResidualCols, kResidualCols) = r;
        vert.middleRows(i * kNumStates, kNumStates) = r;
    }

    Eigen::JacobiSVD<MatX> svd_h(horiz, Eigen::ComputeThinU);
    Eigen::JacobiSVD<MatX> svd_v(vert, Eigen::ComputeThinV);
    const int rank_h = numerical_rank(svd_h.singularValues(), rank_tolerance);
    const int rank_v = numerical_rank(svd_v.singularValues(), rank_tolerance);
    const int r = std::min(std::max(rank_h, rank_v), kNumStates);

    if (r == 0) {
        nldi.b_w = MatX::Zero(kNumStates, 0);
        nldi.c_z = MatX::Zero(0, kNumStates);
        nldi.d_z = MatX::Zero(0, kNumInputs);
        return nldi;
    }

    const MatX b_w_raw =
        svd_h.matrixU().leftCols(r) *
        svd_h.singularValues().head(r).cwiseSqrt().asDiagonal();
    const MatX czdz_weighted =
        svd_v.singularValues().head(r).cwiseSqrt().asDiagonal() *
        svd_v.matrixV().leftCols(r).transpose();

    // Undo the column weighting on the D_z block.
    MatX czdz_raw = czdz_weighted;
    for (int j = 0; j < kResidualCols; ++j) czdz_raw.col(j) /= weights[j];

    nldi.b_w = b_w_raw;
    nldi.c_z = czdz_raw.leftCols(kNumStates);
    nldi.d_z = czdz_raw.rightCols(kNumInputs);

    // Rescale so the worst vertex sits exactly on the unit ball.
    double s_star = 0.0;
    for (const PldiVertex& v : pldi.vertices)
        s_star = std::max(s_star, spectral_norm(extract_delta(nldi, v.disc.phi, v.disc.g)));
    if (s_star > 0.0) {
        const double f = std::sqrt(s_star);
        nldi.b_w *= f;
        nldi.c_z *= f;
        nldi.d_z *= f;
    }

    const CoverageReport check = verify_coverage(nldi, pldi);
    if (check.max_residual_rel > kCoverageResidualTol)
        throw FitError("fit_nldi: rank-" + std::to_string(r) +
                       " reconstruction residual " + format_double(check.max_residual_rel) +
                       " exceeds tolerance; a larger channel dimension is required");
    return nldi;
}

CoverageReport verify_coverage(const NldiModel& nldi, const PldiModel& pldi) {
    CoverageReport report;
    for (const PldiVertex& v : pldi.vertices) {
        const MatX residual = vertex_residual(nldi, v.disc.phi, v.disc.g);
        const MatX delta = extract_delta(nldi, v.disc.phi, v.disc.g);
        const MatX reconstructed =
            nldi.rank() == 0 ? MatX::Zero(kNumStates, kResidualCols)
                             : MatX(nldi.b_w * delta * nldi.cz_dz());

        VertexCoverage vc;
        vc.delta_norm = spectral_norm(delta);
        vc.residual_abs = (residual - reconstructed).norm();
        const double scale = residual.norm();
        vc.residual_rel = scale > 0.0 ? vc.residual_abs / scale : 0.0;
        report.vertices.push_back(vc);

        if (vc.delta_norm >= report.max_delta_norm) {
            report.max_delta_norm = vc.delta_norm;
            report.binding_vertex = static_cast<int>(report.vertices.size()) - 1;
        }
        report.max_residual_rel = std::max(report.max_residual_rel, vc.residual_rel);
    }
    report.pass = report.max_delta_norm <= 1.0 + kCoverageNormTol &&
                  report.max_residual_rel <= kCoverageResidualTol;
    return report;
}

void export_nldi(const std::string& path, const NldiModel& model) {
    std::ostringstream out;
    out << "# norm-bounded LDI archive\n";
    write_matrix_section(out, "PHI0", model.phi0);
    write_matrix_section(out, "G0", model.g0);
    write_matrix_section(out, "BW", model.b_w);
    write_matrix_section(out, "CZ", model.c_z);
    write_matrix_section(out, "DZ", model.d_z);
    write_kv_section_header(out, "META");
    out << "ts = " << format_double(model.ts) << "\n";
    out << "r = " << model.rank() << "\n";
    out << "grid_hash = " << (model.grid_hash.empty() ? "none" : model.grid_hash) << "\n";

    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + tmp);
        f << out.str();
    }
    std::filesystem::rename(tmp, path);
}

NldiModel import_nldi(const std::string& path) {
    const SectionedFile f = SectionedFile::load(path);
    NldiModel m;

    const MatX& phi0 = f.matrix("PHI0");
    if (phi0.rows() != kNumStates || phi0.cols() != kNumStates)
        throw ParseError(path, 0, "[PHI0] must be 12x12");
    m.phi0 = phi0;
    const MatX& g0 = f.matrix("G0");
    if (g0.rows() != kNumStates || g0.cols() != kNumInputs)
        throw ParseError(path, 0, "[G0] must be 12x13");
    m.g0 = g0;
    m.b_w = f.matrix("BW");
    m.c_z = f.matrix("CZ");
    m.d_z = f.matrix("DZ");
    m.ts = f.value_double("META", "ts");
    m.grid_hash = f.value("META", "grid_hash");
    if (m.grid_hash == "none") m.grid_hash.clear();

    const double r_meta = f.value_double("META", "r");
    if (r_meta != m.rank())
        throw ParseError(path, 0, "META r does not match [BW] column count");
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, 0, e.what());
    }
    return m;
}

std::string format_coverage_report(const CoverageReport& report, const PldiModel* pldi) {
    std::ostringstream out;
    out << "# coverage report\n";
    out << "vertex  vtas      alt       sigma(Delta)          residual_rel\n";
    for (size_t i = 0; i < report.vertices.size(); ++i) {
        char line[160];
        double vtas = 0.0, alt = 0.0;
        if (pldi && i < pldi->vertices.size()) {
            vtas = pldi->vertices[i].trim.v_tas;
            alt = pldi->vertices[i].trim.altitude;
        }
        std::snprintf(line, sizeof(line), "%-7zu %-9g %-9g %-21.17g %-21.17g\n", i, vtas, alt,
                      report.vertices[i].delta_norm, report.vertices[i].residual_rel);
        out << line;
    }
    out << "max_sigma = " << format_double(report.max_delta_norm) << "\n";
    out << "max_residual_rel = " << format_double(report.max_residual_rel) << "\n";
    out << "binding_vertex = " << report.binding_vertex << "\n";
    out << "result = " << (report.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace hapd
