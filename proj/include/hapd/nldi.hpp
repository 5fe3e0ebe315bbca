#pragma once

#include "hapd/pldi.hpp"

#include <string>
#include <vector>

namespace hapd {

// Norm-bounded uncertain discrete model
//   x(t+1) = Phi0 x(t) + G0 u(t) + B_w w(t)
//   z(t)   = C_z x(t) + D_z u(t)
//   w(t)   = Delta(t) z(t),   sigma_max(Delta) <= 1
// with channel dimension r <= 12.
struct NldiModel {
    Mat12 phi0;
    Mat12x13 g0;
    MatX b_w;  // 12 x r
    MatX c_z;  // r x 12
    MatX d_z;  // r x 13
    Mat8x12 c = output_selector();
    double ts = 0.0;
    std::string grid_hash;

    int rank() const { return static_cast<int>(b_w.cols()); }
    // [C_z | D_z] as one r x 25 block.
    MatX cz_dz() const;

    // Family member realized by a fixed Delta.
    Mat12 member_phi(const MatX& delta) const;
    Mat12x13 member_g(const MatX& delta) const;

    void validate() const;  // dimension/finite checks
};

struct VertexCoverage {
    double delta_norm = 0.0;    // sigma_max(Delta_i)
    double residual_abs = 0.0;  // Frobenius reconstruction residual
    double residual_rel = 0.0;
};

struct CoverageReport {
    std::vector<VertexCoverage> vertices;
    double max_delta_norm = 0.0;
    double max_residual_rel = 0.0;
    int binding_vertex = -1;
    bool pass = false;
};

inline constexpr double kCoverageNormTol = 1e-6;      // max sigma <= 1 + tol
inline constexpr double kCoverageResidualTol = 1e-6;  // max relative residual

// Fits the norm-bounded model to the polytopic family:
//   Phi0, G0       entrywise means over the vertices;
//   B_w            top-r left factor of the horizontally stacked residuals;
//   [C_z | D_z]    top-r right factor of the vertically stacked residuals;
// both scaled by sqrt(singular values), then rescaled so the worst-case
// vertex Delta sits exactly on the unit ball. G-residual columns are
// weighted by the input scales (deflection limit, mean trim thrust) during
// factorization; the weights are inverted on output. r is the numerical
// rank at rank_tolerance (relative to sigma_max), capped at 12.
// Throws FitError if the rank-r reconstruction leaves more than the
// coverage tolerance.
NldiModel fit_nldi(const PldiModel& pldi, double rank_tolerance = 1e-8);

// Per-vertex least-squares Delta extraction and contract check:
// pass iff max sigma_max(Delta_i) <= 1 + 1e-6 and max relative Frobenius
// reconstruction residual <= 1e-6.
CoverageReport verify_coverage(const NldiModel& nldi, const PldiModel& pldi);

// Least-squares Delta reproducing one vertex: pinv(B_w) R [Cz|Dz]^+.
MatX extract_delta(const NldiModel& nldi, const Mat12& phi_i, const Mat12x13& g_i);

// Archive: sections [PHI0], [G0], [BW], [CZ], [DZ], [META]. Lossless decimal
// round-trip; import validates dimensions (r <= 12) and finiteness.
void export_nldi(const std::string& path, const NldiModel& model);
NldiModel import_nldi(const std::string& path);

std::string format_coverage_report(const CoverageReport& report, const PldiModel* pldi);

}  // namespace hapd
