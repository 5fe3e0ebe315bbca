#pragma once

#include "hapd/nldi.hpp"
#include "hapd/scenario.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hapd {

// How the uncertainty block Delta(t) is chosen at each step. All variants are
// meant to produce sigma_max(Delta) <= 1; a deliberately out-of-contract
// constant matrix is accepted so the l2 checker can be shown to catch it.
struct DeltaPolicy {
    enum Kind { kZero, kConstant, kRandomContraction, kVertexReplay };

    Kind kind = kZero;
    MatX constant;      // kConstant
    uint64_t seed = 0;  // kRandomContraction
    int vertex = -1;    // kVertexReplay: index into the PLDI family

    static DeltaPolicy zero();
    static DeltaPolicy constant_matrix(const MatX& m);
    static DeltaPolicy random_contraction(uint64_t seed);
    static DeltaPolicy vertex_replay(int index);
};

// Deviation-coordinate trajectory of the uncertain discrete model. Sample k
// of x is the state at t = k * ts; u, z, w, delta_norm have one entry per
// step (the values applied over [k, k+1)).
struct LdiTrajectory {
    double ts = 0.0;
    std::vector<Vec12> x;          // length steps + 1
    std::vector<Vec13> u;          // length steps
    std::vector<VecX> z;           // length steps, r-vectors
    std::vector<VecX> w;           // length steps, r-vectors
    std::vector<double> delta_norm;  // sigma_max of the Delta used each step
    double max_delta_norm = 0.0;

    size_t steps() const { return u.size(); }
};

// Iterates x+ = Phi0 x + G0 u + B_w w, z = C_z x + D_z u, w = Delta z for
// `steps` samples from the initial deviation x0. The schedule provides the
// input deviations. Vertex replay resolves Delta from the coverage
// extraction and needs the originating PLDI. Deterministic given the seed.
LdiTrajectory simulate_discrete_ldi(const NldiModel& nldi, const DeltaPolicy& policy,
                                    const ControlSchedule& schedule, int steps, const Vec12& x0,
                                    const PldiModel* pldi = nullptr);

// Draws sigma_max <= 1 matrices U diag(s) V^T with Haar-like orthogonal
// factors (QR of standard Gaussians, sign-corrected) and s uniform on [0,1].
class RandomContractionSource {
public:
    RandomContractionSource(int dim, uint64_t seed);
    MatX next();

private:
    int dim_;
    std::mt19937_64 rng_;
};

struct L2CheckResult {
    bool pass = true;
    int first_violation = -1;  // step of the first failed running sum
    double min_slack = 0.0;    // min over t of sum z'z - sum w'w
};

// Truncated-l2 contract: sum_{k<=t} w'w <= sum_{k<=t} z'z at every t, up to
// a 1e-12 relative allowance for roundoff. Requires equal lengths.
L2CheckResult check_truncated_l2(const std::vector<VecX>& w, const std::vector<VecX>& z);

}  // namespace hapd
