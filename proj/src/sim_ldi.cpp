#include "hapd/sim_ldi.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace hapd {

DeltaPolicy DeltaPolicy::zero() { return DeltaPolicy{}; }

DeltaPolicy DeltaPolicy::constant_matrix(const MatX& m) {
    DeltaPolicy p;
    p.kind = kConstant;
    p.constant = m;
    return p;
}

DeltaPolicy DeltaPolicy::random_contraction(uint64_t seed) {
    DeltaPolicy p;
    p.kind = kRandomContraction;
    p.seed = seed;
    return p;
}

DeltaPolicy DeltaPolicy::vertex_replay(int index) {
    DeltaPolicy p;
    p.kind = kVertexReplay;
    p.vertex = index;
    return p;
}

RandomContractionSource::RandomContractionSource(int dim, uint64_t seed)
    : dim_(dim), rng_(seed) {
    if (dim < 0) throw std::invalid_argument("contraction dimension must be >= 0");
}

namespace {

// Orthogonal factor distributed uniformly (Haar-like): QR of a Gaussian
// matrix with the R diagonal signs folded into Q.
MatX haar_orthogonal(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    MatX g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    Eigen::HouseholderQR<MatX> qr(g);
    MatX q = qr.householderQ();
    const MatX r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

double spectral_norm(const MatX& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    return Eigen::JacobiSVD<MatX>(m).singularValues()[0];
}

}  // namespace

MatX RandomContractionSource::next() {
    if (dim_ == 0) return MatX::Zero(0, 0);
    const MatX u = haar_orthogonal(dim_, rng_);
    const MatX v = haar_orthogonal(dim_, rng_);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    VecX s(dim_);
    for (int i = 0; i < dim_; ++i) s[i] = unit(rng_);
    return u * s.asDiagonal() * v.transpose();
}

LdiTrajectory simulate_discrete_ldi(const NldiModel& nldi, const DeltaPolicy& policy,
                                    const ControlSchedule& schedule, int steps, const Vec12& x0,
                                    const PldiModel* pldi) {
    if (steps < 1) throw std::invalid_argument("simulate_discrete_ldi: steps must be >= 1");
    schedule.validate();
    nldi.validate();
    const int r = nldi.rank();

    MatX fixed_delta;  // used by every policy except random
    switch (policy.kind) {
        case DeltaPolicy::kZero:
            fixed_delta = MatX::Zero(r, r);
            break;
        case DeltaPolicy::kConstant:
            if (policy.constant.rows() != r || policy.constant.cols() != r)
                throw std::invalid_argument("constant Delta must be r x r");
            fixed_delta = policy.constant;
            break;
        case DeltaPolicy::kVertexReplay: {
            if (pldi == nullptr)
                throw std::invalid_argument("vertex replay needs the originating PLDI");
            if (policy.vertex < 0 || policy.vertex >= static_cast<int>(pldi->vertices.size()))
                throw std::invalid_argument("vertex replay index out of range");
            const PldiVertex& v = pldi->vertices[policy.vertex];
            fixed_delta = extract_delta(nldi, v.disc.phi, v.disc.g);
            break;
        }
        case DeltaPolicy::kRandomContraction:
            break;
    }

    RandomContractionSource source(r, policy.seed);

    LdiTrajectory traj;
    traj.ts = nldi.ts;
    traj.x.reserve(steps + 1);
    traj.u.reserve(steps);
    traj.z.reserve(steps);
    traj.w.reserve(steps);
    traj.delta_norm.reserve(steps);

    Vec12 x = x0;
    traj.x.push_back(x);
    const double fixed_norm =
        policy.kind == DeltaPolicy::kRandomContraction ? 0.0 : spectral_norm(fixed_delta);

    for (int k = 0; k < steps; ++k) {
        const Vec13 u = schedule.deviation_at(k * nldi.ts);
        const VecX z = nldi.c_z * x + nldi.d_z * u;

        MatX delta;
        double dnorm;
        if (policy.kind == DeltaPolicy::kRandomContraction) {
            delta = source.next();
            dnorm = spectral_norm(delta);
        } else {
            delta = fixed_delta;
            dnorm = fixed_norm;
        }
        const VecX w = delta * z;

        x = nldi.phi0 * x + nldi.g0 * u + nldi.b_w * w;

        traj.u.push_back(u);
        traj.z.push_back(z);
        traj.w.push_back(w);
        traj.delta_norm.push_back(dnorm);
        traj.max_delta_norm = std::max(traj.max_delta_norm, dnorm);
        traj.x.push_back(x);
    }
    return traj;
}

L2CheckResult check_truncated_l2(const std::vector<VecX>& w, const std::vector<VecX>& z) {
    if (w.size() != z.size())
        throw std::invalid_argument("check_truncated_l2: w and z must have equal lengths");

    L2CheckResult result;
    double sum_w = 0.0;
    double sum_z = 0.0;
    bool first = true;
    for (size_t t = 0; t < w.size(); ++t) {
        sum_w += w[t].squaredNorm();
        sum_z += z[t].squaredNorm();
        const double slack = sum_z - sum_w;
        if (first || slack < result.min_slack) {
            result.min_slack = slack;
            first = false;
        }
        if (sum_w > sum_z + 1e-12 * std::max(1.0, sum_z) && result.first_violation < 0) {
            result.first_violation = static_cast<int>(t);
            result.pass = false;
        }
    }
    return result;
}

}  // namespace hapd
