#include "hapd/discretize.hpp"

#include <cmath>
#include <stdexcept>

namespace hapd {

MatX expm(const MatX& m, double tol) {
    const Eigen::Index n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("expm: matrix must be square");

    // Scale so the series argument has inf-norm <= 0.5.
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const MatX x = m / std::exp2(squarings);

    MatX sum = MatX::Identity(n, n);
    MatX term = MatX::Identity(n, n);
    for (int k = 1; k <= 64; ++k) {
        term = (term * x / static_cast<double>(k)).eval();
        sum += term;
        const double term_norm = term.cwiseAbs().rowwise().sum().maxCoeff();
        const double sum_norm = sum.cwiseAbs().rowwise().sum().maxCoeff();
        if (term_norm <= 0.5 * tol * sum_norm) break;
    }
    for (int s = 0; s < squarings; ++s) sum = (sum * sum).eval();
    return sum;
}

DiscreteModel discretize(const LinearModel& model, double ts) {
    if (!(ts > 0.0)) throw std::invalid_argument("discretize: Ts must be positive");
    MatX aug = MatX::Zero(kNumStates + kNumInputs, kNumStates + kNumInputs);
    aug.topLeftCorner(kNumStates, kNumStates) = model.a;
    aug.topRightCorner(kNumStates, kNumInputs) = model.b;
    const MatX e = expm(aug * ts);

    DiscreteModel d;
    d.phi = e.topLeftCorner(kNumStates, kNumStates);
    d.g = e.topRightCorner(kNumStates, kNumInputs);
    d.ts = ts;
    return d;
}

}  // namespace hapd
