#include "sqc/measures.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace sqc {

namespace {

double xlog2x(double x) noexcept { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

double binary_entropy(double x) {
    if (!(x >= -kStateTol && x <= 1.0 + kStateTol)) {
        throw Error(ErrorKind::DomainError, fmt::format("binary entropy argument {} outside [0, 1]", x));
    }
    x = std::clamp(x, 0.0, 1.0);
    return -xlog2x(x) - xlog2x(1.0 - x);
}

double von_neumann_entropy(const DensityMatrix& state) {
    const double r = std::min(to_bloch(state).norm(), 1.0);
    return binary_entropy(0.5 * (1.0 + r));
}

DensityMatrix dephase(const DensityMatrix& state) {
    Matrix2c m = Matrix2c::Zero();
    m(0, 0) = state(0, 0).real();
    m(1, 1) = state(1, 1).real();
    return DensityMatrix(m);
}

double distillable_coherence(const DensityMatrix& state) {
    if (is_incoherent(state)) return 0.0;
    const double p0 = std::clamp(state(0, 0).real(), 0.0, 1.0);
    return std::max(0.0, binary_entropy(p0) - von_neumann_entropy(state));
}

double coherence_cost(const DensityMatrix& state) {
    const double c = std::min(std::abs(state.rho01()), 0.5);
    return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * c * c))));
}

double l1_coherence(const DensityMatrix& state) { return 2.0 * std::abs(state.rho01()); }

}  // namespace sqc
