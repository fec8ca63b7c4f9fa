#include "sqc/qubit.hpp"

#include <algorithm>
#include <numbers>

#include <fmt/format.h>

namespace sqc {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::InvalidBloch: return "InvalidBloch";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::InvalidProbability: return "InvalidProbability";
        case ErrorKind::IncoherentSource: return "IncoherentSource";
        case ErrorKind::InvalidSource: return "InvalidSource";
        case ErrorKind::NotReachable: return "NotReachable";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
        case ErrorKind::NotSubnormalized: return "NotSubnormalized";
        case ErrorKind::NotStrictlyIncoherent: return "NotStrictlyIncoherent";
        case ErrorKind::ZeroProbabilityBranch: return "ZeroProbabilityBranch";
        case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorKind::TauNotIncoherent: return "TauNotIncoherent";
        case ErrorKind::WeightTooLarge: return "WeightTooLarge";
        case ErrorKind::FreeState: return "FreeState";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

namespace {

// Eigenvalues of a hermitian 2x2 matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Matrix2c& m) noexcept {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
    return {mean - radius, mean + radius};
}

}  // namespace

DensityMatrix::DensityMatrix() : m_(Matrix2c::Identity() * 0.5) {}

DensityMatrix::DensityMatrix(const Matrix2c& m) {
    if (!m.allFinite()) {
        throw Error(ErrorKind::InvalidState, "non-finite matrix entry");
    }
    const double herm = std::max({std::abs(m(0, 1) - std::conj(m(1, 0))), std::abs(m(0, 0).imag()),
                                  std::abs(m(1, 1).imag())});
    if (herm > kStateTol) {
        throw Error(ErrorKind::InvalidState, fmt::format("not hermitian (deviation {:.3g})", herm));
    }
    m_ = 0.5 * (m + m.adjoint());
    const double trace = m_.trace().real();
    if (std::abs(trace - 1.0) > kStateTol) {
        throw Error(ErrorKind::InvalidState, fmt::format("trace {:.17g} differs from 1", trace));
    }
    const auto ev = hermitian_eigenvalues(m_);
    if (ev[0] < -kStateTol) {
        throw Error(ErrorKind::InvalidState, fmt::format("negative eigenvalue {:.3g}", ev[0]));
    }
}

std::array<double, 2> DensityMatrix::eigenvalues() const noexcept {
    auto ev = hermitian_eigenvalues(m_);
    for (double& v : ev) v = std::clamp(v, 0.0, 1.0);
    return ev;
}

BlochVector to_bloch(const DensityMatrix& state) {
    const Complex c = state.rho01();
    const double rz = (state(0, 0) - state(1, 1)).real();
    return {2.0 * c.real(), -2.0 * c.imag(), rz};
}

DensityMatrix from_bloch(const BlochVector& vec) {
    if (!vec.is_valid()) {
        throw Error(ErrorKind::InvalidBloch,
                    fmt::format("Bloch vector ({}, {}, {}) has norm {:.17g} > 1", vec.x, vec.y, vec.z,
                                vec.norm()));
    }
    Matrix2c m;
    m(0, 0) = 0.5 * (1.0 + vec.z);
    m(1, 1) = 0.5 * (1.0 - vec.z);
    m(0, 1) = Complex(0.5 * vec.x, -0.5 * vec.y);
    m(1, 0) = Complex(0.5 * vec.x, 0.5 * vec.y);
    return DensityMatrix(m);
}

TransverseRadius transverse_radius(const BlochVector& vec) noexcept {
    return {std::hypot(vec.x, vec.y)};
}

Matrix2c pauli_x() {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2c pauli_y() {
    Matrix2c m;
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix2c pauli_z() {
    Matrix2c m;
    m << 1, 0, 0, -1;
    return m;
}

BlochVector SymmetryFrame::apply(const BlochVector& v) const noexcept {
    BlochVector w = v;
    if (z_flip) {
        w.x = -w.x;
        w.y = -w.y;
    }
    const double c = std::cos(z_rotation_angle);
    const double s = std::sin(z_rotation_angle);
    w = {c * w.x - s * w.y, s * w.x + c * w.y, w.z};
    if (x_flip) {
        w.y = -w.y;
        w.z = -w.z;
    }
    return w;
}

BlochVector SymmetryFrame::apply_inverse(const BlochVector& v) const noexcept {
    BlochVector w = v;
    if (x_flip) {
        w.y = -w.y;
        w.z = -w.z;
    }
    const double c = std::cos(z_rotation_angle);
    const double s = std::sin(z_rotation_angle);
    w = {c * w.x + s * w.y, -s * w.x + c * w.y, w.z};
    if (z_flip) {
        w.x = -w.x;
        w.y = -w.y;
    }
    return w;
}

Matrix2c SymmetryFrame::unitary() const {
    Matrix2c u = Matrix2c::Identity();
    if (z_flip) u = pauli_z() * u;
    Matrix2c rot = Matrix2c::Zero();
    rot(0, 0) = std::polar(1.0, -0.5 * z_rotation_angle);
    rot(1, 1) = std::polar(1.0, 0.5 * z_rotation_angle);
    u = rot * u;
    if (x_flip) u = pauli_x() * u;
    return u;
}

DensityMatrix SymmetryFrame::apply(const DensityMatrix& rho) const {
    const Matrix2c u = unitary();
    return DensityMatrix(u * rho.matrix() * u.adjoint());
}

DensityMatrix SymmetryFrame::apply_inverse(const DensityMatrix& rho) const {
    const Matrix2c u = unitary();
    return DensityMatrix(u.adjoint() * rho.matrix() * u);
}

CanonicalForm canonicalize(const BlochVector& vec) noexcept {
    SymmetryFrame frame;
    frame.z_flip = vec.x < 0.0;
    const double x = frame.z_flip ? -vec.x : vec.x;
    const double y = frame.z_flip ? -vec.y : vec.y;
    // x >= 0 here, so the angle lies in [-pi/2, pi/2].
    frame.z_rotation_angle = (x == 0.0 && y == 0.0) ? 0.0 : -std::atan2(y, x);
    frame.x_flip = vec.z < 0.0;
    return {{std::hypot(vec.x, vec.y), 0.0, std::abs(vec.z)}, frame};
}

bool is_incoherent(const DensityMatrix& state) noexcept {
    return std::abs(state.rho01()) <= kStateTol;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const Matrix2c d = a.matrix() - b.matrix();
    return std::hypot(0.5 * (d(0, 0) - d(1, 1)).real(), std::abs(d(0, 1)));
}

}  // namespace sqc
