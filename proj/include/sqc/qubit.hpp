#pragma once

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "sqc/errors.hpp"

namespace sqc {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

/// Tolerance used for every state invariant (hermiticity, trace, positivity).
inline constexpr double kStateTol = 1e-12;

/// Real Bloch coordinates.  A plain value; validity (|r| <= 1) is checked where
/// a physical state is required.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }
    bool is_valid(double tol = kStateTol) const noexcept {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z) &&
               x * x + y * y + z * z <= 1.0 + tol;
    }
    friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// Distance of a Bloch vector from the incoherent (z) axis.
struct TransverseRadius {
    double value = 0.0;
    operator double() const noexcept { return value; }
};

/// Single-qubit density matrix.  Construction validates hermiticity, unit
/// trace and positivity to kStateTol and stores the hermitian part.
///
/// Convention: rho01 = <0|rho|1> = (rx - i ry) / 2.
class DensityMatrix {
  public:
    /// Maximally mixed state.
    DensityMatrix();
    explicit DensityMatrix(const Matrix2c& m);

    const Matrix2c& matrix() const noexcept { return m_; }
    Complex operator()(int i, int j) const noexcept { return m_(i, j); }
    Complex rho01() const noexcept { return m_(0, 1); }

    /// Eigenvalues in ascending order, clamped to [0, 1].
    std::array<double, 2> eigenvalues() const noexcept;

    friend bool operator==(const DensityMatrix& a, const DensityMatrix& b) { return a.m_ == b.m_; }

  private:
    Matrix2c m_;
};

BlochVector to_bloch(const DensityMatrix& state);
DensityMatrix from_bloch(const BlochVector& vec);
TransverseRadius transverse_radius(const BlochVector& vec) noexcept;

/// Pauli matrices and identity.
Matrix2c pauli_x();
Matrix2c pauli_y();
Matrix2c pauli_z();

/// Composition of free (incoherent unitary) symmetries of the qubit, applied
/// in the order: optional sigma_z conjugation, rotation about z by
/// `z_rotation_angle`, optional sigma_x conjugation.
struct SymmetryFrame {
    double z_rotation_angle = 0.0;
    bool x_flip = false;
    bool z_flip = false;

    bool is_identity() const noexcept { return z_rotation_angle == 0.0 && !x_flip && !z_flip; }

    BlochVector apply(const BlochVector& v) const noexcept;
    BlochVector apply_inverse(const BlochVector& v) const noexcept;
    DensityMatrix apply(const DensityMatrix& rho) const;
    DensityMatrix apply_inverse(const DensityMatrix& rho) const;

    /// Unitary U with frame(rho) = U rho U^dagger.
    Matrix2c unitary() const;
};

struct CanonicalForm {
    BlochVector vector;
    SymmetryFrame frame;
};

/// Maps `vec` to ry = 0, rx >= 0, rz >= 0 using only free symmetries.
/// `frame.apply(vec) == vector` and `frame.apply_inverse(vector) == vec`.
CanonicalForm canonicalize(const BlochVector& vec) noexcept;

/// |rho01| <= kStateTol.
bool is_incoherent(const DensityMatrix& state) noexcept;

/// Trace distance of two qubit states (half the Bloch distance).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace sqc
