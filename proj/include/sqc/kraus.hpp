#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "sqc/qubit.hpp"

namespace sqc {

/// Entries with modulus at or below this are structural zeros.
inline constexpr double kZeroEntryTol = 1e-12;

enum class KrausClass { General, Incoherent, StrictlyIncoherent };

std::string_view to_string(KrausClass c) noexcept;

/// Incoherent: every column has at most one nonzero entry.  Strictly
/// incoherent: additionally every row has at most one nonzero entry.
KrausClass classify(const Matrix2c& op) noexcept;

class KrausOperator {
  public:
    explicit KrausOperator(const Matrix2c& m) : m_(m), class_(classify(m)) {}

    const Matrix2c& matrix() const noexcept { return m_; }
    KrausClass kind() const noexcept { return class_; }
    bool is_strictly_incoherent() const noexcept { return class_ == KrausClass::StrictlyIncoherent; }

  private:
    Matrix2c m_;
    KrausClass class_;
};

using KrausList = std::vector<KrausOperator>;

/// Two-outcome instrument.  An empty branch means that outcome never occurs;
/// zero operators are never stored.
struct Instrument {
    KrausList success;
    KrausList failure;

    /// Largest entry modulus of sum K^dagger K - 1 over both branches.
    double completeness_error() const;
    bool success_strictly_incoherent() const noexcept;
    bool strictly_incoherent() const noexcept;
};

/// sum_k K^dagger K.
Matrix2c effect(std::span<const KrausOperator> ops);

/// Unnormalized branch output sum_k K rho K^dagger.
Matrix2c branch_output(std::span<const KrausOperator> ops, const Matrix2c& rho);

/// Diagonal strictly incoherent operator completing `partial` to a
/// trace-preserving map.  Throws NotStrictlyIncoherent or NotSubnormalized.
KrausOperator complete(std::span<const KrausOperator> partial);

/// Builds the instrument with the given success operators and their
/// completion as failure branch.  Zero operators are dropped.
Instrument complete_instrument(KrausList success);

struct BranchResult {
    double success_probability = 0.0;
    std::optional<DensityMatrix> success_state;
    std::optional<DensityMatrix> failure_state;

    /// Throw ZeroProbabilityBranch when the branch did not occur.
    const DensityMatrix& success() const;
    const DensityMatrix& failure() const;
};

/// Branches with probability below this have no defined output state.
inline constexpr double kZeroBranchTol = 1e-14;

BranchResult apply(const Instrument& inst, const DensityMatrix& state);

// ---------------------------------------------------------------------------
// Qubit SIO parametrization.
//
// Every stochastic qubit SIO is spanned by
//   K1 = [[a1, 0], [0, b1]],  K2 = [[0, b2], [a2, 0]],
//   K3 = [[a3, 0], [0, 0]],   K4 = [[0, b3], [0, 0]]
// with a_i, b3 >= 0.  On the boundary of the reachable region a3 = b3 = 0 and
// b1, b2 >= 0, and for a canonical source (r, 0, rz) with success probability
// p the remaining coefficients are written through angles (t, theta, phi):
//   a1 = A cos t cos((theta - phi)/2),  a2 = A cos t sin((theta - phi)/2),
//   b1 = B sin t sin((theta + phi)/2),  b2 = B sin t cos((theta + phi)/2),
// A = sqrt(2p / (1 + rz)),  B = sqrt(2p / (1 - rz)).
// ---------------------------------------------------------------------------

struct SioParameters {
    double t = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double p = 1.0;
    std::array<double, 3> a{};
    std::array<double, 3> b{};
};

/// Admissible range of t for probability p and canonical rz: the norms of a
/// and b must not exceed one.
struct AngleWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double t, double tol = 1e-12) const noexcept { return t >= lo - tol && t <= hi + tol; }
};

AngleWindow t_window(double p, double rz);

/// Validates the angles and fills in a and b.  Throws ParameterOutOfRange.
SioParameters parametrize(double t, double theta, double phi, double p, const BlochVector& canonical_source);

struct ForwardImage {
    double p = 0.0;
    BlochVector target;
};

/// Closed-form image of a canonical source (ry = 0, rx > 0, rz >= 0):
///   sx = rx sin(2t) sin(theta) / sqrt(1 - rz^2)
///   sz = cos(2t) sin(theta) sin(phi) + cos(theta) cos(phi).
/// Throws InvalidSource for non-canonical sources, ParameterOutOfRange when t
/// lies outside its window or the angle ranges are violated.
ForwardImage forward_map(const SioParameters& params, const BlochVector& source);

/// The four operators K1..K4 for complex b1, b2 (zero operators dropped).
KrausList sio_kraus(const std::array<double, 3>& a, const std::array<Complex, 3>& b);
KrausList sio_kraus(const SioParameters& params);

// ---------------------------------------------------------------------------
// Construction.
// ---------------------------------------------------------------------------

/// Strictly incoherent instrument whose success branch maps `source` to
/// p * `target`.  Throws NotReachable when the pair is infeasible at p and
/// NumericalFailure when the constructed instrument misses the target by
/// more than 1e-9 in trace distance or probability.
Instrument synthesize(const BlochVector& source, const BlochVector& target, double p);

/// Adds weight q of the incoherent state tau to the success branch: the
/// completion of `success` is dephased and steered onto tau, and the part of
/// it carrying probability q on `source` is moved to the success branch.
/// The failure branch is the completion of the enlarged success branch.
/// Throws TauNotIncoherent, WeightTooLarge, NotStrictlyIncoherent.
Instrument pad(std::span<const KrausOperator> success, const DensityMatrix& source, const DensityMatrix& tau,
               double q);

}  // namespace sqc
