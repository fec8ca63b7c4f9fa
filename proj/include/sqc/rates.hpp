#pragma once

#include <optional>
#include <vector>

#include "sqc/qubit.hpp"

namespace sqc {

enum class LowerBoundSource { SingleCopyProbability, CdOverCc };
enum class UpperBoundSource { CdRatio, CcRatio, Unbounded };

std::string_view to_string(LowerBoundSource s) noexcept;
std::string_view to_string(UpperBoundSource s) noexcept;

/// Bounds on the asymptotic conversion rate R(rho -> sigma).
///
///   lower = max(p(rho -> sigma), Cd(rho) / Cc(sigma))
///   upper = min(Cd(rho) / Cd(sigma), Cc(rho) / Cc(sigma))
///
/// `upper` is empty (Unbounded) when sigma is incoherent; every ratio then
/// divides by zero and the rate is genuinely unbounded.  In that case the
/// Cd/Cc ratio is not used and `lower` is the single copy probability 1.
struct RateBounds {
    double lower = 0.0;
    std::optional<double> upper;
    LowerBoundSource lower_source = LowerBoundSource::SingleCopyProbability;
    UpperBoundSource upper_source = UpperBoundSource::Unbounded;

    bool bounded() const noexcept { return upper.has_value(); }
    /// Both bounds equal within tol, so the rate is known exactly.
    bool pinched(double tol = 1e-12) const noexcept { return upper && std::abs(*upper - lower) <= tol; }
};

RateBounds rate_bounds(const DensityMatrix& source, const DensityMatrix& target);

/// Sufficient condition for unit rate: sz^2 <= rz^2 and s == r (to 1e-12).
bool unit_rate(const BlochVector& source, const BlochVector& target);

/// Bounds on R(rho -> sigma) * R(sigma -> rho).  The true product is at most
/// `upper_product`; `lower_product` is the certified floor and never exceeds
/// one.  Throws FreeState if either state is incoherent.
struct ReversibilityBounds {
    double upper_product = 0.0;
    double lower_product = 0.0;
    /// upper_product < 1: the pair is provably irreversible.
    bool irreversible(double tol = 1e-12) const noexcept { return upper_product < 1.0 - tol; }
};

ReversibilityBounds reversibility_product(const DensityMatrix& source, const DensityMatrix& target);

/// One sample of the minimal-distillable-coherence curve, taken on the family
/// sigma = q |+><+| + (1 - q) |-><-|.
struct IrreversibilityPoint {
    double q = 0.0;
    double coherence_cost = 0.0;
    double distillable_coherence = 0.0;
};

/// Lower boundary of the (Cc, Cd) region, uniform in q from 1/2 down to 0,
/// so it runs from (0, 0) to (1, 1).  The upper boundary is the diagonal
/// Cd = Cc.
std::vector<IrreversibilityPoint> irreversibility_curve(std::size_t n_points);

/// Averages the z-rotated copy of rho (Bloch (r, 0, rz)) with its sigma_x
/// conjugate.  The result has Bloch vector (r, 0, 0): same coherence cost,
/// no larger distillable coherence.
DensityMatrix min_cd_projection(const DensityMatrix& state);

}  // namespace sqc
