#pragma once

#include <string_view>
#include <vector>

#include "sqc/qubit.hpp"

namespace sqc {

/// Slack allowed on the reachability inequalities.
inline constexpr double kBoundaryTol = 1e-12;

enum class Constraint { Ellipsoid, Cylinder, Both, None };
std::string_view to_string(Constraint c) noexcept;

/// Outcome of the reachability test.  The two margins are the signed slacks
///   ellipsoid: r^2 - r^2 sz^2 - (1 - rz^2) s^2
///   cylinder : r^2 (2p - (1 - |rz|)) / (1 + |rz|) - p^2 s^2   for p >= 1 - |rz|
///              r^2 - (1 - rz^2) s^2                          for p <  1 - |rz|
/// `margin` is the smaller of the two and `binding` names every constraint
/// whose slack is within the tolerance (or negative).
struct ReachabilityVerdict {
    bool reachable = false;
    Constraint binding = Constraint::None;
    double margin = 0.0;
    double ellipsoid_margin = 0.0;
    double cylinder_margin = 0.0;
};

/// Whether `target` can be produced from `source` by a stochastic SIO/IO
/// instrument succeeding with probability `p`.  Throws InvalidProbability
/// unless 0 < p <= 1, InvalidBloch for unphysical vectors.
ReachabilityVerdict reachable(const BlochVector& source, const BlochVector& target, double p,
                              double tol = kBoundaryTol);

/// Largest success probability of the conversion.  Incoherent targets give 1,
/// coherent targets of an incoherent source give 0.
double max_probability(const BlochVector& source, const BlochVector& target);

/// Largest transverse radius reachable at probability p (ellipse tip limited
/// by the p dependent cap).  Zero for incoherent sources.
double transverse_cap(const BlochVector& source, double p);

/// Upper boundary sz of the ellipse at transverse radius s (clamped at 0).
double ellipse_height(const BlochVector& source, double s);

struct CurvePoint {
    double s = 0.0;
    double sz = 0.0;
};

/// Upper (sz >= 0) boundary of the reachable region in the (s, sz) plane,
/// from (0, 1) to (transverse_cap, ellipse_height(transverse_cap)).  Points
/// are spaced uniformly in the ellipse's angular parameter so the steep part
/// near the tip is sampled as finely as the flat part.  The region is
/// symmetric under sz -> -sz.
std::vector<CurvePoint> boundary_curve(const BlochVector& source, double p, std::size_t n_points);

/// Smallest nonzero value of max_probability for targets at the target's
/// height sz: the value on the ellipse boundary, r^2 / ((1 + |rz|) s_b^2),
/// where s_b is the boundary radius at that height.  Targets outside the
/// ellipse have probability 0, so this is the size of the jump.
double discontinuity_gap(const BlochVector& source, const BlochVector& target);

}  // namespace sqc
