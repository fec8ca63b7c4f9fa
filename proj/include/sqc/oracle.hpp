#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sqc/geometry.hpp"
#include "sqc/qubit.hpp"

namespace sqc {

/// Brute-force counterparts of the closed forms.  Nothing here calls the
/// reachability formulas; outputs come from applying explicit Kraus operators
/// to the source state.
///
/// Each kernel has an OpenMP implementation and a plain serial reference.
/// Both draw the same random numbers (per-chunk seeded engines), so each is
/// independent of thread count and the two agree up to rounding.
enum class Execution { Serial, Parallel };

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2018u;

struct SweepConfig {
    std::size_t grid_density = 200;        ///< points per (t, theta, phi) axis
    std::size_t n_random_samples = 100000; ///< raw (a, b) probes incl. complex b1, b2
    std::uint64_t rng_seed = kDefaultSeed;
    double slack_tolerance = 1e-6;

    /// Throws InvalidConfig unless grid_density >= 8 and slack > 0.
    void validate() const;
};

struct SweepPoint {
    double s = 0.0;   ///< transverse radius of the output
    double sz = 0.0;  ///< z coordinate of the output
    double p = 0.0;   ///< success probability at which it was produced

    friend auto operator<=>(const SweepPoint&, const SweepPoint&) = default;
};

struct RegionEstimate {
    std::vector<SweepPoint> reachable_points;
    SweepConfig config;
};

/// Evaluates every grid instrument and random probe at success probability p
/// on the canonical form of `source`.  Grid instruments use real b and
/// a3 = b3 = 0 with t inside its window, theta in [0, pi/2] and
/// phi in [-theta, theta].  Random probes draw t in the window and arbitrary
/// directions for (a1, a2, a3) and complex (b1, b2), real b3, subject to
/// a2 Im(b2) = a1 Im(b1).  Points are stored in evaluation order: grid first
/// (t major, phi minor), then probes.
/// Throws IncoherentSource, InvalidProbability, InvalidConfig.
RegionEstimate sweep_region(const BlochVector& source, double p, const SweepConfig& config,
                            Execution exec = Execution::Parallel);

/// Number of bins per axis used to thin a sweep to its frontier.
inline constexpr std::size_t kFrontierBins = 2048;

/// Frontier of a sweep folded to sz >= 0.  Candidates are, for every s-bin,
/// the point with the largest |sz| and, for every |sz|-bin, the point with the
/// largest s.  A candidate is kept unless another one exceeds it by more than
/// one bin width in both s and |sz|, so the result traces the outer boundary
/// including its vertical part.  Returned sorted and deduplicated, with sz
/// replaced by |sz|.
std::vector<SweepPoint> frontier(std::span<const SweepPoint> points);

/// Same as frontier(sweep_region(...).reachable_points) without storing the
/// full sweep, so densities beyond a few hundred fit in memory.
std::vector<SweepPoint> sweep_frontier(const BlochVector& source, double p, const SweepConfig& config,
                                       Execution exec = Execution::Parallel);

/// Analytic outer boundary in the folded (s, |sz|) quadrant: the upper ellipse
/// arc followed by the vertical cap segment down to sz = 0.
std::vector<CurvePoint> reference_frontier(const BlochVector& source, double p, std::size_t n_points);

/// Symmetric Hausdorff distance between two finite point sets.
double hausdorff_distance(std::span<const CurvePoint> a, std::span<const CurvePoint> b);

/// Maximal success probability found by bisection on p.  At each p the target
/// counts as attained when some sweep instrument output dominates it in the
/// folded quadrant, s' >= s and |sz'| >= |sz| (within 2 * slack): at fixed p
/// the reachable set is convex, symmetric under sz -> -sz and contains the
/// incoherent axis, so a dominating output implies the target.  The search
/// seeds from a coarse grid and refines the best seeds by shrinking local
/// grids.  Throws IncoherentSource.
double oracle_max_probability(const BlochVector& source, const BlochVector& target, const SweepConfig& config,
                              Execution exec = Execution::Parallel);

/// Coherence of formation by direct minimization of sum_i p_i S(dephase(psi_i))
/// over pure-state decompositions rho = sum_i psi_i psi_i^dagger built from the
/// eigendecomposition and an isometry with 2, 3 or 4 rows.  Each cardinality
/// gets max(4, grid_density / 8) seeded random starts refined by Nelder-Mead.
/// The result is an upper bound on the true minimum.
double oracle_coherence_of_formation(const DensityMatrix& state, const SweepConfig& config,
                                     Execution exec = Execution::Parallel);

}  // namespace sqc
