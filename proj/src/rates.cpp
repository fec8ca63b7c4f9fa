#include "sqc/rates.hpp"

#include <algorithm>

#include "sqc/geometry.hpp"
#include "sqc/measures.hpp"

namespace sqc {

std::string_view to_string(LowerBoundSource s) noexcept {
    return s == LowerBoundSource::SingleCopyProbability ? "SingleCopyProbability" : "CdOverCc";
}

std::string_view to_string(UpperBoundSource s) noexcept {
    switch (s) {
        case UpperBoundSource::CdRatio: return "CdRatio";
        case UpperBoundSource::CcRatio: return "CcRatio";
        case UpperBoundSource::Unbounded: return "Unbounded";
    }
    return "Unbounded";
}

RateBounds rate_bounds(const DensityMatrix& source, const DensityMatrix& target) {
    RateBounds rb;
    const double p = max_probability(to_bloch(source), to_bloch(target));
    if (is_incoherent(target)) {
        rb.lower = p;
        rb.lower_source = LowerBoundSource::SingleCopyProbability;
        return rb;
    }

    const double cd_src = distillable_coherence(source);
    const double cc_src = coherence_cost(source);
    const double cd_tgt = distillable_coherence(target);
    const double cc_tgt = coherence_cost(target);

    const double cd_over_cc = cd_src / cc_tgt;
    rb.lower = std::max(p, cd_over_cc);
    rb.lower_source = p >= cd_over_cc ? LowerBoundSource::SingleCopyProbability : LowerBoundSource::CdOverCc;

    const double cc_ratio = cc_src / cc_tgt;
    // A coherent qubit has Cd > 0, but keep the ratio finite if it rounds to 0.
    if (cd_tgt > 0.0 && cd_src / cd_tgt < cc_ratio) {
        rb.upper = cd_src / cd_tgt;
        rb.upper_source = UpperBoundSource::CdRatio;
    } else {
        rb.upper = cc_ratio;
        rb.upper_source = UpperBoundSource::CcRatio;
    }
    return rb;
}

bool unit_rate(const BlochVector& source, const BlochVector& target) {
    const double r = transverse_radius(source);
    const double s = transverse_radius(target);
    return target.z * target.z <= source.z * source.z && std::abs(s - r) <= kStateTol;
}

ReversibilityBounds reversibility_product(const DensityMatrix& source, const DensityMatrix& target) {
    if (is_incoherent(source) || is_incoherent(target)) {
        throw Error(ErrorKind::FreeState, "reversibility is only defined between coherent states");
    }
    const RateBounds fwd = rate_bounds(source, target);
    const RateBounds bwd = rate_bounds(target, source);
    return {*fwd.upper * *bwd.upper, fwd.lower * bwd.lower};
}

std::vector<IrreversibilityPoint> irreversibility_curve(std::size_t n_points) {
    if (n_points < 2) throw Error(ErrorKind::DomainError, "curve needs at least two points");
    std::vector<IrreversibilityPoint> curve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double q = 0.5 * static_cast<double>(n_points - 1 - i) / static_cast<double>(n_points - 1);
        curve[i].q = q;
        curve[i].coherence_cost = binary_entropy(0.5 * (1.0 + 2.0 * std::sqrt(q * (1.0 - q))));
        curve[i].distillable_coherence = 1.0 - binary_entropy(q);
    }
    return curve;
}

DensityMatrix min_cd_projection(const DensityMatrix& state) {
    const BlochVector r = to_bloch(state);
    const DensityMatrix rotated = from_bloch({transverse_radius(r), 0.0, r.z});
    const Matrix2c x = pauli_x();
    return DensityMatrix(0.5 * rotated.matrix() + 0.5 * x * rotated.matrix() * x);
}

}  // namespace sqc
