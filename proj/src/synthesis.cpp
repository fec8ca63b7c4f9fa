#include <algorithm>
#include <numbers>

#include <fmt/format.h>

#include "sqc/geometry.hpp"
#include "sqc/kraus.hpp"
#include "sqc/measures.hpp"

namespace sqc {

namespace {

constexpr double kSynthesisResidual = 1e-9;

// Measure-and-prepare: any input goes to p * diag((1 + sz)/2, (1 - sz)/2).
KrausList incoherent_preparation(double p, double sz) {
    const double w0 = std::sqrt(p * 0.5 * (1.0 + sz));
    const double w1 = std::sqrt(p * 0.5 * (1.0 - sz));
    KrausList ops;
    for (int row = 0; row < 2; ++row) {
        for (int col = 0; col < 2; ++col) {
            Matrix2c k = Matrix2c::Zero();
            k(row, col) = row == 0 ? w0 : w1;
            if (std::abs(k(row, col)) > kZeroEntryTol) ops.emplace_back(k);
        }
    }
    return ops;
}

KrausList scaled(const KrausList& ops, double weight, const Matrix2c& left = Matrix2c::Identity()) {
    KrausList out;
    if (weight <= 0.0) return out;
    const double w = std::sqrt(weight);
    for (const auto& k : ops) out.emplace_back(w * left * k.matrix());
    return out;
}

// Success operators for canonical source (r, 0, rz) and canonical coherent
// target (s, 0, sz).  The boundary instrument at transverse radius s reaches
// the largest height of the ellipse; mixing it with its sigma_x mirror image
// (height negated) at fixed p and s lands on any sz in between.
KrausList coherent_success(const BlochVector& src, const BlochVector& tgt, double p) {
    const double r = src.x;
    const double rz = src.z;
    const double s = tgt.x;

    const AngleWindow w = t_window(p, rz);
    const double t = std::clamp(std::numbers::pi / 4, w.lo, w.hi);
    const double sin2t = std::sin(2.0 * t);
    const double sin_theta = std::min(1.0, s * std::sqrt(1.0 - rz * rz) / (r * sin2t));
    const double theta = std::asin(sin_theta);
    double phi = std::atan2(sin_theta * std::cos(2.0 * t), std::cos(theta));
    phi = std::clamp(phi, -theta, theta);

    const KrausList top = sio_kraus(parametrize(t, theta, phi, p, src));
    const Matrix2c rho = from_bloch(src).matrix();
    const Matrix2c out = branch_output(top, rho);
    const double height = (out(0, 0) - out(1, 1)).real() / out.trace().real();

    double lambda = 1.0;
    if (height > kStateTol) lambda = std::clamp(0.5 * (1.0 + tgt.z / height), 0.0, 1.0);

    KrausList ops = scaled(top, lambda);
    KrausList mirror = scaled(top, 1.0 - lambda, pauli_x());
    ops.insert(ops.end(), mirror.begin(), mirror.end());
    return ops;
}

}  // namespace

Instrument synthesize(const BlochVector& source, const BlochVector& target, double p) {
    const ReachabilityVerdict verdict = reachable(source, target, p);
    if (!verdict.reachable) {
        throw Error(ErrorKind::NotReachable,
                    fmt::format("target not reachable at p = {} (margin {:.3g})", p, verdict.margin));
    }
    const CanonicalForm cs = canonicalize(source);
    const CanonicalForm ct = canonicalize(target);

    const KrausList canonical_ops = ct.vector.x <= kStateTol ? incoherent_preparation(p, ct.vector.z)
                                                             : coherent_success(cs.vector, ct.vector, p);

    const Matrix2c us = cs.frame.unitary();
    const Matrix2c ut = ct.frame.unitary();
    KrausList success;
    success.reserve(canonical_ops.size());
    for (const auto& k : canonical_ops) success.emplace_back(ut.adjoint() * k.matrix() * us);

    Instrument inst = complete_instrument(std::move(success));

    const BranchResult res = apply(inst, from_bloch(source));
    const double dp = std::abs(res.success_probability - p);
    const double dist = res.success_state ? trace_distance(*res.success_state, from_bloch(target)) : 1.0;
    if (dp > kSynthesisResidual || dist > kSynthesisResidual) {
        throw Error(ErrorKind::NumericalFailure,
                    fmt::format("synthesized instrument misses target (probability error {:.3g}, trace distance {:.3g})",
                                dp, dist));
    }
    return inst;
}

Instrument pad(std::span<const KrausOperator> success, const DensityMatrix& source, const DensityMatrix& tau,
               double q) {
    if (!is_incoherent(tau)) {
        throw Error(ErrorKind::TauNotIncoherent, "padding state must be diagonal");
    }
    const KrausOperator rest = complete(success);
    const double p = branch_output(success, source.matrix()).trace().real();
    const double spare = std::max(0.0, 1.0 - p);
    if (!(q >= 0.0) || q > spare + kStateTol) {
        throw Error(ErrorKind::WeightTooLarge, fmt::format("q = {} exceeds the free weight {}", q, spare));
    }

    KrausList ops(success.begin(), success.end());
    if (q > 0.0 && spare > 0.0) {
        const double w = std::min(1.0, q / spare);
        for (int i = 0; i < 2; ++i) {
            const double tau_i = std::max(0.0, tau(i, i).real());
            for (int j = 0; j < 2; ++j) {
                Matrix2c steer = Matrix2c::Zero();
                steer(i, j) = std::sqrt(w * tau_i);
                ops.emplace_back(steer * rest.matrix());
            }
        }
    }
    return complete_instrument(std::move(ops));
}

}  // namespace sqc
