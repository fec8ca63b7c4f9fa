#include "sqc/kraus.hpp"

#include <algorithm>
#include <numbers>

#include <fmt/format.h>

namespace sqc {

std::string_view to_string(KrausClass c) noexcept {
    switch (c) {
        case KrausClass::General: return "General";
        case KrausClass::Incoherent: return "Incoherent";
        case KrausClass::StrictlyIncoherent: return "StrictlyIncoherent";
    }
    return "General";
}

KrausClass classify(const Matrix2c& op) noexcept {
    auto nz = [&](int i, int j) { return std::abs(op(i, j)) > kZeroEntryTol; };
    const bool columns_ok = !(nz(0, 0) && nz(1, 0)) && !(nz(0, 1) && nz(1, 1));
    if (!columns_ok) return KrausClass::General;
    const bool rows_ok = !(nz(0, 0) && nz(0, 1)) && !(nz(1, 0) && nz(1, 1));
    return rows_ok ? KrausClass::StrictlyIncoherent : KrausClass::Incoherent;
}

Matrix2c effect(std::span<const KrausOperator> ops) {
    Matrix2c e = Matrix2c::Zero();
    for (const auto& k : ops) e += k.matrix().adjoint() * k.matrix();
    return e;
}

Matrix2c branch_output(std::span<const KrausOperator> ops, const Matrix2c& rho) {
    Matrix2c out = Matrix2c::Zero();
    for (const auto& k : ops) out += k.matrix() * rho * k.matrix().adjoint();
    return out;
}

double Instrument::completeness_error() const {
    const Matrix2c total = effect(success) + effect(failure) - Matrix2c::Identity();
    return total.cwiseAbs().maxCoeff();
}

bool Instrument::success_strictly_incoherent() const noexcept {
    return std::all_of(success.begin(), success.end(), [](const auto& k) { return k.is_strictly_incoherent(); });
}

bool Instrument::strictly_incoherent() const noexcept {
    return success_strictly_incoherent() &&
           std::all_of(failure.begin(), failure.end(), [](const auto& k) { return k.is_strictly_incoherent(); });
}

KrausOperator complete(std::span<const KrausOperator> partial) {
    for (const auto& k : partial) {
        if (!k.is_strictly_incoherent()) {
            throw Error(ErrorKind::NotStrictlyIncoherent,
                        fmt::format("operator classified as {}", to_string(k.kind())));
        }
    }
    const Matrix2c e = effect(partial);
    const double top = Eigen::SelfAdjointEigenSolver<Matrix2c>(e, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    if (top > 1.0 + kStateTol) {
        throw Error(ErrorKind::NotSubnormalized, fmt::format("largest effect eigenvalue {:.17g}", top));
    }
    Matrix2c k = Matrix2c::Zero();
    for (int i = 0; i < 2; ++i) k(i, i) = std::sqrt(std::max(0.0, 1.0 - e(i, i).real()));
    return KrausOperator(k);
}

namespace {

bool is_zero_operator(const KrausOperator& k) { return k.matrix().cwiseAbs().maxCoeff() <= kZeroEntryTol; }

std::optional<DensityMatrix> normalized(const Matrix2c& out, double prob) {
    if (prob < kZeroBranchTol) return std::nullopt;
    const Matrix2c h = 0.5 * (out + out.adjoint());
    return DensityMatrix(h / h.trace().real());
}

}  // namespace

Instrument complete_instrument(KrausList success) {
    std::erase_if(success, is_zero_operator);
    Instrument inst;
    KrausOperator rest = complete(success);
    inst.success = std::move(success);
    if (!is_zero_operator(rest)) inst.failure.push_back(rest);
    return inst;
}

const DensityMatrix& BranchResult::success() const {
    if (!success_state) throw Error(ErrorKind::ZeroProbabilityBranch, "success branch has zero probability");
    return *success_state;
}

const DensityMatrix& BranchResult::failure() const {
    if (!failure_state) throw Error(ErrorKind::ZeroProbabilityBranch, "failure branch has zero probability");
    return *failure_state;
}

BranchResult apply(const Instrument& inst, const DensityMatrix& state) {
    const Matrix2c s = branch_output(inst.success, state.matrix());
    const Matrix2c f = branch_output(inst.failure, state.matrix());
    BranchResult res;
    res.success_probability = s.trace().real();
    res.success_state = normalized(s, res.success_probability);
    res.failure_state = normalized(f, f.trace().real());
    return res;
}

AngleWindow t_window(double p, double rz) {
    AngleWindow w;
    w.hi = std::asin(std::min(1.0, std::sqrt((1.0 - rz) / (2.0 * p))));
    w.lo = std::acos(std::min(1.0, std::sqrt((1.0 + rz) / (2.0 * p))));
    // The bounds coincide analytically at p = 1; keep rounding from inverting them.
    w.lo = std::min(w.lo, w.hi);
    return w;
}

namespace {

void require_canonical(const BlochVector& v) {
    if (!(std::abs(v.y) <= kStateTol && v.x > 0.0 && v.z >= 0.0 && v.is_valid())) {
        throw Error(ErrorKind::InvalidSource,
                    fmt::format("source ({}, {}, {}) is not canonical (need ry = 0, rx > 0, rz >= 0)", v.x, v.y, v.z));
    }
}

void require_angles(double t, double theta, double phi, double p, double rz) {
    constexpr double tol = 1e-12;
    constexpr double half_pi = std::numbers::pi / 2;
    if (!(p > 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::ParameterOutOfRange, fmt::format("p = {} not in (0, 1]", p));
    }
    if (!(theta >= -tol && theta <= half_pi + tol && std::abs(phi) <= theta + tol)) {
        throw Error(ErrorKind::ParameterOutOfRange,
                    fmt::format("angles theta = {}, phi = {} outside 0 <= theta <= pi/2, |phi| <= theta", theta, phi));
    }
    const AngleWindow w = t_window(p, rz);
    if (!(t >= -tol && t <= half_pi + tol && w.contains(t))) {
        throw Error(ErrorKind::ParameterOutOfRange,
                    fmt::format("t = {} outside its window [{}, {}] for p = {}", t, w.lo, w.hi, p));
    }
}

}  // namespace

SioParameters parametrize(double t, double theta, double phi, double p, const BlochVector& canonical_source) {
    require_canonical(canonical_source);
    const double rz = canonical_source.z;
    require_angles(t, theta, phi, p, rz);
    const double la = std::sqrt(2.0 * p / (1.0 + rz)) * std::cos(t);
    const double lb = std::sqrt(2.0 * p / (1.0 - rz)) * std::sin(t);
    SioParameters out{t, theta, phi, p, {}, {}};
    out.a = {la * std::cos(0.5 * (theta - phi)), la * std::sin(0.5 * (theta - phi)), 0.0};
    out.b = {lb * std::sin(0.5 * (theta + phi)), lb * std::cos(0.5 * (theta + phi)), 0.0};
    return out;
}

ForwardImage forward_map(const SioParameters& params, const BlochVector& source) {
    require_canonical(source);
    const double rz = source.z;
    require_angles(params.t, params.theta, params.phi, params.p, rz);
    const double st = std::sin(params.theta);
    ForwardImage img;
    img.p = params.p;
    img.target.x = source.x * std::sin(2.0 * params.t) * st / std::sqrt(1.0 - rz * rz);
    img.target.y = 0.0;
    img.target.z = std::cos(2.0 * params.t) * st * std::sin(params.phi) + std::cos(params.theta) * std::cos(params.phi);
    return img;
}

KrausList sio_kraus(const std::array<double, 3>& a, const std::array<Complex, 3>& b) {
    Matrix2c k1 = Matrix2c::Zero(), k2 = Matrix2c::Zero(), k3 = Matrix2c::Zero(), k4 = Matrix2c::Zero();
    k1(0, 0) = a[0];
    k1(1, 1) = b[0];
    k2(0, 1) = b[1];
    k2(1, 0) = a[1];
    k3(0, 0) = a[2];
    k4(0, 1) = b[2];
    KrausList ops{KrausOperator(k1), KrausOperator(k2), KrausOperator(k3), KrausOperator(k4)};
    std::erase_if(ops, is_zero_operator);
    return ops;
}

KrausList sio_kraus(const SioParameters& params) {
    return sio_kraus(params.a, {params.b[0], params.b[1], params.b[2]});
}

}  // namespace sqc
