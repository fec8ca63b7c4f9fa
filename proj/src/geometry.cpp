#include "sqc/geometry.hpp"

#include <algorithm>
#include <numbers>

#include <fmt/format.h>

namespace sqc {

std::string_view to_string(Constraint c) noexcept {
    switch (c) {
        case Constraint::Ellipsoid: return "Ellipsoid";
        case Constraint::Cylinder: return "Cylinder";
        case Constraint::Both: return "Both";
        case Constraint::None: return "None";
    }
    return "None";
}

namespace {

void require_valid(const BlochVector& v, const char* what) {
    if (!v.is_valid()) {
        throw Error(ErrorKind::InvalidBloch, fmt::format("{} Bloch vector has norm {:.17g}", what, v.norm()));
    }
}

void require_probability(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::InvalidProbability, fmt::format("p = {} not in (0, 1]", p));
    }
}

}  // namespace

ReachabilityVerdict reachable(const BlochVector& source, const BlochVector& target, double p, double tol) {
    require_valid(source, "source");
    require_valid(target, "target");
    require_probability(p);

    const double r2 = source.x * source.x + source.y * source.y;
    const double rz = std::abs(source.z);
    const double s2 = target.x * target.x + target.y * target.y;
    const double sz2 = target.z * target.z;

    ReachabilityVerdict v;
    v.ellipsoid_margin = r2 - r2 * sz2 - (1.0 - rz * rz) * s2;
    if (p < 1.0 - rz) {
        v.cylinder_margin = r2 - (1.0 - rz * rz) * s2;
    } else {
        v.cylinder_margin = r2 * (2.0 * p - (1.0 - rz)) / (1.0 + rz) - p * p * s2;
    }
    v.margin = std::min(v.ellipsoid_margin, v.cylinder_margin);
    v.reachable = v.margin >= -tol;

    const bool e = v.ellipsoid_margin <= tol;
    const bool c = v.cylinder_margin <= tol;
    v.binding = e && c ? Constraint::Both : e ? Constraint::Ellipsoid : c ? Constraint::Cylinder : Constraint::None;
    return v;
}

double max_probability(const BlochVector& source, const BlochVector& target) {
    require_valid(source, "source");
    require_valid(target, "target");

    const double r2 = source.x * source.x + source.y * source.y;
    const double rz = std::abs(source.z);
    const double s2 = target.x * target.x + target.y * target.y;
    const double sz2 = target.z * target.z;

    // Incoherent targets are prepared deterministically by dephasing and
    // incoherent relabelling.
    if (std::sqrt(s2) <= kStateTol) return 1.0;
    if (std::sqrt(r2) <= kStateTol) return 0.0;

    if (r2 * sz2 + (1.0 - rz * rz) * s2 > r2 + kBoundaryTol) return 0.0;

    const double root = std::sqrt(std::max(0.0, 1.0 - s2 * (1.0 - rz * rz) / r2));
    return std::min(r2 / ((1.0 + rz) * s2) * (1.0 + root), 1.0);
}

double transverse_cap(const BlochVector& source, double p) {
    require_valid(source, "source");
    require_probability(p);
    const double r = std::hypot(source.x, source.y);
    const double rz = std::abs(source.z);
    if (r <= kStateTol) return 0.0;
    const double tip = r / std::sqrt(1.0 - rz * rz);
    if (p < 1.0 - rz) return tip;
    const double cap = r * std::sqrt(std::max(0.0, 2.0 * p - (1.0 - rz))) / (p * std::sqrt(1.0 + rz));
    return std::min(tip, cap);
}

double ellipse_height(const BlochVector& source, double s) {
    const double r2 = source.x * source.x + source.y * source.y;
    const double rz = std::abs(source.z);
    if (r2 <= kStateTol * kStateTol) return s == 0.0 ? 1.0 : 0.0;
    return std::sqrt(std::max(0.0, 1.0 - (1.0 - rz * rz) * s * s / r2));
}

std::vector<CurvePoint> boundary_curve(const BlochVector& source, double p, std::size_t n_points) {
    require_valid(source, "source");
    require_probability(p);
    const double r = std::hypot(source.x, source.y);
    if (r <= kStateTol) {
        throw Error(ErrorKind::IncoherentSource, "boundary curve needs a coherent source");
    }
    if (n_points < 2) {
        throw Error(ErrorKind::DomainError, "boundary curve needs at least two points");
    }
    const double rz = std::abs(source.z);
    const double tip = r / std::sqrt(1.0 - rz * rz);
    const double cap = transverse_cap(source, p);
    // Ellipse parametrized as (tip sin u, cos u); the cap ends it at u_max.
    const double u_max = std::asin(std::min(1.0, cap / tip));

    std::vector<CurvePoint> curve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double u = u_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
        curve[i] = {tip * std::sin(u), std::cos(u)};
    }
    curve.back() = {cap, ellipse_height(source, cap)};
    return curve;
}

double discontinuity_gap(const BlochVector& source, const BlochVector& target) {
    require_valid(source, "source");
    require_valid(target, "target");
    const double r = std::hypot(source.x, source.y);
    if (r <= kStateTol) {
        throw Error(ErrorKind::InvalidSource, "source is incoherent");
    }
    if (source.norm() >= 1.0 - kStateTol) {
        throw Error(ErrorKind::InvalidSource, "source is pure; the jump only occurs for mixed sources");
    }
    const double rz = std::abs(source.z);
    const double tip = r / std::sqrt(1.0 - rz * rz);
    const double s_boundary = tip * std::sqrt(std::max(0.0, 1.0 - target.z * target.z));
    if (s_boundary <= kStateTol) return 1.0;
    return std::min(r * r / ((1.0 + rz) * s_boundary * s_boundary), 1.0);
}

}  // namespace sqc
