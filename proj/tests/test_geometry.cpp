#include <doctest.h>

#include <random>

#include "sqc/geometry.hpp"
#include "sqc/measures.hpp"
#include "sqc/sampling.hpp"

using namespace sqc;

namespace {

const BlochVector kFig1{0.6, 0.0, 0.7};
const BlochVector kEq17{0.5, 0.0, 1.0 / 3.0};
constexpr double kQc = 0.234834957055044678350;
constexpr double kTip = 0.840168050416805882118;     // 0.6 / sqrt(0.51)
constexpr double kCap065 = 0.707967682012957326471;  // cylinder at p = 0.65
constexpr double kBoundaryS = 0.530330085889910643301;  // 3 / (4 sqrt 2)

double sup_by_bisection(const BlochVector& s, const BlochVector& t) {
    if (reachable(s, t, 1.0, 0.0).reachable) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (reachable(s, t, mid, 0.0).reachable ? lo : hi) = mid;
    }
    return lo < 1e-15 ? 0.0 : lo;
}

}  // namespace

TEST_CASE("reachable: reference verdicts") {
    CHECK(reachable(kFig1, kFig1, 1.0).reachable);
    CHECK(reachable(kFig1, {0.84, 0, 0}, 0.3).reachable);
    CHECK_FALSE(reachable(kFig1, {0.84, 0, 0}, 1.0).reachable);
    for (double p : {1e-6, 0.01, 0.3, 0.7, 1.0}) {
        CHECK_FALSE(reachable(kEq17, {0.531, 0, 0}, p).reachable);
    }
    CHECK_THROWS_AS(reachable(kFig1, kFig1, 0.0), Error);
    CHECK_THROWS_AS(reachable(kFig1, kFig1, 1.5), Error);
}

TEST_CASE("reachable: binding constraints and margin sign") {
    const auto interior = reachable(kFig1, {0.1, 0, 0.1}, 1.0);
    CHECK(interior.binding == Constraint::None);
    CHECK(interior.margin > 0.0);

    const auto on_ellipse = reachable(kEq17, {0.3, 0, ellipse_height(kEq17, 0.3)}, 0.5);
    CHECK(on_ellipse.reachable);
    CHECK(on_ellipse.binding == Constraint::Ellipsoid);

    // Below the plateau an sz = 0 target meets both forms of the bound at once.
    CHECK(reachable(kEq17, {kBoundaryS, 0, 0}, 0.5).binding == Constraint::Both);

    const auto on_cap = reachable(kFig1, {0.6, 0, 0}, 1.0);
    CHECK(on_cap.reachable);
    CHECK(on_cap.binding == Constraint::Cylinder);

    const auto corner = reachable(kFig1, kFig1, 1.0);
    CHECK(corner.binding == Constraint::Both);

    const auto outside = reachable(kFig1, {0.84, 0, 0}, 1.0);
    CHECK(outside.margin < 0.0);
    CHECK(outside.margin == std::min(outside.ellipsoid_margin, outside.cylinder_margin));
}

TEST_CASE("reachable: cylinder ignored below 1 - |rz|") {
    // The joint form of the two inequalities would reject s = 0 for tiny p.
    CHECK(reachable(kFig1, {0, 0, 0.5}, 0.01).reachable);
    CHECK(reachable(kFig1, {0.8, 0, 0.1}, 0.2).reachable);
}

TEST_CASE("max_probability: reference values") {
    CHECK(std::abs(max_probability(kEq17, {-0.5, 0, 0}) - 1.0) <= 1e-12);
    // The square-root term amplifies the rounding of kBoundaryS to ~1e-8.
    CHECK(std::abs(max_probability(kEq17, {kBoundaryS, 0, 0}) - 2.0 / 3.0) <= 1e-7);
    CHECK(max_probability(kEq17, {0.6, 0, 0}) == 0.0);
    CHECK(max_probability(kEq17, {0, 0, -0.9}) == 1.0);
    CHECK(max_probability({0, 0, 0.5}, {0.1, 0, 0}) == 0.0);
    CHECK(max_probability({0, 0, 0.5}, {0, 0, 0.1}) == 1.0);
    CHECK(max_probability(kFig1, kFig1) == 1.0);
}

TEST_CASE("max_probability jumps at the critical q") {
    const double below = 1.0 - 2.0 * (kQc - 1e-6), above = 1.0 - 2.0 * (kQc + 1e-6);
    CHECK(max_probability(kEq17, {-below, 0, 0}) == 0.0);
    const double p = max_probability(kEq17, {-above, 0, 0});
    CHECK(p >= 2.0 / 3.0);
    CHECK(p == doctest::Approx(0.668502611221332177700).epsilon(1e-12));
}

TEST_CASE("transverse cap and boundary curve") {
    CHECK(transverse_cap(kFig1, 0.3) == doctest::Approx(kTip).epsilon(1e-14));
    CHECK(transverse_cap(kFig1, 0.01) == doctest::Approx(kTip).epsilon(1e-14));
    CHECK(transverse_cap(kFig1, 0.65) == doctest::Approx(kCap065).epsilon(1e-14));
    // At p = 1 the cylinder reduces to s <= r.
    CHECK(transverse_cap(kFig1, 1.0) == doctest::Approx(0.6).epsilon(1e-14));

    const auto c03 = boundary_curve(kFig1, 0.3, 257);
    CHECK(c03.front().s == 0.0);
    CHECK(c03.front().sz == 1.0);
    CHECK(c03.back().s == doctest::Approx(kTip).epsilon(1e-14));
    CHECK(std::abs(c03.back().sz) < 1e-7);
    for (const auto& pt : c03) {
        CHECK(std::abs(pt.sz - ellipse_height(kFig1, pt.s)) < 1e-12);
    }

    const auto c1 = boundary_curve(kFig1, 1.0, 2);
    REQUIRE(c1.size() == 2);
    CHECK(c1[1].s == doctest::Approx(0.6));
    CHECK(c1[1].sz == doctest::Approx(0.7));

    CHECK_THROWS_AS(boundary_curve({0, 0, 0.4}, 0.5, 10), Error);
    CHECK_THROWS_AS(boundary_curve(kFig1, 0.5, 1), Error);
}

TEST_CASE("curves below the plateau are identical") {
    const auto a = boundary_curve(kFig1, 0.3, 64), b = boundary_curve(kFig1, 0.01, 64);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].s == b[i].s);
        CHECK(a[i].sz == b[i].sz);
    }
}

TEST_CASE("discontinuity gap") {
    CHECK(discontinuity_gap(kEq17, {kBoundaryS, 0, 0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(discontinuity_gap(kFig1, {kTip, 0, 0}) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_THROWS_AS(discontinuity_gap({1, 0, 0}, {0.5, 0, 0}), Error);
    CHECK_THROWS_AS(discontinuity_gap({0, 0, 0.5}, {0.5, 0, 0}), Error);
}

TEST_CASE("property: monotone in p and plateau below 1 - |rz|") {
    std::mt19937_64 eng(23);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const BlochVector s = random_coherent_bloch(eng), t = random_bloch(eng);
        const double p = 1e-6 + (1 - 1e-6) * unif(eng), p2 = p * unif(eng) + 1e-9;
        if (reachable(s, t, p).reachable) REQUIRE(reachable(s, t, p2).reachable);
        const double floor = 1.0 - std::abs(s.z);
        REQUIRE(reachable(s, t, floor).reachable == reachable(s, t, floor * (0.001 + 0.998 * unif(eng))).reachable);
    }
}

TEST_CASE("property: max_probability is the supremum of the predicate") {
    std::mt19937_64 eng(29);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const BlochVector s = random_coherent_bloch(eng), t = random_bloch(eng);
        worst = std::max(worst, std::abs(max_probability(s, t) - sup_by_bisection(s, t)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("property: invariance under simultaneous free symmetries") {
    std::mt19937_64 eng(31);
    std::uniform_real_distribution<double> angle(-3.1, 3.1), unif(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const BlochVector s = random_coherent_bloch(eng), t = random_bloch(eng);
        const SymmetryFrame f{angle(eng), (i & 1) != 0, (i & 2) != 0};
        const double p = 0.05 + 0.95 * unif(eng);
        worst = std::max(worst, std::abs(max_probability(s, t) - max_probability(f.apply(s), f.apply(t))));
        const auto a = reachable(s, t, p), b = reachable(f.apply(s), f.apply(t), p);
        REQUIRE(std::abs(a.margin - b.margin) < 1e-12);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("property: measure bound on the single-copy probability") {
    std::mt19937_64 eng(37);
    for (int i = 0; i < 10000; ++i) {
        const DensityMatrix rho = from_bloch(random_coherent_bloch(eng)), sigma = from_bloch(random_coherent_bloch(eng));
        const double p = max_probability(to_bloch(rho), to_bloch(sigma));
        REQUIRE(p <= l1_coherence(rho) / l1_coherence(sigma) + 1e-12);
        REQUIRE(p <= distillable_coherence(rho) / distillable_coherence(sigma) + 1e-12);
    }
}

TEST_CASE("property: pure sources reach every state with positive probability") {
    std::mt19937_64 eng(41);
    for (int i = 0; i < 2000; ++i) {
        const BlochVector s = random_pure_bloch(eng, 1e-2), t = random_bloch(eng);
        REQUIRE(max_probability(s, t) > 0.0);
    }
}
