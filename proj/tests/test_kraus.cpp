#include <doctest.h>

#include <numbers>
#include <random>

#include "sqc/geometry.hpp"
#include "sqc/kraus.hpp"
#include "sqc/sampling.hpp"

using namespace sqc;

namespace {

Matrix2c mat(Complex a, Complex b, Complex c, Complex d) {
    Matrix2c m;
    m << a, b, c, d;
    return m;
}

constexpr double kHalfPi = std::numbers::pi / 2;

}  // namespace

TEST_CASE("classify sparsity patterns") {
    CHECK(classify(mat(0.3, 0, 0, 0.8)) == KrausClass::StrictlyIncoherent);
    CHECK(classify(mat(0, 0.4, 0.2, 0)) == KrausClass::StrictlyIncoherent);
    CHECK(classify(mat(0.5, 0, 0, 0)) == KrausClass::StrictlyIncoherent);
    CHECK(classify(mat(1, 1, 0, 0)) == KrausClass::Incoherent);
    CHECK(classify(mat(1, 0, 1, 0)) == KrausClass::General);
    CHECK(classify(Matrix2c::Identity() / std::sqrt(2.0) + mat(0, 0, 0, 0)) == KrausClass::StrictlyIncoherent);
    CHECK(classify(mat(0.5, 1e-13, 0, 0.5)) == KrausClass::StrictlyIncoherent);
    CHECK(to_string(KrausClass::Incoherent) == "Incoherent");
}

TEST_CASE("complete") {
    const KrausList ident{KrausOperator(Matrix2c::Identity())};
    CHECK(complete(ident).matrix().norm() < 1e-15);
    CHECK((complete(KrausList{}).matrix() - Matrix2c::Identity()).norm() < 1e-15);
    const double h = std::sqrt(0.5);
    const KrausList half{KrausOperator(mat(h, 0, 0, h))};
    CHECK((complete(half).matrix() - mat(h, 0, 0, h)).norm() < 1e-15);

    try {
        complete(KrausList{KrausOperator(mat(1, 1, 0, 0))});
        FAIL("expected NotStrictlyIncoherent");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotStrictlyIncoherent);
    }
    try {
        complete(KrausList{KrausOperator(mat(1.1, 0, 0, 0.2))});
        FAIL("expected NotSubnormalized");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotSubnormalized);
    }
}

TEST_CASE("apply") {
    const DensityMatrix rho = from_bloch({0.5, 0, 1.0 / 3.0});
    const BranchResult id = apply(Instrument{{KrausOperator(Matrix2c::Identity())}, {}}, rho);
    CHECK(id.success_probability == doctest::Approx(1.0));
    CHECK((id.success().matrix() - rho.matrix()).norm() < 1e-15);
    CHECK_FALSE(id.failure_state.has_value());
    CHECK_THROWS_AS(id.failure(), Error);

    const Instrument k3 = complete_instrument({KrausOperator(mat(1, 0, 0, 0))});
    const BranchResult r = apply(k3, rho);
    CHECK(r.success_probability == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(r.success()(0, 0).real() - 1.0) < 1e-14);
    CHECK(std::abs(r.failure()(1, 1).real() - 1.0) < 1e-14);
    CHECK(k3.completeness_error() < 1e-15);
    CHECK(k3.strictly_incoherent());
}

TEST_CASE("t window and parameter checks") {
    const AngleWindow plateau = t_window(0.3, 0.7);
    CHECK(plateau.lo == 0.0);
    CHECK(plateau.hi == doctest::Approx(kHalfPi / 2));
    const AngleWindow full = t_window(0.01, 0.7);
    CHECK(full.lo == 0.0);
    CHECK(full.hi == doctest::Approx(kHalfPi));
    const AngleWindow tight = t_window(1.0, 0.7);
    CHECK(tight.lo <= tight.hi + 1e-15);
    CHECK(std::cos(tight.lo) == doctest::Approx(std::sqrt(0.85)));

    const BlochVector src{0.6, 0, 0.7};
    CHECK_THROWS_AS(parametrize(0.1, 0.5, 0.0, 1.0, src), Error);
    CHECK_THROWS_AS(parametrize(0.8, 0.5, 0.6, 0.5, src), Error);
    CHECK_THROWS_AS(parametrize(0.8, 0.5, 0.0, 0.5, {0.6, 0.1, 0.7}), Error);
    CHECK_THROWS_AS(parametrize(0.8, 0.5, 0.0, 0.5, {0.6, 0.0, -0.7}), Error);
    try {
        parametrize(0.8, 2.0, 0.0, 0.5, src);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParameterOutOfRange);
    }
}

TEST_CASE("forward_map reference images") {
    const BlochVector src{0.6, 0, 0.7};
    SUBCASE("sin 2t = 0") {
        const ForwardImage img = forward_map(parametrize(0.0, 0.9, 0.0, 0.2, src), src);
        CHECK(std::abs(img.target.x) < 1e-15);
        CHECK(img.target.z == doctest::Approx(std::cos(0.9)));
    }
    SUBCASE("theta = 0") {
        const ForwardImage img = forward_map(parametrize(0.5, 0.0, 0.0, 0.5, src), src);
        CHECK(img.target.x == 0.0);
        CHECK(img.target.z == 1.0);
    }
    SUBCASE("optimal phi lands on the ellipse") {
        for (double t : {0.2, 0.5, 0.785}) {
            for (double theta : {0.2, 0.7, 1.3}) {
                const double phi = std::atan2(std::sin(theta) * std::cos(2 * t), std::cos(theta));
                const ForwardImage img = forward_map(parametrize(t, theta, phi, 0.3, src), src);
                CHECK(std::abs(img.target.z - ellipse_height(src, img.target.x)) < 1e-12);
            }
        }
    }
}

TEST_CASE("property: closed-form image equals the Kraus output") {
    std::mt19937_64 eng(43);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        BlochVector src = canonicalize(random_coherent_bloch(eng)).vector;
        const double p = 1e-3 + (1 - 1e-3) * unif(eng);
        const AngleWindow w = t_window(p, src.z);
        const double t = w.lo + (w.hi - w.lo) * unif(eng);
        const double theta = kHalfPi * unif(eng);
        const double phi = theta * (2 * unif(eng) - 1);
        const SioParameters params = parametrize(t, theta, phi, p, src);
        const ForwardImage img = forward_map(params, src);
        const Matrix2c out = branch_output(sio_kraus(params), from_bloch(src).matrix());
        const double tr = out.trace().real();
        worst = std::max({worst, std::abs(tr - p), std::abs(2 * out(0, 1).real() / tr - img.target.x),
                          std::abs(2 * out(0, 1).imag() / tr), std::abs((out(0, 0) - out(1, 1)).real() / tr - img.target.z)});
        const double la2 = params.a[0] * params.a[0] + params.a[1] * params.a[1];
        const double lb2 = params.b[0] * params.b[0] + params.b[1] * params.b[1];
        REQUIRE(la2 <= 1.0 + 1e-12);
        REQUIRE(lb2 <= 1.0 + 1e-12);
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("property: forward images are reachable") {
    std::mt19937_64 eng(47);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::size_t violations = 0;
    for (int i = 0; i < 100000; ++i) {
        const BlochVector src = canonicalize(random_coherent_bloch(eng)).vector;
        const double p = 1e-3 + (1 - 1e-3) * unif(eng);
        const AngleWindow w = t_window(p, src.z);
        const double t = w.lo + (w.hi - w.lo) * unif(eng);
        const double theta = kHalfPi * unif(eng);
        const double phi = theta * (2 * unif(eng) - 1);
        const ForwardImage img = forward_map(parametrize(t, theta, phi, p, src), src);
        if (!reachable(src, img.target, img.p, 1e-9).reachable) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("property: phi optimisation reproduces the ellipse height") {
    const BlochVector src{0.6, 0, 0.7};
    const double p = 0.3;
    const AngleWindow w = t_window(p, src.z);
    for (double target_s : {0.1, 0.3, 0.5, 0.7, 0.8}) {
        // Maximize sz over (t, phi) with theta solved from s at each t.
        double best = -2.0;
        for (int i = 0; i <= 400; ++i) {
            const double t = w.lo + (w.hi - w.lo) * i / 400.0;
            const double sin_theta = target_s * std::sqrt(1 - src.z * src.z) / (src.x * std::sin(2 * t));
            if (!(sin_theta <= 1.0)) continue;
            const double theta = std::asin(sin_theta);
            // sz is unimodal in phi on [-theta, theta].
            double lo = -theta, hi = theta;
            auto sz = [&](double phi) { return forward_map(parametrize(t, theta, phi, p, src), src).target.z; };
            for (int k = 0; k < 200; ++k) {
                const double m1 = lo + (hi - lo) * 0.381966, m2 = hi - (hi - lo) * 0.381966;
                if (sz(m1) < sz(m2)) {
                    lo = m1;
                } else {
                    hi = m2;
                }
            }
            best = std::max(best, sz(0.5 * (lo + hi)));
        }
        CHECK(std::abs(best - ellipse_height(src, target_s)) < 1e-9);
    }
}

TEST_CASE("property: completion is diagonal with entries in [0, 1]") {
    std::mt19937_64 eng(53);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = unif(eng), b = unif(eng), scale = std::sqrt(unif(eng) / 2);
        const KrausList ops{KrausOperator(scale * mat(a, 0, 0, b)), KrausOperator(scale * mat(0, b, a, 0))};
        const Matrix2c k = complete(ops).matrix();
        REQUIRE(k(0, 1) == Complex(0, 0));
        REQUIRE(k(1, 0) == Complex(0, 0));
        for (int d = 0; d < 2; ++d) {
            REQUIRE(k(d, d).imag() == 0.0);
            REQUIRE(k(d, d).real() >= 0.0);
            REQUIRE(k(d, d).real() <= 1.0);
        }
        Matrix2c total = k.adjoint() * k;
        for (const auto& op : ops) total += op.matrix().adjoint() * op.matrix();
        REQUIRE((total - Matrix2c::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("property: incoherent qubit operators are strictly incoherent or fully dephasing") {
    std::mt19937_64 eng(59);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_int_distribution<int> row(0, 1);
    for (int i = 0; i < 5000; ++i) {
        Matrix2c k = Matrix2c::Zero();
        for (int col = 0; col < 2; ++col) k(row(eng), col) = Complex(g(eng), g(eng));
        REQUIRE(classify(k) != KrausClass::General);
        if (classify(k) == KrausClass::StrictlyIncoherent) continue;
        const DensityMatrix rho = random_state(eng);
        const Matrix2c out = k * rho.matrix() * k.adjoint();
        REQUIRE(std::abs(out(0, 1)) <= 1e-12 * (1 + out.norm()));
    }
}
