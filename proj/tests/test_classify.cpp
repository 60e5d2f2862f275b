#include <doctest.h>

#include <cmath>
#include <random>

#include "singulab/classify.hpp"
#include "singulab/constants.hpp"
#include "singulab/construct.hpp"
#include "singulab/error.hpp"

using namespace singulab;
using doctest::Approx;

namespace {

Trajectory exact(const Params& p, double lo, double hi, std::function<double(double)> u,
                 std::function<double(double)> ur, std::size_t n = 400) {
    return sample_function(p, lo, hi, n, [&](double r) { return RadialSample{r, u(r), ur(r), 0.0}; });
}

}  // namespace

TEST_CASE("fit recovers amplitude and constant") {
    const Params p = Params::make(3, 1.2, 1.0);
    const auto t = exact(p, 1e-6, 1e-4, [](double r) { return -2.5 / r + 0.7; },
                         [](double r) { return 2.5 / (r * r); });
    const AsymptoticFit f = fit_asymptotics(t, {1e-6, 1e-4}, Basis::PowNminus2);
    CHECK(f.amplitude == Approx(-2.5).epsilon(1e-10));
    CHECK(f.constant == Approx(0.7).epsilon(1e-6));
    CHECK(f.rms_residual < 1e-10 * 2.5e6);  // |u| reaches 2.5e6
    CHECK(f.exponent == 1.0);
}

TEST_CASE("PowBeta exponent from the log-log slope") {
    const Params p = Params::make(3, 1.6, 1.0);
    const auto t = sample_profile(ProfileKind::Riccati, p, 1e-6, 1e-4, 200);
    const AsymptoticFit f = fit_asymptotics(t, {1e-6, 1e-4}, Basis::PowBeta);
    CHECK(f.exponent == Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(f.amplitude == Approx(lambda_nmq(p)).epsilon(1e-10));
}

TEST_CASE("window must lie inside the trajectory") {
    const Params p = Params::make(3, 1.6, 1.0);
    const auto t = sample_profile(ProfileKind::Riccati, p, 1e-6, 1e-4, 200);
    CHECK_THROWS_AS(fit_asymptotics(t, {1e-7, 1e-4}, Basis::PowBeta), InsufficientWindow);
    CHECK_THROWS_AS(fit_asymptotics(t, {1e-5, 1e-5}, Basis::PowBeta), InsufficientWindow);
    ClassifyThresholds th;
    th.window = Window{1e-6, 1e-5};
    CHECK_THROWS_AS(classify_origin(t, p, th), InsufficientWindow);  // span 10 < 100
}

TEST_CASE("origin classification of exact families") {
    SUBCASE("removable") {
        const Params p = Params::make(3, 1.6, 1.0);
        const auto t = exact(p, 1e-6, 1e-4, [](double r) { return 0.3 - r * r / 6; },
                             [](double r) { return -r / 3; });
        const Regime g = classify_origin(t, p);
        CHECK(g.kind == RegimeKind::Removable);
        CHECK(g.estimate == Approx(0.3));
    }
    SUBCASE("emden") {
        const Params p = Params::make(3, 1.2, 1.0);
        const auto t = sample_profile(ProfileKind::Emden, p, 1e-6, 1e-4, 300);
        const Regime g = classify_origin(t, p);
        CHECK(g.kind == RegimeKind::EmdenType);
        CHECK(g.estimate == Approx(std::log(2.0)));
    }
    SUBCASE("weak") {
        const Params p = Params::make(3, 1.2, 1.0);
        const auto t = exact(p, 1e-6, 1e-4, [](double r) { return -0.8 / r; },
                             [](double r) { return 0.8 / (r * r); });
        const Regime g = classify_origin(t, p);
        CHECK(g.kind == RegimeKind::WeakSingular);
        CHECK(g.estimate == Approx(-0.8));
    }
    SUBCASE("strong") {
        const Params p = Params::make(3, 1.6, 1.0);
        const Regime g = classify_origin(sample_profile(ProfileKind::Riccati, p, 1e-6, 1e-4, 300), p);
        CHECK(g.kind == RegimeKind::StrongSingular);
        CHECK(g.estimate == Approx(-0.2403749283845681).epsilon(1e-10));
    }
    SUBCASE("critical") {
        const Params p = Params::make(3, 1.5, 1.0);
        const Regime g = classify_origin(sample_profile(ProfileKind::CriticalLog, p, 1e-8, 1e-6, 300), p);
        CHECK(g.kind == RegimeKind::CriticalLog);
        CHECK(g.estimate == Approx(-4.0).epsilon(1e-10));
    }
    SUBCASE("hoelder") {
        const Params p = Params::make(3, 3.0, 1.0);
        const double c = std::sqrt(1.5);
        const auto t = exact(p, 1e-6, 1e-4, [c](double r) { return -0.4 + 2 * c * std::sqrt(r); },
                             [c](double r) { return c / std::sqrt(r); });
        const Regime g = classify_origin(t, p);
        CHECK(g.kind == RegimeKind::HolderRegular);
        CHECK(g.estimate == Approx(-0.4).epsilon(1e-8));
        REQUIRE(g.secondary);
        CHECK(*g.secondary == Approx(c));
    }
    SUBCASE("eikonal") {
        const Params p = Params::make(3, 3.0, 2.0);
        const Regime g = classify_origin(sample_profile(ProfileKind::Eikonal, p, 1e-6, 1e-4, 300), p);
        CHECK(g.kind == RegimeKind::EikonalType);
        CHECK(g.estimate == Approx(54.0).epsilon(1e-10));
    }
}

TEST_CASE("infinity classification") {
    SUBCASE("eikonal for q < 2") {
        const Params p = Params::make(3, 1.5, 2.0);
        const Regime g = classify_infinity(sample_profile(ProfileKind::Eikonal, p, 10, 1e5, 300), p);
        CHECK(g.kind == RegimeKind::EikonalType);
        CHECK(g.side == Side::Infinity);
        CHECK(g.estimate == Approx(3.674234614174767).epsilon(1e-10));
    }
    SUBCASE("emden for q > 2") {
        const Params p = Params::make(3, 3.0, 1.0);
        const Regime g = classify_infinity(sample_profile(ProfileKind::Emden, p, 10, 1e5, 300), p);
        CHECK(g.kind == RegimeKind::EmdenType);
        CHECK(g.estimate == Approx(std::log(2.0)));
    }
    SUBCASE("bounded") {
        const Params p = Params::make(3, 3.0, 1.0);
        const auto t = exact(p, 10, 1e5, [](double r) { return -1.0 + 2.0 / r; },
                             [](double r) { return -2.0 / (r * r); });
        const Regime g = classify_infinity(t, p);
        CHECK(g.kind == RegimeKind::Removable);
        CHECK(g.estimate == Approx(-1.0));
    }
    SUBCASE("needs r >= 2") {
        const Params p = Params::make(3, 1.5, 1.0);
        ClassifyThresholds th;
        th.window = Window{1.0, 1000.0};
        CHECK_THROWS_AS(classify_infinity(sample_profile(ProfileKind::Eikonal, p, 1, 1e5, 300), p, th),
                        InsufficientWindow);
    }
}

TEST_CASE("gates outside the theorems") {
    const Params quad = Params::make(3, 2.0, 1.0);
    const auto t = sample_profile(ProfileKind::Emden, quad, 1e-6, 1e-4, 100);
    CHECK_THROWS_AS(classify_origin(t, quad), RegimeError);
    const Params two = Params::make(2, 1.5, 1.0);
    CHECK_THROWS_AS(classify_origin(t, two), RegimeError);
}

TEST_CASE("ambiguous data is reported") {
    // pure noise fits every candidate equally badly
    const Params p = Params::make(3, 1.6, 1.0);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> noise(-1.0, 1.0);
    const auto t = exact(p, 1e-6, 1e-4, [&](double) { return noise(rng); }, [](double) { return 0.0; }, 200);
    CHECK_THROWS_AS(classify_origin(t, p), Ambiguous);
}

TEST_CASE("wrong-sign estimates are rejected") {
    // a positive r^{-β} profile fits StrongSingular best but violates the sign invariant
    const Params p = Params::make(3, 1.6, 1.0);
    const auto t = exact(p, 1e-6, 1e-4, [](double r) { return 0.24 * std::pow(r, -2.0 / 3.0); },
                         [](double r) { return -0.16 * std::pow(r, -5.0 / 3.0); });
    CHECK_THROWS_AS(classify_origin(t, p), Ambiguous);
}

TEST_CASE("estimates are stable under grid refinement") {
    const Params p = Params::make(3, 1.6, 1.0);
    const Trajectory g = grow(p, {SeedKind::StrongSingular, 0.0, 1e-6}, 1e-2);
    ClassifyThresholds a, b;
    b.resample = 256;
    const double e1 = classify_origin(g, p, a).estimate, e2 = classify_origin(g, p, b).estimate;
    CHECK(std::abs(e1 - e2) < 1e-6);
}

TEST_CASE("classifying grown trajectories") {
    const Params p = Params::make(3, 1.2, 1.0);
    const Regime w = classify_origin(grow(p, {SeedKind::WeakSingular, -1.0, 1e-5}, 0.1), p);
    CHECK(w.kind == RegimeKind::WeakSingular);
    CHECK(w.estimate == Approx(-1.0).epsilon(0.02));
    const Params q3 = Params::make(3, 3.0, 1.0);
    const Regime h = classify_origin(grow(q3, {SeedKind::HolderSingular, 0.0, 1e-2}, 1e-7), q3);
    CHECK(h.kind == RegimeKind::HolderRegular);
    const Regime e = classify_origin(grow(q3, {SeedKind::EikonalSingular, 0.0, 1e-5}, 0.1), q3);
    CHECK(e.kind == RegimeKind::EikonalType);
    CHECK(e.estimate == Approx(27.0).epsilon(1e-3));
}

TEST_CASE("gamma estimators") {
    const Params p = Params::make(3, 1.2, 1.0);
    const auto t = exact(p, 1e-6, 1e-4, [](double r) { return -0.5 / r; },
                         [](double r) { return 0.5 / (r * r); });
    const GammaEstimate g = estimate_gamma(t, p, {1e-6, 1e-4});
    CHECK(g.value == Approx(-0.5));
    CHECK(g.flux == Approx(-0.5));
    CHECK_THROWS_AS(estimate_gamma(t, Params::make(3, 1.6, 1.0), {1e-6, 1e-4}), RegimeError);
}
