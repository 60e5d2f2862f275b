#include <doctest.h>

#include <cmath>

#include "singulab/classify.hpp"
#include "singulab/constants.hpp"
#include "singulab/construct.hpp"
#include "singulab/error.hpp"

using namespace singulab;
using doctest::Approx;

TEST_CASE("seed kinds round-trip through their names") {
    for (SeedKind k : {SeedKind::Regular, SeedKind::WeakSingular, SeedKind::StrongSingular,
                       SeedKind::CriticalLog, SeedKind::HolderSingular, SeedKind::EikonalSingular})
        CHECK(seed_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(seed_kind_from_string("bogus"), DomainError);
}

TEST_CASE("seeds are gated by regime") {
    CHECK_THROWS_AS(seed(Params::make(3, 1.6, 1.0), {SeedKind::WeakSingular, -1.0, 1e-5}), RegimeError);
    CHECK_THROWS_AS(seed(Params::make(3, 1.2, 1.0), {SeedKind::StrongSingular, 0.0, 1e-5}), RegimeError);
    CHECK_THROWS_AS(seed(Params::make(3, 1.6, 1.0), {SeedKind::CriticalLog, 0.0, 1e-5}), RegimeError);
    CHECK_THROWS_AS(seed(Params::make(3, 1.6, 1.0), {SeedKind::EikonalSingular, 0.0, 1e-5}), RegimeError);
    CHECK_THROWS_AS(seed(Params::make(2, 1.6, 1.0), {SeedKind::StrongSingular, 0.0, 1e-5}), RegimeError);
    CHECK_THROWS_AS(seed(Params::make(3, 1.2, 1.0), {SeedKind::WeakSingular, 1.0, 1e-5}), DomainError);
    CHECK_NOTHROW(seed(Params::make(2, 3.0, 1.0), {SeedKind::HolderSingular, 0.0, 1e-5}));
}

TEST_CASE("seed values") {
    const RadialState e = seed(Params::make(3, 3.0, 1.0), {SeedKind::EikonalSingular, 0.0, 1e-3});
    CHECK(e.u == Approx(24.019102702950740).epsilon(1e-13));  // 3 ln 3000
    CHECK(e.p == Approx(-3000.0));
    const RadialState s = seed(Params::make(3, 1.6, 1.0), {SeedKind::StrongSingular, 0.0, 1e-4});
    CHECK(s.u == Approx(-111.57215834702825).epsilon(1e-12));
    CHECK(s.p == Approx(0.16024995225637871 * std::pow(1e-4, -1.0 / 0.6)).epsilon(1e-12));
    const RadialState w = seed(Params::make(3, 1.2, 1.0), {SeedKind::WeakSingular, -2.0, 1e-3});
    CHECK(w.u == Approx(-2000.0));
    CHECK(w.p == Approx(2e6));
    const RadialState r = seed(Params::make(3, 1.5, 1.0), {SeedKind::Regular, 0.0, 1e-2});
    CHECK(r.u == Approx(-1e-4 / 6.0));
    CHECK(r.p == Approx(-1e-2 / 3.0));
    const RadialState h = seed(Params::make(3, 3.0, 1.0), {SeedKind::HolderSingular, 0.5, 1e-2});
    CHECK(h.u == 0.5);
    CHECK(h.p == Approx(std::sqrt(1.5) * 10.0));
}

TEST_CASE("grow notes a seed radius above 1e-2") {
    const Params p = Params::make(3, 1.5, 1.0);
    const Trajectory t = grow(p, {SeedKind::Regular, 0.0, 0.05}, 1.0);
    bool warned = false;
    for (const auto& n : t.notes) warned = warned || n.find("exceeds") != std::string::npos;
    CHECK(warned);
}

TEST_CASE("grown regular solution") {
    const Params p = Params::make(3, 1.5, 1.0);
    const Trajectory t = grow(p, {SeedKind::Regular, 0.0, 1e-3}, 1.0);
    CHECK(t.termination.kind == TerminationKind::ReachedEnd);
    CHECK(std::abs(t.samples.back().u) < 1.0);
}

TEST_CASE("grown weak singular solution keeps its gamma") {
    const Params p = Params::make(3, 1.2, 1.0);
    const Trajectory t = grow(p, {SeedKind::WeakSingular, -1.0, 1e-5}, 0.1);
    REQUIRE(t.termination.kind == TerminationKind::ReachedEnd);
    for (double r : {1e-5, 3e-5, 1e-4}) CHECK(r * t.at(r).u == Approx(-1.0).epsilon(0.02));
    const GammaEstimate g = estimate_gamma(t, p, {1e-5, 1e-4});
    CHECK(g.value == Approx(-1.0).epsilon(0.02));
    CHECK(g.flux == Approx(-1.0).epsilon(0.02));
}

TEST_CASE("grown strong singular solution") {
    const Params p = Params::make(3, 1.6, 1.0);
    const Trajectory t = grow(p, {SeedKind::StrongSingular, 0.0, 1e-6}, 1e-2);
    REQUIRE(t.termination.kind == TerminationKind::ReachedEnd);
    const double L = lambda_nmq(p);
    for (double r : {1e-6, 1e-5, 1e-4, 1e-3}) CHECK(std::pow(r, beta(p.q)) * t.at(r).u == Approx(L).epsilon(1e-3));
    CHECK(max_scaled_residual(t) < 1e-6);
}

TEST_CASE("grown eikonal and Hölder solutions") {
    const Params p = Params::make(3, 3.0, 1.0);
    const Trajectory e = grow(p, {SeedKind::EikonalSingular, 0.0, 1e-5}, 1e-3);
    REQUIRE(e.termination.kind == TerminationKind::ReachedEnd);
    for (double r : {1e-5, 1e-4, 1e-3}) CHECK(r * r * r * std::exp(e.at(r).u) == Approx(27.0).epsilon(1e-3));
    const Trajectory h = grow(p, {SeedKind::HolderSingular, 0.0, 1e-2}, 1e-7);
    REQUIRE(h.termination.kind == TerminationKind::ReachedEnd);
    CHECK(h.direction == Direction::Inward);
    for (double r : {1e-7, 1e-6, 1e-5}) CHECK(h.at(r).p * std::sqrt(r) == Approx(std::sqrt(1.5)).epsilon(0.01));
}

TEST_CASE("shooting a regular solution") {
    const Params p = Params::make(3, 1.5, 1.0);
    const ShootResult s = shoot(p, {SeedKind::Regular, 0.0, 1e-4}, {1.0, -0.5});
    CHECK(s.trajectory.samples.back().u == Approx(-0.5).epsilon(1e-8));
    // u(1) increases with u(0) on this range
    const ShootResult s2 = shoot(p, {SeedKind::Regular, 0.0, 1e-4}, {1.0, -0.2});
    CHECK(s2.scalar > s.scalar);
}

TEST_CASE("shooting a weak singular solution") {
    const Params p = Params::make(3, 1.2, 1.0);
    const ShootResult s = shoot(p, {SeedKind::WeakSingular, -1.0, 1e-5}, {1.0, -3.0});
    CHECK(s.scalar < 0.0);
    CHECK(s.trajectory.termination.kind == TerminationKind::ReachedEnd);
    CHECK(std::abs(s.trajectory.samples.back().u + 3.0) <= 1e-8);
    MESSAGE("gamma* = " << s.scalar);
}

TEST_CASE("shooting without a sign change fails cleanly") {
    const Params p = Params::make(3, 1.5, 1.0);
    ShootOptions o;
    o.bracket = std::pair{0.0, 0.1};
    CHECK_THROWS_AS(shoot(p, {SeedKind::Regular, 0.0, 1e-4}, {1.0, 5.0}, o), NoBracket);
}
