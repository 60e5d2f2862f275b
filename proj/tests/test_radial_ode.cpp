#include <doctest.h>

#include <cmath>

#include "singulab/constants.hpp"
#include "singulab/construct.hpp"
#include "singulab/error.hpp"
#include "singulab/radial_ode.hpp"

using namespace singulab;
using doctest::Approx;

TEST_CASE("full residual of the Emden profile is the gradient term") {
    const Params p = Params::make(3, 1.5, 0.3);
    const double r = 0.5;
    const RadialSample s = model_profile(ProfileKind::Emden, p, r);
    CHECK(residual_full(p, r, s.u, s.p, s.pp) == Approx(0.3 * std::pow(2.0 / r, 1.5)).epsilon(1e-12));
}

TEST_CASE("rhs solves the equation for u_rr") {
    const Params p = Params::make(4, 1.7, 2.0);
    const RadialState st{0.3, -1.2, 0.8};
    const RhsValue d = rhs(p, st);
    CHECK_FALSE(d.overflow);
    CHECK(d.du == Approx(0.8));
    CHECK(residual_full(p, st.r, st.u, st.p, d.dp) == Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("pure Emden integration reproduces the exact profile") {
    const Params p = Params::pure_emden(3);
    const RadialSample s = model_profile(ProfileKind::Emden, p, 1.0);
    for (double r_end : {1e-4, 10.0}) {
        const Trajectory t = integrate(p, {1.0, s.u, s.p}, r_end);
        REQUIRE(t.termination.kind == TerminationKind::ReachedEnd);
        double err = 0.0;
        for (const auto& x : t.samples)
            err = std::max(err, std::abs(x.u - model_profile(ProfileKind::Emden, p, x.r).u));
        CHECK(err < 1e-7);
    }
}

TEST_CASE("regular run to r = 1") {
    const Params p = Params::make(3, 1.5, 1.0);
    const Trajectory t = grow(p, {SeedKind::Regular, 0.0, 1e-3}, 1.0);
    CHECK(t.termination.kind == TerminationKind::ReachedEnd);
    CHECK(std::abs(t.samples.back().u) < 1.0);
    CHECK(t.samples.back().u == Approx(-0.148654271619).epsilon(1e-8));
    CHECK(max_scaled_residual(t) < 1e-7);
}

TEST_CASE("large data blows up inside the unit ball") {
    const Params p = Params::make(3, 1.5, 0.01);
    const Trajectory t = integrate(p, {1.0, 5.0, 0.0}, 1e-8);
    // r = 1 is a local maximum (u_rr = -e^5), u falls off inward
    CHECK(t.termination.kind == TerminationKind::BlowUpDown);
    CHECK(t.termination.r_star < 1.0);
    CHECK(t.termination.r_star == Approx(0.0173).epsilon(0.05));
}

TEST_CASE("start above the threshold stops immediately") {
    const Params p = Params::make(3, 1.5, 1.0);
    IntegrateOptions o;
    o.u_max = 5.0;
    const Trajectory t = integrate(p, {1.0, 6.0, 0.0}, 2.0, o);
    CHECK(t.termination.kind == TerminationKind::BlowUpUp);
    CHECK(t.termination.r_star == 1.0);
}

TEST_CASE("max steps") {
    const Params p = Params::make(3, 1.5, 1.0);
    IntegrateOptions o;
    o.max_steps = 10;
    const Trajectory t = integrate(p, {1e-3, 0.0, 0.0}, 1.0, o);
    CHECK(t.termination.kind == TerminationKind::MaxStepsExceeded);
}

TEST_CASE("bad arguments") {
    const Params p = Params::make(3, 1.5, 1.0);
    CHECK_THROWS_AS(integrate(p, {0.0, 0.0, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(integrate(p, {1.0, 0.0, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(integrate(p, {1.0, NAN, 0.0}, 2.0), DomainError);
    IntegrateOptions o;
    o.rel_tol = -1;
    CHECK_THROWS(integrate(p, {1.0, 0.0, 0.0}, 2.0, o));
}

TEST_CASE("trajectories are ordered by direction") {
    const Params p = Params::make(3, 1.5, 1.0);
    const Trajectory out = integrate(p, {0.1, 0.0, 0.0}, 1.0);
    const Trajectory in = integrate(p, {1.0, out.samples.back().u, out.samples.back().p}, 0.001);
    CHECK(out.direction == Direction::Outward);
    CHECK(in.direction == Direction::Inward);
    CHECK_NOTHROW(out.validate());
    CHECK_NOTHROW(in.validate());
    // the inward run retraces the outward one
    CHECK(in.at(0.1).u == Approx(0.0).scale(1.0).epsilon(1e-8));
}

TEST_CASE("strong singular seed in cylinder variables matches physical variables") {
    const Params p = Params::make(3, 1.6, 1.0);
    const Trajectory phys = grow(p, {SeedKind::StrongSingular, 0.0, 1e-6}, 1e-2);
    REQUIRE(phys.termination.kind == TerminationKind::ReachedEnd);
    const RadialState s0 = seed(p, {SeedKind::StrongSingular, 0.0, 1e-6});
    const double t0 = std::log(1e6);
    IntegrateOptions o;
    o.u_min = -1e300;
    const CylinderTrajectory cyl = integrate_cylinder(
        p, CylinderOrientation::Origin, {t0, s0.u - 2 * t0, -s0.r * s0.p - 2.0}, std::log(100.0), o);
    REQUIRE(cyl.termination.kind == TerminationKind::ReachedEnd);
    const Trajectory back = from_cylinder(cyl);
    CHECK(back.direction == Direction::Outward);
    double worst = 0.0;
    for (double r : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
        const double a = phys.at(r).u, b = back.at(r).u;
        worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("cylinder round trip") {
    const Params p = Params::make(3, 3.0, 1.0);
    const Trajectory t = sample_profile(ProfileKind::Eikonal, p, 1e-3, 1.0, 30);
    for (auto o : {CylinderOrientation::Origin, CylinderOrientation::Infinity}) {
        const Trajectory b = from_cylinder(to_cylinder(t, o));
        REQUIRE(b.size() == t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            CHECK(b.samples[i].r == Approx(t.samples[i].r).epsilon(1e-14));
            CHECK(b.samples[i].u == Approx(t.samples[i].u).epsilon(1e-13));
            CHECK(b.samples[i].p == Approx(t.samples[i].p).epsilon(1e-12));
            CHECK(b.samples[i].pp == Approx(t.samples[i].pp).epsilon(1e-10));
        }
    }
}

TEST_CASE("cylinder equation at the Emden constant") {
    // v ≡ ln(2N-4), v_t = 0 at the origin with m = 0 is an equilibrium
    const Params p = Params::pure_emden(3);
    CHECK(cylinder_vtt(p, CylinderOrientation::Origin, 1.0, std::log(2.0), 0.0) == Approx(0.0).scale(1.0));
    CHECK(cylinder_vtt(p, CylinderOrientation::Infinity, 1.0, std::log(2.0), 0.0) == Approx(0.0).scale(1.0));
    // with m > 0 only the gradient term survives: m e^{(q-2)t}|2|^q
    const Params e = Params::make(3, 1.5, 0.7);
    CHECK(cylinder_vtt(e, CylinderOrientation::Origin, 2.0, std::log(2.0), 0.0) ==
          Approx(0.7 * std::exp(-0.5 * 2.0) * std::pow(2.0, 1.5)).epsilon(1e-13));
}

TEST_CASE("termination names") {
    CHECK(to_string(TerminationKind::ReachedEnd) == "reached-end");
    CHECK(to_string(TerminationKind::BlowUpDown) == "blow-up-down");
}
