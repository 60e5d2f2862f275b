#pragma once

#include <optional>
#include <string>
#include <utility>

#include "singulab/params.hpp"
#include "singulab/radial_ode.hpp"
#include "singulab/trajectory.hpp"

namespace singulab {

enum class SeedKind {
    Regular,          // scalar = u(0)
    WeakSingular,     // scalar = γ < 0,    u ~ γ r^{2-N}
    StrongSingular,   // scalar = additive constant on Λ_{N,m,q} r^{-β}
    CriticalLog,      // scalar = additive constant on -Λ_{N,m} r^{2-N}(-ln r)^{1-N}
    HolderSingular,   // scalar = u(0),     u_r ~ c r^{-1/(q-1)}, q > 2
    EikonalSingular,  // scalar = additive constant on q ln(q m^{1/q}/r), q > 2
};

std::string to_string(SeedKind k);
SeedKind seed_kind_from_string(const std::string& s);

struct SeedSpec {
    SeedKind kind = SeedKind::Regular;
    double scalar = 0.0;
    double epsilon = 1e-6;
};

/// Largest seed radius for which the leading-order ansatz is trusted.
inline constexpr double kSeedRadiusWarn = 1e-2;

/// Throws RegimeError when `kind` is not a possible branch for (N, q).
void check_seed_regime(const Params& p, SeedKind kind);

/// State at r = ε matching the leading-order asymptotics of the branch.
RadialState seed(const Params& p, const SeedSpec& spec);

/// Seeds at ε and integrates toward r_end (outward if r_end > ε, inward
/// otherwise). Singular branches with u -> -∞ disable the lower blow-up
/// threshold, since u -> -∞ is the expected behaviour there.
Trajectory grow(const Params& p, const SeedSpec& spec, double r_end,
                const IntegrateOptions& opts = {});

struct ShootTarget {
    double r = 1.0;
    double u = 0.0;
};

struct ShootOptions {
    double tol = 1e-9;
    int max_iter = 200;
    std::optional<std::pair<double, double>> bracket;  // auto-expanded when absent
    double initial_step = 0.5;   // first half-width of the auto bracket
    int max_expansions = 40;
    IntegrateOptions integrate;
};

struct ShootResult {
    Trajectory trajectory;
    double scalar = 0.0;
    int iterations = 0;
};

/// Finds the free scalar of `family` (family.scalar is the initial guess) so
/// that u(target.r) = target.u. Bracketed secant with bisection safeguard.
ShootResult shoot(const Params& p, const SeedSpec& family, const ShootTarget& target,
                  const ShootOptions& opts = {});

}  // namespace singulab
