#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singulab/params.hpp"
#include "singulab/trajectory.hpp"

namespace singulab {

/// Feature f(r) fitted as  u ≈ amplitude·f(r) + constant.
enum class Basis {
    Const,       // bounded: f = r^2 at the origin, r^{2-N} (1/r for N=2) at infinity
    Log,         // f = ln(1/r), free amplitude
    EmdenLog,    // f = ln(1/r), amplitude fixed to 2
    EikonalLog,  // f = ln(1/r), amplitude fixed to q
    PowNminus2,  // f = r^{2-N}
    PowBeta,     // f = r^{-β}; exponent also from a log–log slope of |u|
    PowBetaLog,  // f = r^{2-N}(-ln r)^{1-N}, r < 1
    PowHolder,   // f = r^{(q-2)/(q-1)}
};

enum class Side { Origin, Infinity };

std::string to_string(Basis b);
std::string to_string(Side s);

struct Window {
    double r_lo = 0.0;
    double r_hi = 0.0;
};

struct AsymptoticFit {
    Basis model = Basis::Const;
    double amplitude = 0.0;
    double constant = 0.0;
    double exponent = 0.0;   // f ~ r^{-exponent}
    double log_power = 0.0;  // power of (-ln r) in f, 0 when unused
    double rms_residual = 0.0;
    Window window;
};

/// Least-squares fit of u against {1, f(r)} on n log-uniform resamples.
AsymptoticFit fit_asymptotics(const Trajectory& traj, const Window& window, Basis basis,
                              Side side = Side::Origin, std::size_t n_resample = 128);

enum class RegimeKind {
    Removable,       // bounded; estimate = u0
    EmdenType,       // estimate = ω = lim (u ± 2 ln r)
    WeakSingular,    // estimate = γ = lim r^{N-2} u
    StrongSingular,  // estimate = lim r^β u
    CriticalLog,     // estimate = lim r^{N-2}(-ln r)^{N-1} u  (= -Λ_{N,m})
    HolderRegular,   // estimate = u(0), secondary = lim r^{1/(q-1)} u_r
    EikonalType,     // estimate = lim r^q e^u
};

std::string to_string(RegimeKind k);

struct Regime {
    RegimeKind kind = RegimeKind::Removable;
    Side side = Side::Origin;
    double estimate = 0.0;
    std::optional<double> secondary;
    AsymptoticFit fit;
    double runner_up_ratio = 0.0;  // winner rms / runner-up rms
    std::vector<AsymptoticFit> candidates;
};

struct ClassifyThresholds {
    double ratio_threshold = 0.3;
    double min_span = 100.0;   // r_hi / r_lo
    double decades = 2.0;      // default window width
    std::size_t resample = 128;
    std::optional<Window> window;  // overrides the default window
};

/// Model selection among the branches allowed for (N, q) at r -> 0:
///   1<q<N/(N-1): Removable, EmdenType, WeakSingular
///   q=N/(N-1):   Removable, EmdenType, CriticalLog
///   N/(N-1)<q<2: Removable, EmdenType, StrongSingular
///   q>2:         Removable, HolderRegular, EikonalType
/// The default window is [r_min, r_min·10^decades].
Regime classify_origin(const Trajectory& traj, const Params& p, const ClassifyThresholds& th = {});

/// r -> ∞: EikonalType vs Removable for q<2, EmdenType vs Removable for q>2.
/// The default window is [r_max·10^-decades, r_max] and must satisfy r_lo >= 2.
Regime classify_infinity(const Trajectory& traj, const Params& p,
                         const ClassifyThresholds& th = {});

struct GammaEstimate {
    double value = 0.0;  // median of r^{N-2} u
    double flux = 0.0;   // median of r^{N-1} u_r / (2-N)
};

GammaEstimate estimate_gamma(const Trajectory& traj, const Params& p, const Window& window,
                             std::size_t n_resample = 128);

}  // namespace singulab
