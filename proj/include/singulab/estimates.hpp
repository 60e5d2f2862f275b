#pragma once

#include <optional>
#include <string>

#include "singulab/classify.hpp"
#include "singulab/params.hpp"
#include "singulab/trajectory.hpp"

namespace singulab {

enum class Verdict { Consistent, Violated, Inconclusive, AlternateBranch };

std::string to_string(Verdict v);

/// Bounded-ratio report for one a priori inequality on a trajectory window.
/// trend_slope is the least-squares slope of ln(ratio) against ln r. Growth
/// toward the singular point is a negative slope at the origin and a positive
/// slope at infinity.
struct EstimateReport {
    std::string name;
    double normalized_sup = 0.0;
    double normalized_inf = 0.0;
    double trend_slope = 0.0;
    Window window;
    Verdict verdict = Verdict::Inconclusive;
    double margin = 0.0;           // slope excess beyond slope_tol when Violated
    std::optional<double> target;  // limit predicted in closed form, if any
    std::optional<double> limit;   // ratio at the singular end of the window
    std::string detail;
};

struct EstimateOptions {
    std::optional<Window> window;  // defaults to the whole trajectory
    std::size_t resample = 256;
    double slope_tol = 0.05;
    double limit_tol = 0.05;    // relative band for eikonal limits
    double tail_fraction = 0.25;  // part of the window (in ln r) nearest the singular end
};

enum class EstimateSide { Origin, Exterior };
enum class GradientMode { SubquadraticOrigin, SuperquadraticOrigin, ExteriorDecay };

std::string to_string(EstimateSide s);
std::string to_string(GradientMode m);

/// r^{max(2,q)} e^u at the origin, r^{min(2,q)} e^u in the exterior.
EstimateReport keller_osserman_report(const Trajectory& traj, const Params& p, EstimateSide side,
                                      const EstimateOptions& opt = {});

/// |u_r| r^{1/(q-1)} (SubquadraticOrigin, after checking that r^2 e^u stays
/// bounded) or |u_r| r (SuperquadraticOrigin, ExteriorDecay).
EstimateReport gradient_bound_report(const Trajectory& traj, const Params& p, GradientMode mode,
                                     const EstimateOptions& opt = {});

/// r^β |u|, or r^{N-2}(-ln r)^{N-1}|u| at q = N/(N-1). Requires u < 0.
EstimateReport two_sided_report(const Trajectory& traj, const Params& p,
                                const EstimateOptions& opt = {});

/// r^q e^u against m q^q: origin for q>2, exterior for 1<q<2. At the origin a
/// ratio decaying to 0 is the Hölder branch and reported as AlternateBranch.
EstimateReport eikonal_limit_report(const Trajectory& traj, const Params& p, EstimateSide side,
                                    const EstimateOptions& opt = {});

/// Local gradient bound with unit constants,
///   |u_r(r)| / ((r/2)^{-1/(q-1)} + max e^{u/q} + max e^{u/(2(q-1))}),
/// the maxima taken over [r/2, 3r/2] intersected with the trajectory range.
EstimateReport interior_gradient_report(const Trajectory& traj, const Params& p,
                                        const EstimateOptions& opt = {});

}  // namespace singulab
