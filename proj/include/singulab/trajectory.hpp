#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "singulab/params.hpp"

namespace singulab {

/// Point (r, u, u_r) on a radial solution.
struct RadialState {
    double r = 1.0;
    double u = 0.0;
    double p = 0.0;
};

/// Sample of a radial solution, with the second derivative so that the
/// trajectory can be interpolated by cubic Hermite pieces in ln r.
struct RadialSample {
    double r = 1.0;
    double u = 0.0;
    double p = 0.0;   // u_r
    double pp = 0.0;  // u_rr
};

enum class Direction { Inward, Outward };

enum class TerminationKind { ReachedEnd, BlowUpDown, BlowUpUp, StepUnderflow, MaxStepsExceeded };

struct Termination {
    TerminationKind kind = TerminationKind::ReachedEnd;
    double r_star = 0.0;  // radius where integration stopped
};

std::string to_string(Direction d);
std::string to_string(TerminationKind k);

/// Sampled radial solution. Samples are strictly monotone in r, increasing for
/// Outward runs and decreasing for Inward runs.
struct Trajectory {
    Params params;
    Direction direction = Direction::Outward;
    Termination termination;
    std::vector<RadialSample> samples;
    std::vector<std::string> notes;

    bool empty() const { return samples.empty(); }
    std::size_t size() const { return samples.size(); }
    double r_min() const;
    double r_max() const;

    /// Cubic Hermite interpolation in s = ln r. u uses (u, r u_r), u_r uses
    /// (u_r, r u_rr); u_rr is interpolated linearly. Throws DomainError when r
    /// lies outside [r_min, r_max].
    RadialSample at(double r) const;

    /// n samples log-uniform on [r_lo, r_hi], ordered by increasing r.
    std::vector<RadialSample> resample_log(double r_lo, double r_hi, std::size_t n) const;

    /// Checks ordering against direction; throws DomainError if broken.
    void validate() const;
};

/// Builds a trajectory by evaluating an exact (u, u_r, u_rr) function on a
/// log-uniform grid (increasing r, Outward).
using ProfileFunction = std::function<RadialSample(double r)>;
Trajectory sample_function(const Params& p, double r_lo, double r_hi, std::size_t n,
                           const ProfileFunction& f);

/// Largest |residual of the radial equation| at interior samples, each
/// normalised by 1 + e^u + m|u_r|^q + (N-1)|u_r|/r + |u_rr|. The second
/// derivative is re-evaluated by a centered difference of the interpolated
/// u_r at r e^{±delta}.
double max_scaled_residual(const Trajectory& traj, double delta = 1e-6);

}  // namespace singulab
