#pragma once

#include <vector>

#include "singulab/params.hpp"
#include "singulab/trajectory.hpp"

namespace singulab {

/// Left-hand side of  -u_rr - (N-1)/r u_r + m|u_r|^q - e^u = 0.
double residual_full(const Params& p, double r, double u, double u_r, double u_rr);

/// First-order form  u' = p,  p' = -(N-1)p/r + m|p|^q - e^u.
struct RhsValue {
    double du = 0.0;
    double dp = 0.0;
    bool overflow = false;  // e^u or |p|^q left the representable range
};

RhsValue rhs(const Params& p, const RadialState& s);

struct IntegrateOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_steps = 20'000'000;
    double u_max = 700.0;   // blow-up up when u crosses +u_max
    double u_min = -700.0;  // blow-up down when u crosses u_min
    double p_max = 1e150;
    double max_log_step = 0.05;  // cap on |Δ ln r| per step, sets sample density

    void validate() const;
};

/// Adaptive embedded Runge–Kutta (Dormand–Prince 5(4)) integration of the
/// radial equation from `start` toward r_end. Outward runs use (u, u_r) in r.
/// Inward runs with q < 2 switch to the cylinder variables t = ln(1/r),
/// v = u - 2t once r < 0.1 start.r; for q > 2 they stay in (u, u_r).
Trajectory integrate(const Params& p, const RadialState& start, double r_end,
                     const IntegrateOptions& opts = {});

enum class CylinderOrientation {
    Origin,    // t = ln(1/r), v = u - 2t
    Infinity,  // t = ln r,    v = u + 2t
};

struct CylinderSample {
    double t = 0.0;
    double v = 0.0;
    double vt = 0.0;
    double vtt = 0.0;
};

struct CylinderTrajectory {
    Params params;
    CylinderOrientation orientation = CylinderOrientation::Origin;
    Termination termination;
    std::vector<CylinderSample> samples;
};

struct CylinderStart {
    double t = 0.0;
    double v = 0.0;
    double vt = 0.0;
};

/// v_tt from the radial cylinder equation,
///   Origin:   v_tt = (N-2)v_t + 2(N-2) - e^v + m e^{(q-2)t}|v_t + 2|^q
///   Infinity: v_tt = -(N-2)v_t + 2(N-2) - e^v + m e^{(2-q)t}|v_t - 2|^q
double cylinder_vtt(const Params& p, CylinderOrientation o, double t, double v, double vt);

/// Integrates the cylinder equation in t from start.t to t_end (either sign).
CylinderTrajectory integrate_cylinder(const Params& p, CylinderOrientation o,
                                      const CylinderStart& start, double t_end,
                                      const IntegrateOptions& opts = {});

CylinderTrajectory to_cylinder(const Trajectory& traj, CylinderOrientation o);
Trajectory from_cylinder(const CylinderTrajectory& ct);

std::string to_string(CylinderOrientation o);

}  // namespace singulab
