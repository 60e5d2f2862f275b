#include "singulab/radial_ode.hpp"

#include <cmath>
#include <limits>

#include "detail/dopri5.hpp"
#include "singulab/constants.hpp"
#include "singulab/error.hpp"

namespace singulab {

using detail::StepStatus;
using detail::Vec2;

double residual_full(const Params& p, double r, double u, double u_r, double u_rr) {
    if (!(r > 0.0)) throw DomainError("radius must be positive");
    return -u_rr - (p.N - 1) * u_r / r + p.m * abs_pow(u_r, p.q) - std::exp(u);
}

RhsValue rhs(const Params& p, const RadialState& s) {
    if (!(s.r > 0.0)) throw DomainError("radius must be positive");
    RhsValue v;
    v.du = s.p;
    const double eu = std::exp(s.u);
    const double grad = p.m * abs_pow(s.p, p.q);
    v.dp = -(p.N - 1) * s.p / s.r + grad - eu;
    v.overflow = !std::isfinite(eu) || !std::isfinite(grad) || !std::isfinite(v.dp);
    return v;
}

void IntegrateOptions::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("tolerances must be positive");
    if (max_steps <= 0) throw DomainError("max_steps must be positive");
    if (!(u_max > u_min)) throw DomainError("u_max must exceed u_min");
    if (!(p_max > 0.0)) throw DomainError("p_max must be positive");
    if (!(max_log_step > 0.0)) throw DomainError("max_log_step must be positive");
}

std::string to_string(CylinderOrientation o) {
    return o == CylinderOrientation::Origin ? "origin" : "infinity";
}

double cylinder_vtt(const Params& p, CylinderOrientation o, double t, double v, double vt) {
    const double n2 = p.N - 2.0;
    if (o == CylinderOrientation::Origin)
        return n2 * vt + 2.0 * n2 - std::exp(v) +
               p.m * std::exp((p.q - 2.0) * t) * abs_pow(vt + 2.0, p.q);
    return -n2 * vt + 2.0 * n2 - std::exp(v) +
           p.m * std::exp((2.0 - p.q) * t) * abs_pow(vt - 2.0, p.q);
}

namespace {

// Threshold watch shared by the physical and cylinder phases.
struct Watch {
    const IntegrateOptions& opts;
    bool has_prev = false;
    double prev_r = 0.0;
    double prev_u = 0.0;
    double prev_abs_p = 0.0;
    Termination hit{};
    bool stopped = false;

    // Returns false when a threshold is crossed between the previous and
    // the current sample.
    bool check(double r, double u, double p) {
        if (!has_prev) {
            has_prev = true;
            prev_r = r;
            prev_u = u;
            prev_abs_p = std::abs(p);
            if (u > opts.u_max) return stop(TerminationKind::BlowUpUp, r);
            return true;
        }
        auto crossing = [&](double level) {
            const double w = (level - prev_u) / (u - prev_u);
            return std::exp(std::log(prev_r) + w * (std::log(r) - std::log(prev_r)));
        };
        bool ok = true;
        if (u > opts.u_max && prev_u <= opts.u_max) {
            ok = stop(TerminationKind::BlowUpUp, crossing(opts.u_max));
        } else if (u < opts.u_min && prev_u >= opts.u_min) {
            ok = stop(TerminationKind::BlowUpDown, crossing(opts.u_min));
        } else if (std::abs(p) > opts.p_max && prev_abs_p <= opts.p_max) {
            ok = stop(u >= prev_u ? TerminationKind::BlowUpUp : TerminationKind::BlowUpDown, r);
        }
        prev_r = r;
        prev_u = u;
        prev_abs_p = std::abs(p);
        return ok;
    }

    bool stop(TerminationKind k, double r) {
        hit = {k, r};
        stopped = true;
        return false;
    }
};

Termination map_status(StepStatus st, const Watch& w, double r_now, double r_end, double du) {
    switch (st) {
        case StepStatus::Done: return {TerminationKind::ReachedEnd, r_end};
        case StepStatus::Stopped: return w.hit;
        case StepStatus::Underflow: return {TerminationKind::StepUnderflow, r_now};
        case StepStatus::MaxSteps: return {TerminationKind::MaxStepsExceeded, r_now};
        case StepStatus::NonFinite:
            return {du >= 0.0 ? TerminationKind::BlowUpUp : TerminationKind::BlowUpDown, r_now};
    }
    return {TerminationKind::StepUnderflow, r_now};
}

detail::StepperConfig stepper_config(const IntegrateOptions& opts, double h_init) {
    detail::StepperConfig cfg;
    cfg.rel_tol = opts.rel_tol;
    cfg.abs_tol = opts.abs_tol;
    cfg.max_steps = opts.max_steps;
    cfg.h_init = h_init;
    return cfg;
}

// Physical variables (u, u_r) with r as the independent variable.
StepStatus run_physical(const Params& p, const IntegrateOptions& opts, Watch& watch,
                        Trajectory& out, RadialState& state, double r_end) {
    const bool outward = r_end > state.r;
    const double grow = outward ? std::expm1(opts.max_log_step) : -std::expm1(-opts.max_log_step);
    auto f = [&p](double r, const Vec2& y) -> Vec2 {
        const RhsValue d = rhs(p, {r, y[0], y[1]});
        return {d.du, d.dp};
    };
    auto cap = [grow](double r) { return std::abs(r) * grow; };
    auto observe = [&](double r, const Vec2& y, const Vec2& dy) {
        if (!out.samples.empty() && out.samples.back().r == r) return true;
        out.samples.push_back({r, y[0], y[1], dy[1]});
        return watch.check(r, y[0], y[1]);
    };
    double x = state.r;
    Vec2 y{state.u, state.p};
    const double h0 = (outward ? 1.0 : -1.0) * 1e-3 * cap(state.r);
    const StepStatus st = detail::dopri5(f, cap, observe, x, y, r_end, stepper_config(opts, h0));
    state = {x, y[0], y[1]};
    return st;
}

// Cylinder variables at the origin: t = ln(1/r), v = u - 2t, samples stored
// back in physical form.
StepStatus run_cylinder_origin(const Params& p, const IntegrateOptions& opts, Watch& watch,
                               Trajectory& out, RadialState& state, double r_end) {
    const auto o = CylinderOrientation::Origin;
    auto f = [&p, o](double t, const Vec2& y) -> Vec2 {
        return {y[1], cylinder_vtt(p, o, t, y[0], y[1])};
    };
    const double t_end = -std::log(r_end);
    auto cap = [&opts](double) { return opts.max_log_step; };
    auto observe = [&](double t, const Vec2& y, const Vec2& dy) {
        const double r = t == t_end ? r_end : std::exp(-t);
        if (!out.samples.empty() && out.samples.back().r <= r) return true;
        const double u = y[0] + 2.0 * t;
        const double ur = -(y[1] + 2.0) / r;
        const double urr = (dy[1] - r * ur) / (r * r);
        out.samples.push_back({r, u, ur, urr});
        return watch.check(r, u, ur);
    };
    double t = -std::log(state.r);
    Vec2 y{state.u - 2.0 * t, -state.r * state.p - 2.0};
    const double dir = t_end > t ? 1.0 : -1.0;
    const StepStatus st =
        detail::dopri5(f, cap, observe, t, y, t_end, stepper_config(opts, dir * 1e-3 * opts.max_log_step));
    const double r = std::exp(-t);
    state = {r, y[0] + 2.0 * t, -(y[1] + 2.0) / r};
    return st;
}

}  // namespace

Trajectory integrate(const Params& p, const RadialState& start, double r_end,
                     const IntegrateOptions& opts) {
    opts.validate();
    if (!(start.r > 0.0) || !(r_end > 0.0)) throw DomainError("radii must be positive");
    if (r_end == start.r) throw DomainError("r_end must differ from the start radius");
    if (!std::isfinite(start.u) || !std::isfinite(start.p))
        throw DomainError("start state must be finite");

    Trajectory out;
    out.params = p;
    out.direction = r_end > start.r ? Direction::Outward : Direction::Inward;
    Watch watch{opts};
    RadialState state = start;
    StepStatus st;
    double last_du = 0.0;

    if (out.direction == Direction::Outward || p.q > 2.0) {
        st = run_physical(p, opts, watch, out, state, r_end);
    } else {
        const double r_switch = std::max(r_end, 0.1 * start.r);
        st = run_physical(p, opts, watch, out, state, r_switch);
        if (st == StepStatus::Done && r_switch > r_end)
            st = run_cylinder_origin(p, opts, watch, out, state, r_end);
    }
    if (out.samples.size() >= 2)
        last_du = out.samples.back().u - out.samples[out.samples.size() - 2].u;
    out.termination = map_status(st, watch, state.r, r_end, last_du);
    return out;
}

CylinderTrajectory integrate_cylinder(const Params& p, CylinderOrientation o,
                                      const CylinderStart& start, double t_end,
                                      const IntegrateOptions& opts) {
    opts.validate();
    if (t_end == start.t) throw DomainError("t_end must differ from the start time");
    if (!std::isfinite(start.v) || !std::isfinite(start.vt))
        throw DomainError("start state must be finite");
    CylinderTrajectory out;
    out.params = p;
    out.orientation = o;
    Watch watch{opts};
    const double sign = o == CylinderOrientation::Origin ? 1.0 : -1.0;  // u = v + sign*2t
    auto f = [&p, o](double t, const Vec2& y) -> Vec2 {
        return {y[1], cylinder_vtt(p, o, t, y[0], y[1])};
    };
    auto cap = [&opts](double) { return opts.max_log_step; };
    auto observe = [&](double t, const Vec2& y, const Vec2& dy) {
        out.samples.push_back({t, y[0], y[1], dy[1]});
        const double r = std::exp(-sign * t);
        const double u = y[0] + sign * 2.0 * t;
        const double ur = o == CylinderOrientation::Origin ? -(y[1] + 2.0) / r : (y[1] - 2.0) / r;
        return watch.check(r, u, ur);
    };
    double t = start.t;
    detail::Vec2 y{start.v, start.vt};
    const double dir = t_end > t ? 1.0 : -1.0;
    const StepStatus st =
        detail::dopri5(f, cap, observe, t, y, t_end, stepper_config(opts, dir * 1e-3 * opts.max_log_step));
    const double du = out.samples.size() >= 2
                          ? (out.samples.back().v - out.samples[out.samples.size() - 2].v)
                          : 0.0;
    Termination term = map_status(st, watch, std::exp(-sign * t), std::exp(-sign * t_end), du);
    out.termination = term;
    return out;
}

CylinderTrajectory to_cylinder(const Trajectory& traj, CylinderOrientation o) {
    if (traj.empty()) throw DomainError("cannot convert an empty trajectory");
    CylinderTrajectory ct;
    ct.params = traj.params;
    ct.orientation = o;
    ct.termination = traj.termination;
    ct.samples.reserve(traj.size());
    const bool origin = o == CylinderOrientation::Origin;
    for (const auto& s : traj.samples) {
        if (!(s.r > 0.0)) throw DomainError("radius must be positive");
        const double lr = std::log(s.r);
        const double rp = s.r * s.p;
        ct.samples.push_back({origin ? -lr : lr, s.u + 2.0 * lr, origin ? -rp - 2.0 : rp + 2.0,
                              s.r * s.r * s.pp + rp});
    }
    return ct;
}

Trajectory from_cylinder(const CylinderTrajectory& ct) {
    if (ct.samples.empty()) throw DomainError("cannot convert an empty trajectory");
    Trajectory traj;
    traj.params = ct.params;
    traj.termination = ct.termination;
    const bool origin = ct.orientation == CylinderOrientation::Origin;
    traj.samples.reserve(ct.samples.size());
    for (const auto& c : ct.samples) {
        const double r = std::exp(origin ? -c.t : c.t);
        const double u = origin ? c.v + 2.0 * c.t : c.v - 2.0 * c.t;
        const double ur = origin ? -(c.vt + 2.0) / r : (c.vt - 2.0) / r;
        const double urr = (c.vtt - r * ur) / (r * r);
        traj.samples.push_back({r, u, ur, urr});
    }
    traj.direction = Direction::Outward;
    if (traj.samples.size() >= 2 && traj.samples[1].r < traj.samples[0].r)
        traj.direction = Direction::Inward;
    return traj;
}

}  // namespace singulab
