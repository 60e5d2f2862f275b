#include "singulab/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "singulab/constants.hpp"
#include "singulab/error.hpp"
#include "singulab/radial_ode.hpp"

namespace singulab {

std::string to_string(Direction d) { return d == Direction::Inward ? "inward" : "outward"; }

std::string to_string(TerminationKind k) {
    switch (k) {
        case TerminationKind::ReachedEnd: return "reached-end";
        case TerminationKind::BlowUpDown: return "blow-up-down";
        case TerminationKind::BlowUpUp: return "blow-up-up";
        case TerminationKind::StepUnderflow: return "step-underflow";
        case TerminationKind::MaxStepsExceeded: return "max-steps-exceeded";
    }
    return "unknown";
}

double Trajectory::r_min() const {
    if (empty()) throw DomainError("empty trajectory");
    return std::min(samples.front().r, samples.back().r);
}

double Trajectory::r_max() const {
    if (empty()) throw DomainError("empty trajectory");
    return std::max(samples.front().r, samples.back().r);
}

void Trajectory::validate() const {
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const bool ok = direction == Direction::Outward ? samples[i].r > samples[i - 1].r
                                                        : samples[i].r < samples[i - 1].r;
        if (!ok) throw DomainError("trajectory samples are not strictly monotone in r");
    }
    for (const auto& s : samples)
        if (!(s.r > 0.0)) throw DomainError("trajectory radius must be positive");
}

namespace {

RadialSample hermite(const RadialSample& a, const RadialSample& b, double r) {
    const double s0 = std::log(a.r);
    const double s1 = std::log(b.r);
    const double h = s1 - s0;
    const double t = (std::log(r) - s0) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    RadialSample out;
    out.r = r;
    out.u = h00 * a.u + h10 * h * a.r * a.p + h01 * b.u + h11 * h * b.r * b.p;
    out.p = h00 * a.p + h10 * h * a.r * a.pp + h01 * b.p + h11 * h * b.r * b.pp;
    out.pp = (1 - t) * a.pp + t * b.pp;
    return out;
}

}  // namespace

RadialSample Trajectory::at(double r) const {
    if (empty()) throw DomainError("empty trajectory");
    const double lo = r_min();
    const double hi = r_max();
    const double slack = 1e-12 * hi;
    if (!(r >= lo - slack && r <= hi + slack))
        throw DomainError("radius outside the trajectory range");
    if (samples.size() == 1) return samples.front();
    const auto cmp_out = [](const RadialSample& s, double x) { return s.r < x; };
    const auto cmp_in = [](const RadialSample& s, double x) { return s.r > x; };
    std::size_t k;
    if (direction == Direction::Outward)
        k = std::lower_bound(samples.begin(), samples.end(), r, cmp_out) - samples.begin();
    else
        k = std::lower_bound(samples.begin(), samples.end(), r, cmp_in) - samples.begin();
    if (k < samples.size() && samples[k].r == r) return samples[k];
    k = std::clamp<std::size_t>(k, 1, samples.size() - 1);
    return hermite(samples[k - 1], samples[k], std::clamp(r, lo, hi));
}

std::vector<RadialSample> Trajectory::resample_log(double r_lo, double r_hi, std::size_t n) const {
    if (!(r_lo > 0.0) || !(r_hi > r_lo)) throw DomainError("invalid resampling window");
    if (n < 2) throw DomainError("resampling needs at least two points");
    std::vector<RadialSample> out;
    out.reserve(n);
    const double a = std::log(r_lo);
    const double b = std::log(r_hi);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        double r = std::exp(s);
        if (i == 0) r = r_lo;
        if (i + 1 == n) r = r_hi;
        out.push_back(at(r));
    }
    return out;
}

Trajectory sample_function(const Params& p, double r_lo, double r_hi, std::size_t n,
                           const ProfileFunction& f) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo)) throw DomainError("invalid sampling window");
    if (n < 2) throw DomainError("sampling needs at least two points");
    Trajectory t;
    t.params = p;
    t.direction = Direction::Outward;
    t.termination = {TerminationKind::ReachedEnd, r_hi};
    t.samples.reserve(n);
    const double a = std::log(r_lo);
    const double b = std::log(r_hi);
    for (std::size_t i = 0; i < n; ++i) {
        double r = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
        if (i == 0) r = r_lo;
        if (i + 1 == n) r = r_hi;
        RadialSample s = f(r);
        s.r = r;
        t.samples.push_back(s);
    }
    return t;
}

double max_scaled_residual(const Trajectory& traj, double delta) {
    const Params& p = traj.params;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < traj.samples.size(); ++i) {
        const RadialSample& s = traj.samples[i];
        const double r_plus = s.r * std::exp(delta);
        const double r_minus = s.r * std::exp(-delta);
        const double urr = (traj.at(r_plus).p - traj.at(r_minus).p) / (r_plus - r_minus);
        const double res = residual_full(p, s.r, s.u, s.p, urr);
        const double scale = 1.0 + std::exp(std::min(s.u, 700.0)) + p.m * abs_pow(s.p, p.q) +
                             (p.N - 1) * std::abs(s.p) / s.r + std::abs(urr);
        worst = std::max(worst, std::abs(res) / scale);
    }
    return worst;
}

}  // namespace singulab
