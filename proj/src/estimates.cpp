#include "singulab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "singulab/constants.hpp"
#include "singulab/error.hpp"
#include "singulab/stats.hpp"

namespace singulab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "Consistent";
        case Verdict::Violated: return "Violated";
        case Verdict::Inconclusive: return "Inconclusive";
        case Verdict::AlternateBranch: return "AlternateBranch";
    }
    return "unknown";
}

std::string to_string(EstimateSide s) { return s == EstimateSide::Origin ? "origin" : "exterior"; }

std::string to_string(GradientMode m) {
    switch (m) {
        case GradientMode::SubquadraticOrigin: return "subquadratic-origin";
        case GradientMode::SuperquadraticOrigin: return "superquadratic-origin";
        case GradientMode::ExteriorDecay: return "exterior-decay";
    }
    return "unknown";
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Sampled {
    Window window;
    std::vector<RadialSample> pts;
};

Sampled sample(const Trajectory& traj, const EstimateOptions& opt) {
    if (traj.empty()) throw InsufficientWindow("empty trajectory");
    Window w = opt.window.value_or(Window{traj.r_min(), traj.r_max()});
    w.r_lo = std::max(w.r_lo, traj.r_min());
    w.r_hi = std::min(w.r_hi, traj.r_max());
    if (!(w.r_hi > w.r_lo)) throw InsufficientWindow("empty estimate window");
    if (opt.resample < 8) throw InsufficientWindow("fewer than 8 samples in the estimate window");
    return {w, traj.resample_log(w.r_lo, w.r_hi, opt.resample)};
}

// ln(ratio) per sample; -inf entries (ratio exactly 0) count for sup/inf but
// not for the trend fit.
EstimateReport summarize(std::string name, const Sampled& s, const std::vector<double>& log_ratio,
                         EstimateSide side, const EstimateOptions& opt) {
    EstimateReport rep;
    rep.name = std::move(name);
    rep.window = s.window;
    double hi = kNegInf, lo = std::numeric_limits<double>::infinity();
    std::vector<double> x, y;
    for (std::size_t i = 0; i < log_ratio.size(); ++i) {
        const double v = log_ratio[i];
        if (std::isnan(v)) throw NumericalError("non-finite ratio in " + rep.name);
        hi = std::max(hi, v);
        lo = std::min(lo, v);
        if (std::isfinite(v)) {
            x.push_back(std::log(s.pts[i].r));
            y.push_back(v);
        }
    }
    rep.normalized_sup = std::exp(std::min(hi, 700.0));
    rep.normalized_inf = std::exp(std::min(lo, 700.0));
    if (x.size() < 2) {
        rep.verdict = Verdict::Inconclusive;
        rep.detail = "ratio vanishes on the window";
        return rep;
    }
    rep.trend_slope = stats::fit_line(x, y).slope;

    // Median of the tail nearest the singular end.
    const double l0 = std::log(s.window.r_lo), l1 = std::log(s.window.r_hi);
    const double cut = opt.tail_fraction * (l1 - l0);
    std::vector<double> tail;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const bool in = side == EstimateSide::Origin ? x[i] <= l0 + cut : x[i] >= l1 - cut;
        if (in) tail.push_back(y[i]);
    }
    if (!tail.empty()) rep.limit = std::exp(std::min(stats::median(tail), 700.0));

    const double growth = side == EstimateSide::Origin ? -rep.trend_slope : rep.trend_slope;
    if (growth > opt.slope_tol) {
        rep.verdict = Verdict::Violated;
        rep.margin = growth - opt.slope_tol;
        std::ostringstream os;
        os << "ratio grows toward the " << (side == EstimateSide::Origin ? "origin" : "exterior")
           << " with log-log slope " << rep.trend_slope;
        rep.detail = os.str();
    } else {
        rep.verdict = Verdict::Consistent;
        rep.margin = opt.slope_tol - growth;
    }
    return rep;
}

double log_abs(double x) { return x == 0.0 ? kNegInf : std::log(std::abs(x)); }

}  // namespace

EstimateReport keller_osserman_report(const Trajectory& traj, const Params& p, EstimateSide side,
                                      const EstimateOptions& opt) {
    const auto s = sample(traj, opt);
    const double e = side == EstimateSide::Origin ? std::max(2.0, p.q) : std::min(2.0, p.q);
    std::vector<double> lr;
    for (const auto& pt : s.pts) lr.push_back(e * std::log(pt.r) + pt.u);
    return summarize("keller-osserman-" + to_string(side), s, lr, side, opt);
}

EstimateReport gradient_bound_report(const Trajectory& traj, const Params& p, GradientMode mode,
                                     const EstimateOptions& opt) {
    const bool sub = p.q > 1.0 && p.q < 2.0 && p.tag() != RegimeTag::Quadratic;
    const bool super = p.q > 2.0 && p.tag() == RegimeTag::Superquadratic;
    if (mode == GradientMode::SuperquadraticOrigin ? !super : !sub)
        throw RegimeError("gradient mode " + to_string(mode) + " does not match q");
    const auto s = sample(traj, opt);
    const EstimateSide side =
        mode == GradientMode::ExteriorDecay ? EstimateSide::Exterior : EstimateSide::Origin;
    const std::string name = "gradient-" + to_string(mode);

    if (mode == GradientMode::SubquadraticOrigin) {
        std::vector<double> pre;
        for (const auto& pt : s.pts) pre.push_back(2.0 * std::log(pt.r) + pt.u);
        const auto check = summarize(name, s, pre, EstimateSide::Origin, opt);
        if (check.verdict == Verdict::Violated) {
            EstimateReport rep = check;
            rep.verdict = Verdict::Inconclusive;
            std::ostringstream os;
            os << "precondition fails: r^2 e^u unbounded (sup " << check.normalized_sup
               << ", slope " << check.trend_slope << ")";
            rep.detail = os.str();
            return rep;
        }
    }
    if (mode == GradientMode::ExteriorDecay) {
        std::vector<double> x, y;
        for (const auto& pt : s.pts) {
            x.push_back(std::log(pt.r));
            y.push_back(pt.u);
        }
        if (!(stats::fit_line(x, y).slope < 0.0)) {
            EstimateReport rep;
            rep.name = name;
            rep.window = s.window;
            rep.verdict = Verdict::Inconclusive;
            rep.detail = "precondition fails: e^u does not decay on the window";
            return rep;
        }
    }
    const double e = mode == GradientMode::SubquadraticOrigin ? 1.0 / (p.q - 1.0) : 1.0;
    std::vector<double> lr;
    for (const auto& pt : s.pts) lr.push_back(log_abs(pt.p) + e * std::log(pt.r));
    return summarize(name, s, lr, side, opt);
}

EstimateReport two_sided_report(const Trajectory& traj, const Params& p,
                                const EstimateOptions& opt) {
    const RegimeTag tag = p.tag();
    if (p.N < 3 || (tag != RegimeTag::Supercritical && tag != RegimeTag::Critical))
        throw RegimeError("two-sided bounds need N >= 3 and N/(N-1) <= q < 2");
    const auto s = sample(traj, opt);
    const bool crit = tag == RegimeTag::Critical;
    if (crit && !(s.window.r_hi < 1.0)) throw DomainError("critical weight needs r < 1");
    std::vector<double> lr;
    for (const auto& pt : s.pts) {
        if (!(pt.u < 0.0)) {
            std::ostringstream os;
            os << "two-sided bounds need u < 0; u(" << pt.r << ") = " << pt.u;
            throw DomainError(os.str());
        }
        const double lnr = std::log(pt.r);
        const double w = crit ? (p.N - 2.0) * lnr + (p.N - 1.0) * std::log(-lnr) : beta(p.q) * lnr;
        lr.push_back(w + std::log(-pt.u));
    }
    auto rep = summarize(crit ? "two-sided-critical" : "two-sided", s, lr, EstimateSide::Origin, opt);
    rep.target = crit ? lambda_nm(p.N, p.m) : -lambda_nmq(p);
    // Flat in both directions: decay toward the origin breaks the lower bound.
    if (rep.verdict == Verdict::Consistent && rep.trend_slope > opt.slope_tol) {
        rep.verdict = Verdict::Violated;
        rep.margin = rep.trend_slope - opt.slope_tol;
        std::ostringstream os;
        os << "lower bound fails: weighted |u| decays toward the origin with slope " << rep.trend_slope;
        rep.detail = os.str();
    } else if (rep.verdict == Verdict::Violated) {
        rep.detail = "upper bound fails: " + rep.detail;
    }
    return rep;
}

EstimateReport eikonal_limit_report(const Trajectory& traj, const Params& p, EstimateSide side,
                                    const EstimateOptions& opt) {
    if (side == EstimateSide::Origin && p.tag() != RegimeTag::Superquadratic)
        throw RegimeError("the eikonal limit at the origin needs q > 2");
    if (side == EstimateSide::Exterior && !(p.q < 2.0 && p.tag() != RegimeTag::Quadratic))
        throw RegimeError("the eikonal limit at infinity needs 1 < q < 2");
    const auto s = sample(traj, opt);
    std::vector<double> lr;
    for (const auto& pt : s.pts) lr.push_back(p.q * std::log(pt.r) + pt.u);
    auto rep = summarize("eikonal-limit-" + to_string(side), s, lr, side, opt);
    const double target = eikonal_amplitude(p.q, p.m);
    rep.target = target;
    if (rep.verdict == Verdict::Violated) return rep;

    // Every tail sample must sit inside the band around m q^q.
    const double l0 = std::log(s.window.r_lo), l1 = std::log(s.window.r_hi);
    const double cut = opt.tail_fraction * (l1 - l0);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.pts.size(); ++i) {
        const double x = std::log(s.pts[i].r);
        const bool in = side == EstimateSide::Origin ? x <= l0 + cut : x >= l1 - cut;
        if (!in) continue;
        worst = std::max(worst, std::abs(std::expm1(lr[i] - std::log(target))));
    }
    std::ostringstream os;
    if (worst <= opt.limit_tol) {
        rep.verdict = Verdict::Consistent;
        os << "ratio within " << worst * 100 << "% of m q^q = " << target;
    } else if (side == EstimateSide::Origin && rep.trend_slope > opt.slope_tol &&
               rep.limit.value_or(target) < target * (1.0 - opt.limit_tol)) {
        rep.verdict = Verdict::AlternateBranch;
        os << "ratio tends to 0 (slope " << rep.trend_slope << "): bounded-gradient Hölder branch";
    } else {
        rep.verdict = Verdict::Inconclusive;
        os << "ratio not within " << opt.limit_tol * 100 << "% of m q^q = " << target
           << " (worst " << worst * 100 << "%)";
    }
    rep.detail = os.str();
    return rep;
}

EstimateReport interior_gradient_report(const Trajectory& traj, const Params& p,
                                        const EstimateOptions& opt) {
    const auto s = sample(traj, opt);
    // Dense log-uniform copy of the whole trajectory for the interval maxima.
    const double L0 = std::log(traj.r_min()), L1 = std::log(traj.r_max());
    const std::size_t n = std::max<std::size_t>(64, static_cast<std::size_t>((L1 - L0) * 64.0) + 1);
    const auto dense = traj.resample_log(traj.r_min(), traj.r_max(), n);
    const double h = (L1 - L0) / static_cast<double>(n - 1);
    const double a = 1.0 / p.q, b = 1.0 / (2.0 * (p.q - 1.0));

    std::vector<double> lr;
    for (const auto& pt : s.pts) {
        const double lo = std::log(pt.r / 2.0), hi = std::log(1.5 * pt.r);
        const auto i0 = static_cast<std::size_t>(std::max(0.0, std::floor((lo - L0) / h)));
        const auto i1 = std::min(n - 1, static_cast<std::size_t>(std::ceil((hi - L0) / h)));
        double umax = pt.u;
        for (std::size_t i = i0; i <= i1; ++i) umax = std::max(umax, dense[i].u);
        // log of the sum of three positive terms
        const double t[3] = {-std::log(pt.r / 2.0) / (p.q - 1.0), a * umax, b * umax};
        const double tm = std::max({t[0], t[1], t[2]});
        const double lden = tm + std::log(std::exp(t[0] - tm) + std::exp(t[1] - tm) + std::exp(t[2] - tm));
        lr.push_back(log_abs(pt.p) - lden);
    }
    return summarize("interior-gradient", s, lr, EstimateSide::Origin, opt);
}

}  // namespace singulab
