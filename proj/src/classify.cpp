#include "singulab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "singulab/constants.hpp"
#include "singulab/error.hpp"
#include "singulab/stats.hpp"

namespace singulab {

std::string to_string(Basis b) {
    switch (b) {
        case Basis::Const: return "const";
        case Basis::Log: return "log";
        case Basis::EmdenLog: return "emden-log";
        case Basis::EikonalLog: return "eikonal-log";
        case Basis::PowNminus2: return "pow-n-minus-2";
        case Basis::PowBeta: return "pow-beta";
        case Basis::PowBetaLog: return "pow-beta-log";
        case Basis::PowHolder: return "pow-holder";
    }
    return "unknown";
}

std::string to_string(Side s) { return s == Side::Origin ? "origin" : "infinity"; }

std::string to_string(RegimeKind k) {
    switch (k) {
        case RegimeKind::Removable: return "removable";
        case RegimeKind::EmdenType: return "emden-type";
        case RegimeKind::WeakSingular: return "weak-singular";
        case RegimeKind::StrongSingular: return "strong-singular";
        case RegimeKind::CriticalLog: return "critical-log";
        case RegimeKind::HolderRegular: return "holder-regular";
        case RegimeKind::EikonalType: return "eikonal-type";
    }
    return "unknown";
}

namespace {

std::vector<RadialSample> window_samples(const Trajectory& traj, const Window& w, std::size_t n) {
    if (traj.empty()) throw InsufficientWindow("empty trajectory");
    if (!(w.r_lo > 0.0) || !(w.r_hi > w.r_lo)) throw InsufficientWindow("invalid window");
    if (n < 16) throw InsufficientWindow("fewer than 16 samples in the window");
    const double slack = 1e-9;
    if (w.r_lo < traj.r_min() * (1 - slack) || w.r_hi > traj.r_max() * (1 + slack))
        throw InsufficientWindow("window exceeds the trajectory range");
    auto pts = traj.resample_log(std::max(w.r_lo, traj.r_min()), std::min(w.r_hi, traj.r_max()), n);
    for (const auto& s : pts)
        if (!std::isfinite(s.u) || !std::isfinite(s.p))
            throw DomainError("non-finite values in the fitting window");
    return pts;
}

double feature(Basis b, const Params& p, Side side, double r) {
    switch (b) {
        case Basis::Const:
            if (side == Side::Origin) return r * r;
            return p.N == 2 ? 1.0 / r : std::pow(r, 2.0 - p.N);
        case Basis::Log:
        case Basis::EmdenLog:
        case Basis::EikonalLog: return -std::log(r);
        case Basis::PowNminus2: return std::pow(r, 2.0 - p.N);
        case Basis::PowBeta: return std::pow(r, -beta(p.q));
        case Basis::PowBetaLog: {
            if (!(r < 1.0)) throw DomainError("pow-beta-log feature needs r < 1");
            return std::pow(r, 2.0 - p.N) * std::pow(-std::log(r), 1.0 - p.N);
        }
        case Basis::PowHolder: return std::pow(r, holder_exponent(p.q));
    }
    return 0.0;
}

AsymptoticFit fit_points(const std::vector<RadialSample>& pts, const Params& p, const Window& w,
                         Basis basis, Side side) {
    std::vector<double> x, y;
    x.reserve(pts.size());
    y.reserve(pts.size());
    for (const auto& s : pts) {
        x.push_back(feature(basis, p, side, s.r));
        y.push_back(s.u);
    }
    AsymptoticFit fit;
    fit.model = basis;
    fit.window = w;
    if (basis == Basis::EmdenLog || basis == Basis::EikonalLog) {
        fit.amplitude = basis == Basis::EmdenLog ? 2.0 : p.q;
        double c = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) c += y[i] - fit.amplitude * x[i];
        c /= static_cast<double>(x.size());
        std::vector<double> res(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) res[i] = y[i] - fit.amplitude * x[i] - c;
        fit.constant = c;
        fit.rms_residual = stats::rms(res);
    } else {
        const stats::LineFit lf = stats::fit_line(x, y);
        fit.amplitude = lf.slope;
        fit.constant = lf.intercept;
        fit.rms_residual = lf.rms;
    }
    switch (basis) {
        case Basis::Const: fit.exponent = side == Side::Origin ? -2.0 : (p.N == 2 ? 1.0 : p.N - 2.0); break;
        case Basis::PowNminus2: fit.exponent = p.N - 2.0; break;
        case Basis::PowBetaLog:
            fit.exponent = p.N - 2.0;
            fit.log_power = 1.0 - p.N;
            break;
        case Basis::PowHolder: fit.exponent = -holder_exponent(p.q); break;
        case Basis::PowBeta: {
            std::vector<double> lx, ly;
            for (const auto& s : pts) {
                if (s.u == 0.0) continue;
                lx.push_back(std::log(s.r));
                ly.push_back(std::log(std::abs(s.u)));
            }
            fit.exponent = lx.size() >= 2 ? -stats::fit_line(lx, ly).slope
                                          : std::numeric_limits<double>::quiet_NaN();
            break;
        }
        default: break;
    }
    return fit;
}

Window default_window(const Trajectory& traj, const ClassifyThresholds& th, Side side) {
    if (th.window) return *th.window;
    if (traj.empty()) throw InsufficientWindow("empty trajectory");
    const double span = std::pow(10.0, th.decades);
    if (side == Side::Origin) return {traj.r_min(), std::min(traj.r_max(), traj.r_min() * span)};
    return {std::max(traj.r_min(), traj.r_max() / span), traj.r_max()};
}

struct Candidate {
    RegimeKind kind;
    Basis basis;
};

double estimate_for(RegimeKind kind, const std::vector<RadialSample>& pts, const Params& p,
                    const AsymptoticFit& fit, std::optional<double>& secondary) {
    std::vector<double> v;
    v.reserve(pts.size());
    switch (kind) {
        case RegimeKind::Removable: return fit.constant;
        case RegimeKind::EmdenType:
            for (const auto& s : pts) v.push_back(s.u + 2.0 * std::log(s.r));
            return stats::median(v);
        case RegimeKind::WeakSingular:
            for (const auto& s : pts) v.push_back(std::pow(s.r, p.N - 2.0) * s.u);
            return stats::median(v);
        case RegimeKind::StrongSingular: {
            const double b = beta(p.q);
            for (const auto& s : pts) v.push_back(std::pow(s.r, b) * s.u);
            return stats::median(v);
        }
        case RegimeKind::CriticalLog:
            for (const auto& s : pts)
                v.push_back(std::pow(s.r, p.N - 2.0) * std::pow(-std::log(s.r), p.N - 1.0) * s.u);
            return stats::median(v);
        case RegimeKind::HolderRegular: {
            for (const auto& s : pts) v.push_back(std::pow(s.r, 1.0 / (p.q - 1.0)) * s.p);
            secondary = stats::median(v);
            return fit.constant;
        }
        case RegimeKind::EikonalType:
            for (const auto& s : pts) v.push_back(s.u + p.q * std::log(s.r));
            return std::exp(stats::median(v));
    }
    return 0.0;
}

Regime select(const Trajectory& traj, const Params& p, const ClassifyThresholds& th, Side side,
              const std::vector<Candidate>& cands) {
    const Window w = default_window(traj, th, side);
    if (!(w.r_hi / w.r_lo >= th.min_span * (1 - 1e-9)))
        throw InsufficientWindow("window spans less than the required ratio");
    const auto pts = window_samples(traj, w, th.resample);

    std::vector<AsymptoticFit> fits;
    for (const auto& c : cands) fits.push_back(fit_points(pts, p, w, c.basis, side));
    std::vector<std::size_t> order(fits.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fits[a].rms_residual < fits[b].rms_residual;
    });
    const AsymptoticFit& best = fits[order[0]];
    const AsymptoticFit& second = fits[order[1]];
    double ratio;
    if (second.rms_residual > 0.0) ratio = best.rms_residual / second.rms_residual;
    else ratio = std::numeric_limits<double>::infinity();

    Regime out;
    out.kind = cands[order[0]].kind;
    out.side = side;
    out.fit = best;
    out.runner_up_ratio = ratio;
    out.candidates = fits;
    if (!(ratio <= th.ratio_threshold)) {
        std::ostringstream os;
        os << "best model " << to_string(best.model) << " (rms " << best.rms_residual
           << ") vs " << to_string(second.model) << " (rms " << second.rms_residual
           << "): ratio " << ratio << " above " << th.ratio_threshold;
        throw Ambiguous(os.str());
    }
    out.estimate = estimate_for(out.kind, pts, p, best, out.secondary);
    const bool sign_ok = (out.kind != RegimeKind::WeakSingular || out.estimate < 0.0) &&
                         (out.kind != RegimeKind::StrongSingular || out.estimate < 0.0) &&
                         (out.kind != RegimeKind::CriticalLog || out.estimate < 0.0) &&
                         (out.kind != RegimeKind::EikonalType || out.estimate > 0.0);
    if (!sign_ok)
        throw Ambiguous("winning model " + to_string(out.kind) +
                        " has an estimate of the wrong sign");
    return out;
}

}  // namespace

AsymptoticFit fit_asymptotics(const Trajectory& traj, const Window& window, Basis basis, Side side,
                              std::size_t n_resample) {
    const auto pts = window_samples(traj, window, n_resample);
    return fit_points(pts, traj.params, window, basis, side);
}

Regime classify_origin(const Trajectory& traj, const Params& p, const ClassifyThresholds& th) {
    std::vector<Candidate> c;
    switch (p.tag()) {
        case RegimeTag::Subcritical:
        case RegimeTag::Critical:
        case RegimeTag::Supercritical: {
            if (p.N < 3) throw RegimeError("classification at the origin for 1<q<2 requires N >= 3");
            c = {{RegimeKind::Removable, Basis::Const}, {RegimeKind::EmdenType, Basis::EmdenLog}};
            if (p.tag() == RegimeTag::Subcritical) c.push_back({RegimeKind::WeakSingular, Basis::PowNminus2});
            if (p.tag() == RegimeTag::Critical) c.push_back({RegimeKind::CriticalLog, Basis::PowBetaLog});
            if (p.tag() == RegimeTag::Supercritical) c.push_back({RegimeKind::StrongSingular, Basis::PowBeta});
            break;
        }
        case RegimeTag::Superquadratic:
            c = {{RegimeKind::Removable, Basis::Const},
                 {RegimeKind::HolderRegular, Basis::PowHolder},
                 {RegimeKind::EikonalType, Basis::EikonalLog}};
            break;
        case RegimeTag::Quadratic: throw RegimeError("q = 2 is not classified");
    }
    return select(traj, p, th, Side::Origin, c);
}

Regime classify_infinity(const Trajectory& traj, const Params& p, const ClassifyThresholds& th) {
    const Window w = default_window(traj, th, Side::Infinity);
    if (w.r_lo < 2.0) throw InsufficientWindow("classification at infinity needs r >= 2");
    ClassifyThresholds t2 = th;
    t2.window = w;
    std::vector<Candidate> c;
    switch (p.tag()) {
        case RegimeTag::Subcritical:
        case RegimeTag::Critical:
        case RegimeTag::Supercritical:
            c = {{RegimeKind::EikonalType, Basis::EikonalLog}, {RegimeKind::Removable, Basis::Const}};
            break;
        case RegimeTag::Superquadratic:
            c = {{RegimeKind::EmdenType, Basis::EmdenLog}, {RegimeKind::Removable, Basis::Const}};
            break;
        case RegimeTag::Quadratic: throw RegimeError("q = 2 is not classified");
    }
    return select(traj, p, t2, Side::Infinity, c);
}

GammaEstimate estimate_gamma(const Trajectory& traj, const Params& p, const Window& window,
                             std::size_t n_resample) {
    if (p.N < 3 || p.tag() != RegimeTag::Subcritical)
        throw RegimeError("gamma estimates require N >= 3 and 1 < q < N/(N-1)");
    const auto pts = window_samples(traj, window, n_resample);
    std::vector<double> value, flux;
    for (const auto& s : pts) {
        value.push_back(std::pow(s.r, p.N - 2.0) * s.u);
        flux.push_back(std::pow(s.r, p.N - 1.0) * s.p / (2.0 - p.N));
    }
    return {stats::median(value), stats::median(flux)};
}

}  // namespace singulab
