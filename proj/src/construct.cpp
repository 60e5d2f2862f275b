#include "singulab/construct.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "singulab/constants.hpp"
#include "singulab/error.hpp"

namespace singulab {

std::string to_string(SeedKind k) {
    switch (k) {
        case SeedKind::Regular: return "regular";
        case SeedKind::WeakSingular: return "weak-singular";
        case SeedKind::StrongSingular: return "strong-singular";
        case SeedKind::CriticalLog: return "critical-log";
        case SeedKind::HolderSingular: return "holder-singular";
        case SeedKind::EikonalSingular: return "eikonal-singular";
    }
    return "unknown";
}

SeedKind seed_kind_from_string(const std::string& s) {
    for (SeedKind k : {SeedKind::Regular, SeedKind::WeakSingular, SeedKind::StrongSingular,
                       SeedKind::CriticalLog, SeedKind::HolderSingular, SeedKind::EikonalSingular})
        if (to_string(k) == s) return k;
    throw DomainError("unknown seed kind '" + s + "'");
}

void check_seed_regime(const Params& p, SeedKind kind) {
    const RegimeTag tag = p.tag();
    switch (kind) {
        case SeedKind::Regular: return;
        case SeedKind::WeakSingular:
            if (p.N >= 3 && tag == RegimeTag::Subcritical) return;
            throw RegimeError("weak-singular seeds require N >= 3 and 1 < q < N/(N-1)");
        case SeedKind::StrongSingular:
            if (p.N >= 3 && tag == RegimeTag::Supercritical) return;
            throw RegimeError("strong-singular seeds require N >= 3 and N/(N-1) < q < 2");
        case SeedKind::CriticalLog:
            if (p.N >= 3 && tag == RegimeTag::Critical) return;
            throw RegimeError("critical-log seeds require N >= 3 and q = N/(N-1)");
        case SeedKind::HolderSingular:
        case SeedKind::EikonalSingular:
            if (tag == RegimeTag::Superquadratic) return;
            throw RegimeError(to_string(kind) + " seeds require q > 2");
    }
}

RadialState seed(const Params& p, const SeedSpec& spec) {
    check_seed_regime(p, spec.kind);
    const double eps = spec.epsilon;
    if (!(eps > 0.0)) throw DomainError("seed radius must be positive");
    const int N = p.N;
    const double q = p.q;
    switch (spec.kind) {
        case SeedKind::Regular: {
            const double e0 = std::exp(spec.scalar);
            return {eps, spec.scalar - e0 * eps * eps / (2.0 * N), -e0 * eps / N};
        }
        case SeedKind::WeakSingular: {
            const double g = spec.scalar;
            if (!(g < 0.0)) throw DomainError("weak-singular seeds need gamma < 0");
            return {eps, g * std::pow(eps, 2.0 - N), (2.0 - N) * g * std::pow(eps, 1.0 - N)};
        }
        case SeedKind::StrongSingular: {
            const double u = lambda_nmq(p) * std::pow(eps, -beta(q)) + spec.scalar;
            return {eps, u, strong_grad_coeff(p) * std::pow(eps, -1.0 / (q - 1.0))};
        }
        case SeedKind::CriticalLog: {
            if (!(eps < 1.0)) throw DomainError("critical-log seeds need epsilon < 1");
            const double L = -std::log(eps);
            const double u =
                -lambda_nm(N, p.m) * std::pow(eps, 2.0 - N) * std::pow(L, 1.0 - N) + spec.scalar;
            const double ur = std::pow((q - 1.0) * p.m * eps * L, -1.0 / (q - 1.0));
            return {eps, u, ur};
        }
        case SeedKind::HolderSingular:
            return {eps, spec.scalar, holder_grad_coeff(p) * std::pow(eps, -1.0 / (q - 1.0))};
        case SeedKind::EikonalSingular:
            return {eps, q * std::log(q * std::pow(p.m, 1.0 / q) / eps) + spec.scalar, -q / eps};
    }
    throw DomainError("unknown seed kind");
}

namespace {

bool descends_to_minus_infinity(SeedKind k) {
    return k == SeedKind::WeakSingular || k == SeedKind::StrongSingular ||
           k == SeedKind::CriticalLog;
}

}  // namespace

Trajectory grow(const Params& p, const SeedSpec& spec, double r_end, const IntegrateOptions& opts) {
    const RadialState s0 = seed(p, spec);
    IntegrateOptions o = opts;
    if (descends_to_minus_infinity(spec.kind)) o.u_min = -std::numeric_limits<double>::max();
    Trajectory t = integrate(p, s0, r_end, o);
    if (spec.epsilon > kSeedRadiusWarn)
        t.notes.push_back("seed radius " + std::to_string(spec.epsilon) +
                          " exceeds 1e-2; leading-order ansatz may be inaccurate");
    t.notes.push_back("seed " + to_string(spec.kind) + " at r=" + std::to_string(spec.epsilon));
    return t;
}

namespace {

struct Probe {
    double scalar = 0.0;
    double f = 0.0;  // u(target) - target, ±inf on blow-up
    TerminationKind term = TerminationKind::ReachedEnd;
    double r_stop = 0.0;
};

int sign_of(double f) { return f > 0.0 ? 1 : (f < 0.0 ? -1 : 0); }

bool usable(const Probe& pr) { return !std::isnan(pr.f); }

}  // namespace

ShootResult shoot(const Params& p, const SeedSpec& family, const ShootTarget& target,
                  const ShootOptions& opts) {
    check_seed_regime(p, family.kind);
    if (!(target.r > 0.0) || target.r == family.epsilon)
        throw DomainError("shooting target radius must be positive and differ from epsilon");
    if (!(opts.tol > 0.0)) throw DomainError("shooting tolerance must be positive");
    const bool weak = family.kind == SeedKind::WeakSingular;

    std::vector<Probe> history;
    Trajectory best_traj;
    auto evaluate = [&](double scalar, Trajectory* keep) {
        SeedSpec s = family;
        s.scalar = scalar;
        Trajectory t = grow(p, s, target.r, opts.integrate);
        Probe pr{scalar, std::numeric_limits<double>::quiet_NaN(), t.termination.kind,
                 t.termination.r_star};
        switch (t.termination.kind) {
            case TerminationKind::ReachedEnd: pr.f = t.samples.back().u - target.u; break;
            case TerminationKind::BlowUpUp: pr.f = std::numeric_limits<double>::infinity(); break;
            case TerminationKind::BlowUpDown: pr.f = -std::numeric_limits<double>::infinity(); break;
            default: break;
        }
        history.push_back(pr);
        if (keep) *keep = std::move(t);
        return pr;
    };
    auto describe = [&]() {
        std::ostringstream os;
        for (const auto& h : history) {
            os << " [" << h.scalar << ": ";
            if (std::isnan(h.f)) os << to_string(h.term) << " at r=" << h.r_stop;
            else if (std::isinf(h.f)) os << to_string(h.term);
            else os << (h.f > 0 ? "+" : (h.f < 0 ? "-" : "0"));
            os << "]";
        }
        return os.str();
    };

    Probe lo, hi;
    bool bracketed = false;
    if (opts.bracket) {
        lo = evaluate(opts.bracket->first, nullptr);
        hi = evaluate(opts.bracket->second, nullptr);
        bracketed = usable(lo) && usable(hi) && sign_of(lo.f) * sign_of(hi.f) <= 0;
    } else {
        const double g = family.scalar;
        if (weak && !(g < 0.0)) throw DomainError("weak-singular shooting needs a negative guess");
        Probe centre = evaluate(g, nullptr);
        Probe left = centre, right = centre;
        double d = opts.initial_step;
        for (int k = 0; k < opts.max_expansions && !bracketed; ++k) {
            const double a = weak ? g * std::pow(2.0, k + 1) : g - d;
            const double b = weak ? g * std::pow(2.0, -(k + 1)) : g + d;
            const Probe pa = evaluate(a, nullptr);
            if (usable(pa) && usable(left) && sign_of(pa.f) * sign_of(left.f) <= 0) {
                lo = pa, hi = left, bracketed = true;
                break;
            }
            const Probe pb = evaluate(b, nullptr);
            if (usable(pb) && usable(right) && sign_of(pb.f) * sign_of(right.f) <= 0) {
                lo = right, hi = pb, bracketed = true;
                break;
            }
            left = pa;
            right = pb;
            d *= 2.0;
        }
    }
    if (!bracketed) throw NoBracket("no sign change found; probes:" + describe());

    ShootResult res;
    for (const Probe* pr : {&lo, &hi}) {
        if (std::isfinite(pr->f) && std::abs(pr->f) <= opts.tol) {
            res.scalar = pr->scalar;
            evaluate(pr->scalar, &res.trajectory);
            return res;
        }
    }
    for (int it = 1; it <= opts.max_iter; ++it) {
        double x;
        if (std::isfinite(lo.f) && std::isfinite(hi.f)) {
            x = hi.scalar - hi.f * (hi.scalar - lo.scalar) / (hi.f - lo.f);
            const double a = std::min(lo.scalar, hi.scalar);
            const double b = std::max(lo.scalar, hi.scalar);
            const double w = b - a;
            // keep secant iterates away from the bracket ends
            if (!(x > a + 0.01 * w && x < b - 0.01 * w)) x = 0.5 * (a + b);
        } else {
            x = 0.5 * (lo.scalar + hi.scalar);
        }
        Trajectory t;
        const Probe pm = evaluate(x, &t);
        if (std::isfinite(pm.f) && std::abs(pm.f) <= opts.tol) {
            res.trajectory = std::move(t);
            res.scalar = x;
            res.iterations = it;
            return res;
        }
        if (!usable(pm))
            throw NumericalError("shooting probe failed:" + describe());
        if (sign_of(pm.f) * sign_of(lo.f) < 0) {
            // root between lo and pm; Illinois-style damping of the kept end
            if (std::isfinite(lo.f) && sign_of(pm.f) == sign_of(hi.f)) lo.f *= 0.5;
            hi = pm;
        } else {
            if (std::isfinite(hi.f) && sign_of(pm.f) == sign_of(lo.f)) hi.f *= 0.5;
            lo = pm;
        }
        if (std::abs(hi.scalar - lo.scalar) <= 1e-15 * std::max(1.0, std::abs(x)))
            throw MaxIterExceeded("bracket collapsed before reaching tolerance:" + describe());
    }
    throw MaxIterExceeded("shooting did not converge in " + std::to_string(opts.max_iter) +
                          " iterations");
}

}  // namespace singulab
