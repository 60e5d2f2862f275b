#include "singulab/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "singulab/error.hpp"

namespace singulab {
namespace {

void require_radius(double r) {
    if (!(r > 0.0)) throw DomainError("radius must be positive");
}

double laplacian(const Params& p, double r, double u_r, double u_rr) {
    return u_rr + (p.N - 1) * u_r / r;
}

}  // namespace

double abs_pow(double x, double q) {
    if (x == 0.0) return 0.0;
    return std::exp(q * std::log(std::abs(x)));
}

double beta(double q) {
    if (!(q > 1.0)) throw DomainError("q must be > 1");
    return (2.0 - q) / (q - 1.0);
}

double lambda_nmq(const Params& p) {
    if (p.N < 3 || p.tag() != RegimeTag::Supercritical)
        throw RegimeError("lambda_nmq requires N >= 3 and N/(N-1) < q < 2");
    const double b = beta(p.q);
    return -(1.0 / b) * std::pow((p.N - 2 - b) / p.m, 1.0 / (p.q - 1.0));
}

double lambda_nm(int N, double m) {
    if (N < 3) throw DomainError("lambda_nm requires N >= 3");
    if (!(m > 0.0)) throw DomainError("lambda_nm requires m > 0");
    return std::pow(m / (N - 1), 1.0 - N) / (N - 2);
}

double omega_eikonal(double q, double m) { return std::log(m) + q * std::log(q); }

double omega_emden(int N) {
    if (N < 3) throw DomainError("the Emden constant ln(2N-4) requires N >= 3");
    return std::log(2.0 * N - 4.0);
}

double holder_exponent(double q) {
    if (!(q > 1.0)) throw DomainError("q must be > 1");
    return (q - 2.0) / (q - 1.0);
}

double holder_grad_coeff(const Params& p) {
    if (p.tag() != RegimeTag::Superquadratic) throw RegimeError("holder_grad_coeff requires q > 2");
    return std::pow((p.N * (p.q - 1.0) - p.q) / (p.m * (p.q - 1.0)), 1.0 / (p.q - 1.0));
}

double eikonal_amplitude(double q, double m) { return m * std::pow(q, q); }

double strong_grad_coeff(const Params& p) {
    if (p.N < 3 || p.tag() != RegimeTag::Supercritical)
        throw RegimeError("strong_grad_coeff requires N >= 3 and N/(N-1) < q < 2");
    const double a = (p.N - 1) * (p.q - 1.0) - 1.0;
    return std::pow(a / ((p.q - 1.0) * p.m), 1.0 / (p.q - 1.0));
}

double sphere_area(int N) {
    if (N < 1) throw DomainError("sphere_area requires N >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

double cap_cn(int N) {
    if (N < 3) throw DomainError("c_N requires N >= 3");
    return (N - 2) * sphere_area(N);
}

ConstantsBundle constants_bundle(const Params& p) {
    ConstantsBundle c;
    const RegimeTag tag = p.tag();
    if (tag != RegimeTag::Quadratic) {
        c.beta = beta(p.q);
        c.holder_exponent = holder_exponent(p.q);
    }
    if (p.N >= 3 && tag == RegimeTag::Supercritical) {
        c.lambda_nmq = lambda_nmq(p);
        c.strong_grad_coeff = strong_grad_coeff(p);
    }
    if (p.N >= 3 && tag == RegimeTag::Critical) c.lambda_nm = lambda_nm(p.N, p.m);
    c.omega_e = omega_eikonal(p.q, p.m);
    if (p.N >= 3) {
        c.omega_E = omega_emden(p.N);
        c.cap_cn = cap_cn(p.N);
    }
    if (tag == RegimeTag::Superquadratic) c.holder_grad_coeff = holder_grad_coeff(p);
    c.eikonal_amplitude = eikonal_amplitude(p.q, p.m);
    return c;
}

std::string to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::Riccati: return "riccati";
        case ProfileKind::Eikonal: return "eikonal";
        case ProfileKind::Emden: return "emden";
        case ProfileKind::CriticalLog: return "critical-log";
    }
    return "unknown";
}

RadialSample model_profile(ProfileKind kind, const Params& p, double r) {
    require_radius(r);
    switch (kind) {
        case ProfileKind::Riccati: {
            const double lam = lambda_nmq(p);
            const double b = beta(p.q);
            const double rb = std::pow(r, -b);
            return {r, lam * rb, -b * lam * rb / r, b * (b + 1.0) * lam * rb / (r * r)};
        }
        case ProfileKind::Eikonal: {
            const double q = p.q;
            return {r, q * std::log(q * std::pow(p.m, 1.0 / q) / r), -q / r, q / (r * r)};
        }
        case ProfileKind::Emden:
            return {r, -2.0 * std::log(r) + omega_emden(p.N), -2.0 / r, 2.0 / (r * r)};
        case ProfileKind::CriticalLog: {
            if (p.N < 3 || p.tag() != RegimeTag::Critical)
                throw RegimeError("critical-log profile requires N >= 3 and q = N/(N-1)");
            if (!(r < 1.0)) throw DomainError("critical-log profile is defined for r < 1");
            const int N = p.N;
            const double L = -std::log(r);
            const double k = std::pow(p.m / (N - 1), 1.0 - N);
            const double u = -lambda_nm(N, p.m) * std::pow(r, 2.0 - N) * std::pow(L, 1.0 - N);
            const double ur = k * std::pow(r, 1.0 - N) * std::pow(L, 1.0 - N);
            // d/dr of ur: (1-N) ur / r + (N-1) ur / (r L)
            const double urr = (1.0 - N) * ur / r + (N - 1) * ur / (r * L);
            return {r, u, ur, urr};
        }
    }
    throw DomainError("unknown profile kind");
}

double residual_model(ProfileKind kind, const Params& p, double r, double u, double u_r,
                      double u_rr) {
    require_radius(r);
    switch (kind) {
        case ProfileKind::Riccati:
        case ProfileKind::CriticalLog:
            return -laplacian(p, r, u_r, u_rr) + p.m * abs_pow(u_r, p.q);
        case ProfileKind::Eikonal:
            return p.m * abs_pow(u_r, p.q) - std::exp(u);
        case ProfileKind::Emden:
            return -laplacian(p, r, u_r, u_rr) - std::exp(u);
    }
    throw DomainError("unknown profile kind");
}

Trajectory sample_profile(ProfileKind kind, const Params& p, double r_lo, double r_hi,
                          std::size_t n) {
    return sample_function(p, r_lo, r_hi, n,
                           [&](double r) { return model_profile(kind, p, r); });
}

Trajectory scale(ScalingKind kind, double ell, const Trajectory& traj) {
    if (traj.empty()) throw DomainError("cannot scale an empty trajectory");
    if (!(ell > 0.0) || !std::isfinite(ell)) throw DomainError("scaling factor must be positive");
    Trajectory out = traj;
    double shift = 0.0;
    double factor = 1.0;  // multiplies u
    switch (kind) {
        case ScalingKind::Riccati: factor = std::pow(ell, beta(traj.params.q)); break;
        case ScalingKind::Eikonal: shift = traj.params.q * std::log(ell); break;
        case ScalingKind::Emden: shift = 2.0 * std::log(ell); break;
    }
    for (auto& s : out.samples) {
        s.r /= ell;
        s.u = factor * s.u + shift;
        s.p = factor * ell * s.p;
        s.pp = factor * ell * ell * s.pp;
    }
    out.termination.r_star /= ell;
    return out;
}

}  // namespace singulab
