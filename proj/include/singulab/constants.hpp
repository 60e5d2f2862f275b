#pragma once

#include <optional>

#include "singulab/params.hpp"
#include "singulab/trajectory.hpp"

namespace singulab {

// Closed-form constants of the three model equations
//   Riccati   -Δu + m|∇u|^q = 0
//   eikonal    m|∇u|^q - e^u = 0
//   Emden     -Δu - e^u = 0
// and of the radial singular profiles of -Δu + m|∇u|^q - e^u = 0.

/// Riccati similarity exponent (2-q)/(q-1), q > 1. The formula is evaluated
/// at q = 2 as well (β = 0) although no result here covers that case.
double beta(double q);

/// Λ_{N,m,q} = -(1/β) ((N-2-β)/m)^{1/(q-1)}, the limit of r^β u(r) for
/// strongly singular radial solutions. Requires N >= 3 and N/(N-1) < q < 2.
double lambda_nmq(const Params& p);

/// Λ_{N,m} = (1/(N-2)) (m/(N-1))^{1-N}, critical-q counterpart of lambda_nmq.
double lambda_nm(int N, double m);

/// ω_e = ln m + q ln q, constant spherical profile of the eikonal equation.
double omega_eikonal(double q, double m);

/// ω_E = ln(2N-4), constant spherical profile of the Emden equation (N >= 3).
double omega_emden(int N);

/// Hölder exponent (q-2)/(q-1) of singular solutions for q > 2.
double holder_exponent(double q);

/// ((N(q-1)-q)/(m(q-1)))^{1/(q-1)}: limit of r^{1/(q-1)} u_r on the Hölder branch, q > 2.
double holder_grad_coeff(const Params& p);

/// m q^q: limit of r^q e^u on the eikonal branch.
double eikonal_amplitude(double q, double m);

/// (((N-1)(q-1)-1)/((q-1)m))^{1/(q-1)}: limit of r^{1/(q-1)} u_r on the
/// strongly singular branch, N/(N-1) < q < 2.
double strong_grad_coeff(const Params& p);

/// c_N = (N-2)|S^{N-1}|, normalising |x|^{2-N}/c_N as the fundamental solution.
double cap_cn(int N);

/// Surface area of the unit sphere S^{N-1}.
double sphere_area(int N);

/// All constants for a parameter triple; regime-gated fields are empty when
/// their preconditions fail.
struct ConstantsBundle {
    std::optional<double> beta;  // empty for q = 2, which the bundle does not cover
    std::optional<double> lambda_nmq;
    std::optional<double> lambda_nm;
    double omega_e = 0.0;
    std::optional<double> omega_E;
    std::optional<double> holder_exponent;  // empty for q = 2
    std::optional<double> holder_grad_coeff;
    double eikonal_amplitude = 0.0;
    std::optional<double> strong_grad_coeff;
    std::optional<double> cap_cn;
};

ConstantsBundle constants_bundle(const Params& p);

enum class ProfileKind { Riccati, Eikonal, Emden, CriticalLog };

std::string to_string(ProfileKind k);

/// Exact radial profiles of the model equations: Riccati Λ_{N,m,q} r^{-β},
/// eikonal q ln(q m^{1/q}/r), Emden -2 ln r + ln(2N-4). CriticalLog is the
/// leading term -Λ_{N,m} r^{2-N}(-ln r)^{1-N} with derivative
/// (m/(N-1))^{1-N} r^{1-N}(-ln r)^{1-N}; pp is the derivative of that
/// expression. Valid only for r < 1.
RadialSample model_profile(ProfileKind kind, const Params& p, double r);

/// Pointwise residual of the model equation attached to `kind`
/// (CriticalLog uses the Riccati equation).
double residual_model(ProfileKind kind, const Params& p, double r, double u, double u_r,
                      double u_rr);

/// Sampled model profile on a log-uniform grid.
Trajectory sample_profile(ProfileKind kind, const Params& p, double r_lo, double r_hi,
                          std::size_t n);

enum class ScalingKind { Riccati, Eikonal, Emden };

/// Applies T_ℓ to a sampled trajectory. Sample at r becomes a sample at r/ℓ:
///   Riccati  ℓ^β u(ℓx),   eikonal  q ln ℓ + u(ℓx),   Emden  u(ℓx) + 2 ln ℓ,
/// derivatives follow by the chain rule.
Trajectory scale(ScalingKind kind, double ell, const Trajectory& traj);

/// |x|^q evaluated as exp(q ln|x|), 0 for x = 0.
double abs_pow(double x, double q);

}  // namespace singulab
