#pragma once

#include <vector>

#include "singulab/error.hpp"
#include "singulab/params.hpp"

namespace singulab {

/// Finite-difference solution of the radial equation on [a, b], on a grid
/// uniform in s = ln r.
struct FdSolution {
    Params params;
    std::vector<double> r;
    std::vector<double> u;
    std::vector<double> u_r;  // centered differences, one-sided at the ends
    int newton_iterations = 0;
    double final_residual_norm = 0.0;  // max |discrete residual|
    std::vector<double> residual_history;
    bool converged = false;

    double h() const;  // grid spacing in ln r
    /// Piecewise-linear interpolation in ln r; throws DomainError outside [a, b].
    double u_at(double rr) const;
};

/// Newton stalled: no damped step reduced the residual, the iteration limit
/// was reached, or the iterate left the representable range.
class NewtonDiverged : public NumericalError {
public:
    NewtonDiverged(const std::string& what, FdSolution last)
        : NumericalError(what), last_(std::move(last)) {}
    const FdSolution& last_iterate() const { return last_; }

private:
    FdSolution last_;
};

class SingularJacobian : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Solves -u_ss - (N-2) u_s + m e^{(2-q)s}|u_s|^q - e^{2s} e^u = 0 with
/// u(a) = u_a, u(b) = u_b by damped Newton. The residual norm is the max over
/// interior nodes of this discrete equation (r^2 times the residual in r).
FdSolution solve_bvp(const Params& p, double a, double b, double u_a, double u_b,
                     int n_cells = 2000, double newton_tol = 1e-8, int max_newton = 60);

/// Observed order log2(|u_n - u_2n| / |u_2n - u_4n|) in max norm over the
/// nodes of the coarsest grid.
double convergence_order(const FdSolution& coarse, const FdSolution& mid, const FdSolution& fine);

}  // namespace singulab
