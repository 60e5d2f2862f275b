#include "singulab/oracle_fd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "singulab/constants.hpp"

namespace singulab {

double FdSolution::h() const {
    if (r.size() < 2) return 0.0;
    return std::log(r.back() / r.front()) / static_cast<double>(r.size() - 1);
}

double FdSolution::u_at(double rr) const {
    if (r.size() < 2 || !(rr >= r.front() * (1 - 1e-12)) || !(rr <= r.back() * (1 + 1e-12)))
        throw DomainError("radius outside the FD grid");
    const double x = std::log(rr / r.front()) / h();
    const auto i = std::min(r.size() - 2, static_cast<std::size_t>(std::max(0.0, std::floor(x))));
    const double t = x - static_cast<double>(i);
    return (1 - t) * u[i] + t * u[i + 1];
}

namespace {

struct System {
    const Params& p;
    std::vector<double> s, w;  // s_i and m e^{(2-q)s_i}
    double h;

    bool residual(const std::vector<double>& u, std::vector<double>& out, double& norm) const {
        const std::size_t n = u.size();
        out.assign(n, 0.0);
        norm = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double d2 = (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h);
            const double d1 = (u[i + 1] - u[i - 1]) / (2 * h);
            const double f = -d2 - (p.N - 2.0) * d1 + w[i] * abs_pow(d1, p.q) - std::exp(2 * s[i] + u[i]);
            if (!std::isfinite(f)) return false;
            out[i] = f;
            norm = std::max(norm, std::abs(f));
        }
        return std::isfinite(norm);
    }

    // Solves J du = -F for interior nodes (Thomas algorithm).
    std::vector<double> newton_step(const std::vector<double>& u, const std::vector<double>& f) const {
        const std::size_t n = u.size();
        std::vector<double> lo(n), di(n), up(n), rhs(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double d1 = (u[i + 1] - u[i - 1]) / (2 * h);
            const double g = p.m == 0.0 || d1 == 0.0
                                 ? 0.0
                                 : w[i] * p.q * abs_pow(d1, p.q - 1.0) * (d1 > 0 ? 1.0 : -1.0);
            lo[i] = -1.0 / (h * h) + ((p.N - 2.0) - g) / (2 * h);
            up[i] = -1.0 / (h * h) - ((p.N - 2.0) - g) / (2 * h);
            di[i] = 2.0 / (h * h) - std::exp(2 * s[i] + u[i]);
            rhs[i] = -f[i];
        }
        std::vector<double> du(n, 0.0);
        for (std::size_t i = 2; i + 1 < n; ++i) {
            if (di[i - 1] == 0.0 || !std::isfinite(di[i - 1])) {
                std::ostringstream os;
                os << "singular Jacobian at node " << i - 1;
                throw SingularJacobian(os.str());
            }
            const double k = lo[i] / di[i - 1];
            di[i] -= k * up[i - 1];
            rhs[i] -= k * rhs[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            if (di[i] == 0.0 || !std::isfinite(di[i])) {
                std::ostringstream os;
                os << "singular Jacobian at node " << i;
                throw SingularJacobian(os.str());
            }
            du[i] = (rhs[i] - (i + 2 < n ? up[i] * du[i + 1] : 0.0)) / di[i];
            if (i == 1) break;
        }
        return du;
    }
};

void fill_gradient(FdSolution& sol, double h) {
    const std::size_t n = sol.u.size();
    sol.u_r.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double us;
        if (i == 0) us = (-3 * sol.u[0] + 4 * sol.u[1] - sol.u[2]) / (2 * h);
        else if (i + 1 == n) us = (3 * sol.u[n - 1] - 4 * sol.u[n - 2] + sol.u[n - 3]) / (2 * h);
        else us = (sol.u[i + 1] - sol.u[i - 1]) / (2 * h);
        sol.u_r[i] = us / sol.r[i];
    }
}

}  // namespace

FdSolution solve_bvp(const Params& p, double a, double b, double u_a, double u_b, int n_cells,
                     double newton_tol, int max_newton) {
    if (!(a > 0.0) || !(b > a)) throw DomainError("solve_bvp needs 0 < a < b");
    if (n_cells < 32) throw DomainError("solve_bvp needs at least 32 cells");
    if (!std::isfinite(u_a) || !std::isfinite(u_b)) throw DomainError("non-finite boundary data");
    if (!(newton_tol > 0.0) || max_newton < 1) throw DomainError("invalid Newton settings");

    const std::size_t n = static_cast<std::size_t>(n_cells) + 1;
    const double sa = std::log(a), sb = std::log(b), h = (sb - sa) / n_cells;
    System sys{p, std::vector<double>(n), std::vector<double>(n), h};
    FdSolution sol;
    sol.params = p;
    sol.r.resize(n);
    sol.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sys.s[i] = sa + h * static_cast<double>(i);
        sys.w[i] = p.m * std::exp((2.0 - p.q) * sys.s[i]);
        sol.r[i] = std::exp(sys.s[i]);
        const double t = static_cast<double>(i) / n_cells;
        sol.u[i] = (1 - t) * u_a + t * u_b;
    }
    sol.r.front() = a;
    sol.r.back() = b;

    std::vector<double> f, trial_f;
    double norm = 0.0;
    if (!sys.residual(sol.u, f, norm)) {
        fill_gradient(sol, h);
        throw NewtonDiverged("initial iterate has a non-finite residual", sol);
    }
    sol.residual_history.push_back(norm);
    while (norm > newton_tol) {
        if (sol.newton_iterations >= max_newton) {
            fill_gradient(sol, h);
            sol.final_residual_norm = norm;
            std::ostringstream os;
            os << "Newton did not converge in " << max_newton << " iterations (residual " << norm << ")";
            throw NewtonDiverged(os.str(), sol);
        }
        const auto du = sys.newton_step(sol.u, f);
        double lambda = 1.0;
        bool accepted = false;
        std::vector<double> trial(n);
        for (int k = 0; k <= 30; ++k, lambda *= 0.5) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = sol.u[i] + lambda * du[i];
            double tn = 0.0;
            if (sys.residual(trial, trial_f, tn) && tn < norm) {
                sol.u.swap(trial);
                f.swap(trial_f);
                norm = tn;
                accepted = true;
                break;
            }
        }
        ++sol.newton_iterations;
        if (!accepted) {
            fill_gradient(sol, h);
            sol.final_residual_norm = norm;
            std::ostringstream os;
            os << "damped Newton stalled after " << sol.newton_iterations
               << " iterations (residual " << norm << ")";
            throw NewtonDiverged(os.str(), sol);
        }
        sol.residual_history.push_back(norm);
    }
    sol.final_residual_norm = norm;
    sol.converged = true;
    fill_gradient(sol, h);
    return sol;
}

double convergence_order(const FdSolution& coarse, const FdSolution& mid, const FdSolution& fine) {
    const std::size_t nc = coarse.u.size();
    if (mid.u.size() != 2 * nc - 1 || fine.u.size() != 2 * mid.u.size() - 1)
        throw DomainError("convergence_order needs grids with n, 2n, 4n cells");
    double e1 = 0.0, e2 = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < nc; ++i) {
        e1 = std::max(e1, std::abs(coarse.u[i] - mid.u[2 * i]));
        e2 = std::max(e2, std::abs(mid.u[2 * i] - fine.u[4 * i]));
        scale = std::max(scale, std::abs(fine.u[4 * i]));
    }
    // Solutions linear in ln r are reproduced exactly; the order is then undefined.
    if (e2 <= 1e-12 * (1.0 + scale)) throw NumericalError("grid differences at roundoff level; order undefined");
    return std::log2(e1 / e2);
}

}  // namespace singulab
