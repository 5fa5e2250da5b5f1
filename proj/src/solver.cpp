#include "gsd/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace gsd {

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        if (std::isnan(x)) return std::nan("");
        m = std::max(m, std::fabs(x));
    }
    return m;
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Solves J s = -r in place by Gaussian elimination with partial pivoting.
// Returns false when the pivot-ratio condition estimate exceeds 1e12.
bool solve_linear(std::vector<std::vector<double>> J, std::vector<double> r,
                  std::vector<double>& step) {
    const std::size_t m = r.size();
    for (double& x : r) x = -x;

    double max_pivot = 0.0, min_pivot = 0.0;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < m; ++i)
            if (std::fabs(J[i][col]) > std::fabs(J[piv][col])) piv = i;
        if (piv != col) {
            std::swap(J[piv], J[col]);
            std::swap(r[piv], r[col]);
        }
        const double p = std::fabs(J[col][col]);
        max_pivot = col == 0 ? p : std::max(max_pivot, p);
        min_pivot = col == 0 ? p : std::min(min_pivot, p);
        if (p == 0.0 || max_pivot / p > 1e12) return false;
        for (std::size_t i = col + 1; i < m; ++i) {
            const double f = J[i][col] / J[col][col];
            for (std::size_t j = col; j < m; ++j) J[i][j] -= f * J[col][j];
            r[i] -= f * r[col];
        }
    }
    step.assign(m, 0.0);
    for (std::size_t i = m; i-- > 0;) {
        double s = r[i];
        for (std::size_t j = i + 1; j < m; ++j) s -= J[i][j] * step[j];
        step[i] = s / J[i][i];
    }
    return all_finite(step);
}

}  // namespace

RootResult multiroot(const RootProblem& problem) {
    const std::size_t m = problem.start.size();
    if (m == 0) throw std::invalid_argument("empty start vector");
    if (!(problem.step_damping > 0.0 && problem.step_damping < 1.0))
        throw std::invalid_argument("step_damping must lie in (0,1)");

    RootResult res;
    res.x = problem.start;
    std::vector<double> r = problem.residual(res.x);
    if (r.size() != m)
        throw std::invalid_argument(
            "residual dimension does not match parameter dimension");
    double rnorm = inf_norm(r);
    if (!std::isfinite(rnorm)) {
        res.status = RootStatus::non_finite_residual;
        res.residual_norm = rnorm;
        return res;
    }

    std::vector<std::vector<double>> J(m, std::vector<double>(m));
    std::vector<double> xp(m), xm(m), step;

    for (int iter = 0; iter < problem.max_iter; ++iter) {
        res.iterations = iter;
        res.residual_norm = rnorm;
        if (rnorm <= problem.tol) {
            res.status = RootStatus::converged;
            return res;
        }

        // Central-difference Jacobian, relative step 1e-6, floor 1e-8.
        for (std::size_t j = 0; j < m; ++j) {
            const double h =
                std::max(1e-8, 1e-6 * std::fabs(res.x[j]));
            xp = res.x;
            xm = res.x;
            xp[j] += h;
            xm[j] -= h;
            const auto rp = problem.residual(xp);
            const auto rm = problem.residual(xm);
            if (!all_finite(rp) || !all_finite(rm)) {
                res.status = RootStatus::non_finite_residual;
                return res;
            }
            for (std::size_t i = 0; i < m; ++i)
                J[i][j] = (rp[i] - rm[i]) / (2.0 * h);
        }

        if (!solve_linear(J, r, step)) {
            res.status = RootStatus::singular_jacobian;
            return res;
        }

        // Backtracking line search: shrink until the residual norm drops.
        double lambda = 1.0;
        bool accepted = false;
        for (int half = 0; half < 20; ++half) {
            for (std::size_t j = 0; j < m; ++j)
                xp[j] = res.x[j] + lambda * step[j];
            const auto rt = problem.residual(xp);
            const double tnorm = inf_norm(rt);
            if (std::isfinite(tnorm) && tnorm < rnorm) {
                res.x = xp;
                r = rt;
                rnorm = tnorm;
                accepted = true;
                break;
            }
            lambda *= problem.step_damping;
        }
        if (!accepted) {
            res.iterations = iter + 1;
            res.residual_norm = rnorm;
            res.status = RootStatus::max_iterations;
            return res;
        }
    }

    res.iterations = problem.max_iter;
    res.residual_norm = rnorm;
    res.status =
        rnorm <= problem.tol ? RootStatus::converged : RootStatus::max_iterations;
    return res;
}

}  // namespace gsd
