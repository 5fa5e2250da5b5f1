#pragma once

#include <functional>
#include <vector>

namespace gsd {

using ResidualFn =
    std::function<std::vector<double>(const std::vector<double>&)>;

/// Square nonlinear system residual(x) = 0 with a numerically estimated
/// Jacobian. Callers keep parameters in-domain by smooth reparameterization
/// (e.g. solving in log N), not by bounds.
struct RootProblem {
    ResidualFn residual;
    std::vector<double> start;
    double tol = 1e-8;       // residual infinity-norm tolerance
    int max_iter = 100;
    double step_damping = 0.5;  // backtracking factor in (0,1)
};

enum class RootStatus {
    converged,
    max_iterations,      // best iterate returned, tol not met
    singular_jacobian,   // condition estimate above 1e12
    non_finite_residual  // the residual escaped its domain
};

struct RootResult {
    std::vector<double> x;  // solution, or best iterate on failure
    RootStatus status = RootStatus::max_iterations;
    int iterations = 0;
    double residual_norm = 0;

    bool converged() const { return status == RootStatus::converged; }
};

/// Damped Newton iteration with central finite differences
/// (relative step 1e-6, absolute floor 1e-8) and a halving line search.
/// Never returns a silent near-solution: callers must branch on status.
RootResult multiroot(const RootProblem& problem);

}  // namespace gsd
