#include "gsd/spending.hpp"

#include <cmath>
#include <string>

namespace gsd {

namespace {

double spend(double t, double rho, double total) {
    if (!(t > 0.0 && t <= 1.0))
        throw std::domain_error(
            "information fraction must lie in (0,1], got " +
            std::to_string(t));
    return std::pow(t, rho) * total;
}

}  // namespace

double spend_alpha(double t, const SpendingPlan& plan) {
    return spend(t, plan.rho_e, plan.alpha_total);
}

double spend_beta(double t, const SpendingPlan& plan) {
    return spend(t, plan.rho_f, plan.beta_total);
}

SpendTargets targets(const LookSchedule& schedule, const SpendingPlan& plan) {
    const std::size_t K = schedule.looks();
    SpendTargets out;
    out.a.resize(K);
    out.b.resize(K);
    double prev_a = 0.0;  // t_0 = 0 convention
    double prev_b = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        // Information fraction; equals I_k / I_K since information is
        // linear in n for the Wald statistic.
        const double t = schedule.fraction(k);
        const double cum_a = spend_alpha(t, plan);
        const double cum_b = spend_beta(t, plan);
        out.a[k] = cum_a - prev_a;
        out.b[k] = cum_b - prev_b;
        prev_a = cum_a;
        prev_b = cum_b;
    }
    return out;
}

}  // namespace gsd
