#pragma once

#include <vector>

#include "gsd/types.hpp"

namespace gsd {

/// Per-look error spend increments; a sums to alpha_total and b to
/// beta_total by telescoping.
struct SpendTargets {
    std::vector<double> a;
    std::vector<double> b;
};

/// Cumulative type I spend f_alpha(t) = t^rho_e * alpha_total for an
/// information fraction t in (0,1].
double spend_alpha(double t, const SpendingPlan& plan);

/// Cumulative type II spend f_beta(t) = t^rho_f * beta_total.
double spend_beta(double t, const SpendingPlan& plan);

/// Incremental spend at each look of the schedule, with t_0 = 0.
SpendTargets targets(const LookSchedule& schedule, const SpendingPlan& plan);

}  // namespace gsd
