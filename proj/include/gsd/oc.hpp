#pragma once

#include <utility>

#include "gsd/mvn.hpp"
#include "gsd/types.hpp"

namespace gsd {

/// A fully specified two-look design. Operating characteristics are
/// recomputed from the boundaries, never read back from spending targets,
/// so a target/realized mismatch is observable.
struct Design {
    EfficacyModel model;
    LookSchedule schedule;  // two looks for the deterministic evaluators
    BoundarySet boundaries;
    SpendingPlan plan;  // only totals and the binding flag are consulted
};

/// (alpha1, alpha2). alpha2 uses the non-binding definition
/// P(Z1 < c12, Z2 > c2 | H0) unless plan.futility_binding, in which case
/// the lower Z1 bound is c11.
std::pair<double, double> alpha_components(const Design& d);

/// (beta1, beta2): P(Z1 < c11 | H1) and the continuation-region miss
/// P(c11 < Z1 < c12, Z2 < c2 | H1).
std::pair<double, double> beta_components(const Design& d);

/// Efficacy crossing probabilities (omega1, omega2) under H1.
std::pair<double, double> crossing(const Design& d);

/// P(Z1 < c11 | hyp), the futility crossing probability at interim.
double futility_crossing(const Design& d, Hypothesis hyp);

/// Smallest observed p_t - p_c that lands in the rejection region:
/// d_k = delta + c / sqrt(I_k), with c12 at interim and c2 at final.
std::pair<double, double> min_difference(const Design& d);

/// n1 * P(stop at interim) + N * (1 - P(stop)). A futility stop counts as
/// a stop when count_futility is set (the default), even under
/// non-binding futility.
double expected_sample_size(const Design& d, Hypothesis hyp,
                            bool count_futility = true);

OperatingCharacteristics evaluate(const Design& d);

}  // namespace gsd
