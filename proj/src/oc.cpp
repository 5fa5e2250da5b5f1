#include "gsd/oc.hpp"

#include <cmath>
#include <tuple>

#include "gsd/normal.hpp"

namespace gsd {

namespace {

void require_two_looks(const Design& d) {
    if (d.schedule.looks() != 2)
        throw unsupported_dimension(
            "deterministic operating characteristics require exactly one "
            "interim look (K = 2)");
}

double joint_rect(const Design& d, Hypothesis hyp, double l1, double u1,
                  double l2, double u2) {
    const JointLaw law = joint_law(d.model, d.schedule, hyp);
    return rect_prob(law, Rectangle({l1, l2}, {u1, u2}));
}

}  // namespace

std::pair<double, double> alpha_components(const Design& d) {
    require_two_looks(d);
    const double a1 = std::isinf(d.boundaries.c12)
                          ? 0.0
                          : 1.0 - norm_cdf(d.boundaries.c12);
    const double low =
        d.plan.futility_binding ? d.boundaries.c11 : -kInf;
    double a2 = 0.0;
    if (low < d.boundaries.c12)
        a2 = joint_rect(d, Hypothesis::H0, low, d.boundaries.c12,
                        d.boundaries.c2, kInf);
    return {a1, a2};
}

std::pair<double, double> beta_components(const Design& d) {
    require_two_looks(d);
    const double m1 = mean_z(d.model, d.schedule.n(0), Hypothesis::H1);
    const double b1 = std::isinf(d.boundaries.c11) && d.boundaries.c11 < 0
                          ? 0.0
                          : norm_cdf(d.boundaries.c11 - m1);
    double b2 = 0.0;
    if (d.boundaries.c11 < d.boundaries.c12)
        b2 = joint_rect(d, Hypothesis::H1, d.boundaries.c11,
                        d.boundaries.c12, -kInf, d.boundaries.c2);
    return {b1, b2};
}

std::pair<double, double> crossing(const Design& d) {
    require_two_looks(d);
    const double m1 = mean_z(d.model, d.schedule.n(0), Hypothesis::H1);
    const double w1 = std::isinf(d.boundaries.c12)
                          ? 0.0
                          : 1.0 - norm_cdf(d.boundaries.c12 - m1);
    double w2 = 0.0;
    if (d.boundaries.c11 < d.boundaries.c12)
        w2 = joint_rect(d, Hypothesis::H1, d.boundaries.c11,
                        d.boundaries.c12, d.boundaries.c2, kInf);
    return {w1, w2};
}

double futility_crossing(const Design& d, Hypothesis hyp) {
    require_two_looks(d);
    const double m1 = mean_z(d.model, d.schedule.n(0), hyp);
    if (std::isinf(d.boundaries.c11) && d.boundaries.c11 < 0) return 0.0;
    return norm_cdf(d.boundaries.c11 - m1);
}

std::pair<double, double> min_difference(const Design& d) {
    require_two_looks(d);
    const double i1 = information(d.model, d.schedule.n(0));
    const double i2 = information(d.model, d.schedule.n(1));
    return {d.model.delta() + d.boundaries.c12 / std::sqrt(i1),
            d.model.delta() + d.boundaries.c2 / std::sqrt(i2)};
}

double expected_sample_size(const Design& d, Hypothesis hyp,
                            bool count_futility) {
    require_two_looks(d);
    const double m1 = mean_z(d.model, d.schedule.n(0), hyp);
    double p_stop = std::isinf(d.boundaries.c12)
                        ? 0.0
                        : 1.0 - norm_cdf(d.boundaries.c12 - m1);
    if (count_futility &&
        !(std::isinf(d.boundaries.c11) && d.boundaries.c11 < 0))
        p_stop += norm_cdf(d.boundaries.c11 - m1);
    return d.schedule.n(0) * p_stop + d.schedule.final_n() * (1.0 - p_stop);
}

OperatingCharacteristics evaluate(const Design& d) {
    OperatingCharacteristics oc;
    std::tie(oc.alpha1, oc.alpha2) = alpha_components(d);
    std::tie(oc.beta1, oc.beta2) = beta_components(d);
    std::tie(oc.omega1, oc.omega2) = crossing(d);
    std::tie(oc.d1, oc.d2) = min_difference(d);
    oc.power = oc.omega1 + oc.omega2;
    oc.ess_h1 = expected_sample_size(d, Hypothesis::H1);
    return oc;
}

}  // namespace gsd
