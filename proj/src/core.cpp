#include "gsd/types.hpp"

#include <cmath>
#include <string>

namespace gsd {

EfficacyModel::EfficacyModel(double p_t, double p_c, double delta)
    : p_t_(p_t), p_c_(p_c), delta_(delta) {
    if (!(p_t > 0.0 && p_t < 1.0))
        throw std::domain_error("p_t must lie strictly in (0,1), got " +
                                std::to_string(p_t));
    if (!(p_c > 0.0 && p_c < 1.0))
        throw std::domain_error("p_c must lie strictly in (0,1), got " +
                                std::to_string(p_c));
    if (!(delta > -1.0 && delta < 1.0))
        throw std::domain_error("delta must lie in (-1,1), got " +
                                std::to_string(delta));
}

double EfficacyModel::variance_unit() const {
    return p_t_ * (1.0 - p_t_) + p_c_ * (1.0 - p_c_);
}

LookSchedule::LookSchedule(std::vector<double> n) : n_(std::move(n)) {
    if (n_.empty())
        throw std::domain_error("schedule needs at least one look");
    double prev = 0.0;
    for (double nk : n_) {
        if (!(nk > prev))
            throw std::domain_error(
                "per-arm sample sizes must be positive and strictly "
                "increasing");
        prev = nk;
    }
}

void SpendingPlan::validate() const {
    if (!(alpha_total > 0.0 && alpha_total < 1.0))
        throw std::domain_error("alpha_total must lie in (0,1)");
    if (!(beta_total > 0.0 && beta_total < 1.0))
        throw std::domain_error("beta_total must lie in (0,1)");
    if (!(rho_e > 0.0)) throw std::domain_error("rho_e must be positive");
    if (!(rho_f > 0.0)) throw std::domain_error("rho_f must be positive");
}

void BoundarySet::validate() const {
    if (!(c12 > c11))
        throw std::domain_error(
            "efficacy bound c12 must lie strictly above futility bound c11");
}

double information(const EfficacyModel& model, double n) {
    if (!(n > 0.0))
        throw std::domain_error("sample size must be positive, got " +
                                std::to_string(n));
    return n / model.variance_unit();
}

double mean_z(const EfficacyModel& model, double n, Hypothesis hyp) {
    double info = information(model, n);
    if (hyp == Hypothesis::H0) return 0.0;
    return model.theta() * std::sqrt(info);
}

}  // namespace gsd
