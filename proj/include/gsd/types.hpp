#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gsd {

enum class Hypothesis { H0, H1 };

/// Assumed response rates and the non-inferiority margin.
///
/// The natural estimator of the treatment effect against the margin is
/// theta = p_t - p_c - delta; the trial succeeds when evidence supports
/// theta > 0.
class EfficacyModel {
public:
    EfficacyModel(double p_t, double p_c, double delta);

    double p_t() const { return p_t_; }
    double p_c() const { return p_c_; }
    double delta() const { return delta_; }

    double theta() const { return p_t_ - p_c_ - delta_; }

    /// p_t(1-p_t) + p_c(1-p_c); the variance of the estimated difference
    /// at per-arm size n is this divided by n.
    double variance_unit() const;

private:
    double p_t_;
    double p_c_;
    double delta_;
};

/// Per-arm sample sizes at each look. Strictly increasing; the last entry
/// is the overall per-arm size N. Sizes are real-valued; rounding to whole
/// patients is a presentation concern.
class LookSchedule {
public:
    explicit LookSchedule(std::vector<double> n);

    std::size_t looks() const { return n_.size(); }
    double n(std::size_t k) const { return n_.at(k); }
    double final_n() const { return n_.back(); }
    double fraction(std::size_t k) const { return n_.at(k) / n_.back(); }
    const std::vector<double>& sizes() const { return n_; }

private:
    std::vector<double> n_;
};

/// Total error budgets and the spending exponents that distribute them
/// across looks.
struct SpendingPlan {
    double alpha_total = 0.025;
    double beta_total = 0.1;
    double rho_e = 2.0;  // type I spending exponent
    double rho_f = 3.0;  // type II spending exponent
    bool futility_binding = false;

    void validate() const;
};

/// Critical values: c11 futility at interim, c12 efficacy at interim,
/// c2 at the final look. c12 > c11 always; infinities are allowed to
/// disable a boundary.
struct BoundarySet {
    double c11;
    double c12;
    double c2;

    void validate() const;
};

struct OperatingCharacteristics {
    double alpha1 = 0;
    double alpha2 = 0;
    double beta1 = 0;
    double beta2 = 0;
    double omega1 = 0;
    double omega2 = 0;
    double d1 = 0;
    double d2 = 0;
    double power = 0;
    double ess_h1 = 0;  // futility stops counted as stops
};

/// Fisher information of the natural estimator at per-arm size n:
/// the reciprocal of p_t q_t / n + p_c q_c / n. Linear in n.
double information(const EfficacyModel& model, double n);

/// E[Z] at per-arm size n: theta * sqrt(I(n)) under H1, 0 under H0
/// (boundary of the null). Information is evaluated at the assumed
/// proportions under both hypotheses.
double mean_z(const EfficacyModel& model, double n, Hypothesis hyp);

}  // namespace gsd
