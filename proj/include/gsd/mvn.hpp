#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gsd/types.hpp"

namespace gsd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown when a deterministic routine is asked for more looks than it
/// supports; callers should fall back to mc_rect_prob.
class unsupported_dimension : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Mean vector and correlation matrix of the sequential test statistics
/// (Z_1,...,Z_K): corr(Z_k1, Z_k2) = sqrt(I_k1 / I_k2) for k1 <= k2.
struct JointLaw {
    std::vector<double> mean;
    std::vector<std::vector<double>> corr;

    std::size_t dim() const { return mean.size(); }
};

/// Axis-aligned integration region; +/-infinity bounds are allowed and
/// handled as CDF limits, not sentinels.
class Rectangle {
public:
    Rectangle(std::vector<double> lower, std::vector<double> upper);

    std::size_t dim() const { return lower_.size(); }
    double lower(std::size_t k) const { return lower_.at(k); }
    double upper(std::size_t k) const { return upper_.at(k); }

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

JointLaw joint_law(const EfficacyModel& model, const LookSchedule& schedule,
                   Hypothesis hyp);

/// P(lower <= Z <= upper) by deterministic quadrature. Supports K <= 2;
/// throws unsupported_dimension for K >= 3 (use mc_rect_prob there).
/// Absolute accuracy <= 1e-10.
double rect_prob(const JointLaw& law, const Rectangle& region);

struct McEstimate {
    double p;
    double se;  // binomial standard error
};

/// Monte Carlo estimate via the Cholesky factor of corr; any K. The draws
/// are counter-based in (seed, draw index), so the result is independent
/// of evaluation order. Throws std::runtime_error if corr is not positive
/// semi-definite (tolerance 1e-12).
McEstimate mc_rect_prob(const JointLaw& law, const Rectangle& region,
                        std::uint64_t n_draws, std::uint64_t seed);

}  // namespace gsd
