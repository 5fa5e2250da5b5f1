#include "gsd/mvn.hpp"

#include <cmath>
#include <string>

#include "gsd/normal.hpp"
#include "gsd/rng.hpp"

namespace gsd {

Rectangle::Rectangle(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size() || lower_.empty())
        throw std::invalid_argument("rectangle bounds must have equal, "
                                    "positive dimension");
    for (std::size_t k = 0; k < lower_.size(); ++k)
        if (!(lower_[k] < upper_[k]))
            throw std::invalid_argument(
                "rectangle requires lower < upper in coordinate " +
                std::to_string(k));
}

JointLaw joint_law(const EfficacyModel& model, const LookSchedule& schedule,
                   Hypothesis hyp) {
    const std::size_t K = schedule.looks();
    JointLaw law;
    law.mean.resize(K);
    std::vector<double> info(K);
    for (std::size_t k = 0; k < K; ++k) {
        info[k] = information(model, schedule.n(k));
        law.mean[k] = mean_z(model, schedule.n(k), hyp);
    }
    law.corr.assign(K, std::vector<double>(K, 1.0));
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = i + 1; j < K; ++j)
            law.corr[i][j] = law.corr[j][i] = std::sqrt(info[i] / info[j]);
    return law;
}

double rect_prob(const JointLaw& law, const Rectangle& region) {
    const std::size_t K = law.dim();
    if (region.dim() != K)
        throw std::invalid_argument("law and region dimensions differ");
    if (K == 1) {
        const double lo = region.lower(0) - law.mean[0];
        const double hi = region.upper(0) - law.mean[0];
        const double lo_cdf = std::isinf(lo) && lo < 0 ? 0.0 : norm_cdf(lo);
        const double hi_cdf = std::isinf(hi) && hi > 0 ? 1.0 : norm_cdf(hi);
        return std::max(0.0, hi_cdf - lo_cdf);
    }
    if (K > 2)
        throw unsupported_dimension(
            "deterministic rect_prob supports at most two looks; use "
            "mc_rect_prob for K >= 3");

    const double r = law.corr[0][1];
    const double l1 = region.lower(0) - law.mean[0];
    const double u1 = region.upper(0) - law.mean[0];
    const double l2 = region.lower(1) - law.mean[1];
    const double u2 = region.upper(1) - law.mean[1];
    // Inclusion-exclusion on upper orthants keeps infinite limits exact.
    double p = bvn_upper(l1, l2, r) - bvn_upper(u1, l2, r) -
               bvn_upper(l1, u2, r) + bvn_upper(u1, u2, r);
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

namespace {

// Lower Cholesky factor allowing positive semi-definite input: a pivot
// within tolerance of zero zeroes its column.
std::vector<std::vector<double>> psd_cholesky(
    const std::vector<std::vector<double>>& m) {
    const std::size_t K = m.size();
    constexpr double tol = 1e-12;
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (std::fabs(m[i][j] - m[j][i]) > tol)
                throw std::runtime_error("correlation matrix not symmetric");

    std::vector<std::vector<double>> L(K, std::vector<double>(K, 0.0));
    for (std::size_t j = 0; j < K; ++j) {
        double d = m[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= L[j][k] * L[j][k];
        if (d < -tol)
            throw std::runtime_error(
                "correlation matrix not positive semi-definite");
        L[j][j] = d > 0.0 ? std::sqrt(d) : 0.0;
        for (std::size_t i = j + 1; i < K; ++i) {
            double s = m[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k];
            L[i][j] = L[j][j] > 0.0 ? s / L[j][j] : 0.0;
        }
    }
    return L;
}

}  // namespace

McEstimate mc_rect_prob(const JointLaw& law, const Rectangle& region,
                        std::uint64_t n_draws, std::uint64_t seed) {
    const std::size_t K = law.dim();
    if (region.dim() != K)
        throw std::invalid_argument("law and region dimensions differ");
    if (n_draws < 1)
        throw std::invalid_argument("n_draws must be at least 1");

    const auto L = psd_cholesky(law.corr);
    std::vector<double> g(K);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < n_draws; ++t) {
        for (std::size_t k = 0; k < K; ++k)
            g[k] = norm_quantile(uniform_at(seed, t * K + k));
        bool inside = true;
        for (std::size_t i = 0; i < K && inside; ++i) {
            double z = law.mean[i];
            for (std::size_t k = 0; k <= i; ++k) z += L[i][k] * g[k];
            inside = z >= region.lower(i) && z <= region.upper(i);
        }
        if (inside) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n_draws);
    const double se =
        std::sqrt(p * (1.0 - p) / static_cast<double>(n_draws));
    return {p, se};
}

}  // namespace gsd
