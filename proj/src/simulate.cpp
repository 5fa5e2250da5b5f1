#include "gsd/simulate.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "gsd/rng.hpp"

namespace gsd {

namespace {

// Wald statistic at the observed proportions; NaN while either sample
// variance is zero.
double observed_z(long responders_t, long responders_c, long n,
                  double delta) {
    const double pt = static_cast<double>(responders_t) / n;
    const double pc = static_cast<double>(responders_c) / n;
    const double v = (pt * (1.0 - pt) + pc * (1.0 - pc)) / n;
    if (!(v > 0.0)) return std::nan("");
    return (pt - pc - delta) / std::sqrt(v);
}

}  // namespace

TrajectoryRun simulate_trajectory(const EfficacyModel& model,
                                  std::size_t max_n, std::uint64_t seed) {
    if (max_n < 2)
        throw std::domain_error("trajectory needs at least two patient pairs");
    TrajectoryRun run;
    run.seed = seed;
    run.z_path.resize(max_n);
    long xt = 0, xc = 0;
    for (std::size_t i = 0; i < max_n; ++i) {
        xt += bernoulli_at(seed, 2 * i, model.p_t()) ? 1 : 0;
        xc += bernoulli_at(seed, 2 * i + 1, model.p_c()) ? 1 : 0;
        run.z_path[i] =
            observed_z(xt, xc, static_cast<long>(i) + 1, model.delta());
    }
    return run;
}

double EmpiricalOc::se(double p) const {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n_trials));
}

double EmpiricalOc::se_corr() const {
    return (1.0 - corr_z1_z2 * corr_z1_z2) /
           std::sqrt(static_cast<double>(n_trials));
}

namespace {

struct BlockSums {
    std::uint64_t h1_eff1 = 0, h1_fut1 = 0, h1_succ2 = 0, h1_fail2 = 0;
    std::uint64_t h0_eff1 = 0, h0_rej2 = 0;
    std::uint64_t corr_n = 0;
    double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0;
};

struct TrialOutcome {
    double z1, z2;
};

TrialOutcome run_trial(std::uint64_t seed, std::uint64_t trial, long n1,
                       long n2, double p_t, double p_c, double delta) {
    const std::uint64_t base = trial * 2 * static_cast<std::uint64_t>(n2);
    long xt = 0, xc = 0;
    for (long j = 0; j < n1; ++j) {
        xt += bernoulli_at(seed, base + 2 * j, p_t) ? 1 : 0;
        xc += bernoulli_at(seed, base + 2 * j + 1, p_c) ? 1 : 0;
    }
    const double z1 = observed_z(xt, xc, n1, delta);
    for (long j = n1; j < n2; ++j) {
        xt += bernoulli_at(seed, base + 2 * j, p_t) ? 1 : 0;
        xc += bernoulli_at(seed, base + 2 * j + 1, p_c) ? 1 : 0;
    }
    const double z2 = observed_z(xt, xc, n2, delta);
    return {z1, z2};
}

}  // namespace

EmpiricalOc estimate_oc(const Design& design, std::uint64_t n_trials,
                        std::uint64_t seed, int threads) {
    if (n_trials < 1) throw std::domain_error("n_trials must be at least 1");
    if (design.schedule.looks() != 2)
        throw std::domain_error("simulation expects a two-look design");

    const double p_t = design.model.p_t();
    const double p_c = design.model.p_c();
    const double delta = design.model.delta();
    // Null boundary model: treatment rate shifted onto p_c + delta.
    const double p_t0 = p_c + delta;
    if (!(p_t0 > 0.0 && p_t0 < 1.0))
        throw std::domain_error(
            "H0 boundary model needs p_c + delta in (0,1)");

    const long n1 = std::lround(design.schedule.n(0));
    const long n2 = std::lround(design.schedule.final_n());
    if (n1 < 1 || n2 <= n1)
        throw std::domain_error(
            "rounded look sizes must satisfy 1 <= n1 < n2");

    const double c11 = design.boundaries.c11;
    const double c12 = design.boundaries.c12;
    const double c2 = design.boundaries.c2;
    const bool binding = design.plan.futility_binding;
    const std::uint64_t seed_h1 = substream(seed, 1);
    const std::uint64_t seed_h0 = substream(seed, 2);

    // Fixed-size blocks with per-block partial sums: the final reduction
    // runs in block order, so results are identical for any thread count.
    const std::uint64_t block_size = 8192;
    const std::uint64_t n_blocks = (n_trials + block_size - 1) / block_size;
    std::vector<BlockSums> blocks(n_blocks);

    auto run_block = [&](std::uint64_t b) {
        BlockSums s;
        const std::uint64_t lo = b * block_size;
        const std::uint64_t hi = std::min(n_trials, lo + block_size);
        for (std::uint64_t t = lo; t < hi; ++t) {
            const TrialOutcome h1 =
                run_trial(seed_h1, t, n1, n2, p_t, p_c, delta);
            // Undefined interim statistics cannot cross a boundary; the
            // trial continues to the final look.
            if (h1.z1 > c12) {
                ++s.h1_eff1;
            } else if (h1.z1 < c11) {
                ++s.h1_fut1;
            } else if (h1.z2 > c2) {
                ++s.h1_succ2;
            } else {
                ++s.h1_fail2;
            }
            if (std::isfinite(h1.z1) && std::isfinite(h1.z2)) {
                ++s.corr_n;
                s.s1 += h1.z1;
                s.s2 += h1.z2;
                s.s11 += h1.z1 * h1.z1;
                s.s22 += h1.z2 * h1.z2;
                s.s12 += h1.z1 * h1.z2;
            }

            const TrialOutcome h0 =
                run_trial(seed_h0, t, n1, n2, p_t0, p_c, delta);
            if (h0.z1 > c12) {
                ++s.h0_eff1;
            } else if (h0.z2 > c2 && (!binding || h0.z1 > c11)) {
                ++s.h0_rej2;
            }
        }
        blocks[b] = s;
    };

    if (threads <= 1 || n_blocks == 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        const auto nt =
            std::min<std::uint64_t>(static_cast<std::uint64_t>(threads),
                                    n_blocks);
        for (std::uint64_t t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (std::uint64_t b = next.fetch_add(1); b < n_blocks;
                     b = next.fetch_add(1))
                    run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    BlockSums total;
    for (const BlockSums& s : blocks) {
        total.h1_eff1 += s.h1_eff1;
        total.h1_fut1 += s.h1_fut1;
        total.h1_succ2 += s.h1_succ2;
        total.h1_fail2 += s.h1_fail2;
        total.h0_eff1 += s.h0_eff1;
        total.h0_rej2 += s.h0_rej2;
        total.corr_n += s.corr_n;
        total.s1 += s.s1;
        total.s2 += s.s2;
        total.s11 += s.s11;
        total.s22 += s.s22;
        total.s12 += s.s12;
    }

    EmpiricalOc oc;
    oc.n_trials = n_trials;
    oc.n1 = n1;
    oc.n2 = n2;
    oc.h1_interim_efficacy = total.h1_eff1;
    oc.h1_interim_futility = total.h1_fut1;
    oc.h1_final_success = total.h1_succ2;
    oc.h1_final_failure = total.h1_fail2;
    oc.h0_interim_efficacy = total.h0_eff1;
    oc.h0_final_rejection = total.h0_rej2;

    const double nt = static_cast<double>(n_trials);
    oc.omega1 = total.h1_eff1 / nt;
    oc.omega2 = total.h1_succ2 / nt;
    oc.beta1 = total.h1_fut1 / nt;
    oc.beta2 = total.h1_fail2 / nt;
    oc.alpha1 = total.h0_eff1 / nt;
    oc.alpha2 = total.h0_rej2 / nt;

    if (total.corr_n > 1) {
        const double cn = static_cast<double>(total.corr_n);
        const double cov = total.s12 / cn - (total.s1 / cn) * (total.s2 / cn);
        const double v1 = total.s11 / cn - (total.s1 / cn) * (total.s1 / cn);
        const double v2 = total.s22 / cn - (total.s2 / cn) * (total.s2 / cn);
        if (v1 > 0.0 && v2 > 0.0) oc.corr_z1_z2 = cov / std::sqrt(v1 * v2);
    }

    const std::uint64_t stops = total.h1_eff1 + total.h1_fut1;
    oc.ess_h1 = (static_cast<double>(n1) * stops +
                 static_cast<double>(n2) * (n_trials - stops)) /
                nt;
    return oc;
}

}  // namespace gsd
