#pragma once

#include <cstdint>
#include <vector>

#include "gsd/oc.hpp"
#include "gsd/types.hpp"

namespace gsd {

/// One simulated path of the Wald statistic, one entry per accumulated
/// patient pair. Entries are NaN until both observed sample variances are
/// positive.
struct TrajectoryRun {
    std::uint64_t seed = 0;
    std::vector<double> z_path;
};

/// Draws one Bernoulli(p_t) and one Bernoulli(p_c) per step and evaluates
/// the Wald statistic at the observed proportions against the margin.
TrajectoryRun simulate_trajectory(const EfficacyModel& model,
                                  std::size_t max_n, std::uint64_t seed);

/// Empirical operating characteristics from patient-level simulation.
/// Real-valued look sizes are rounded to the nearest whole patient.
struct EmpiricalOc {
    std::uint64_t n_trials = 0;
    long n1 = 0;  // rounded per-arm look sizes actually simulated
    long n2 = 0;

    // decision partition under the H1 model (counts sum to n_trials)
    std::uint64_t h1_interim_efficacy = 0;
    std::uint64_t h1_interim_futility = 0;
    std::uint64_t h1_final_success = 0;
    std::uint64_t h1_final_failure = 0;

    // type I events under the H0 boundary model (p_t shifted to p_c + delta)
    std::uint64_t h0_interim_efficacy = 0;
    std::uint64_t h0_final_rejection = 0;  // per the plan's binding convention

    double omega1 = 0, omega2 = 0, beta1 = 0, beta2 = 0;
    double alpha1 = 0, alpha2 = 0;
    double corr_z1_z2 = 0;  // empirical correlation under H1
    double ess_h1 = 0;      // futility stops counted as stops

    double se(double p) const;      // binomial standard error at n_trials
    double se_corr() const;         // Fisher-approximation SE of corr_z1_z2
};

/// Simulates n_trials patient-level trials under both the H1 model and the
/// H0 boundary model. Counter-based draws keyed by (seed, trial, patient)
/// make the result independent of thread count. Throws std::domain_error
/// when p_c + delta falls outside (0,1).
EmpiricalOc estimate_oc(const Design& design, std::uint64_t n_trials,
                        std::uint64_t seed, int threads = 1);

}  // namespace gsd
