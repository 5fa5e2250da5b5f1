#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gsd/oc.hpp"
#include "gsd/spending.hpp"
#include "gsd/types.hpp"

namespace gsd {

class infeasible_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class nonconvergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SolveMode {
    solve_n,      // power fixed, solve for (c11, c12, c2, N)
    solve_power,  // N fixed, solve for (c11, c12, c2, beta_total)
};

/// One-interim design problem: solve the four spend-matching equations.
/// In solve_n mode fixed_value is the target power (plan.beta_total is
/// taken as 1 - power); in solve_power mode fixed_value is the per-arm N
/// and the beta spending targets are recomputed from the solved beta.
struct DesignSpec {
    EfficacyModel model;
    SpendingPlan plan;
    double psi;  // interim fraction of N, in (0,1)
    SolveMode mode = SolveMode::solve_n;
    double fixed_value = 0.9;

    void validate() const;
};

struct SolvedDesign {
    BoundarySet boundaries{};
    LookSchedule schedule{{1.0, 2.0}};
    OperatingCharacteristics oc{};
    SpendTargets spend{};
    double beta_total = 0;  // solved in solve_power mode, 1 - power otherwise
    bool converged = false;
    double residual_norm = 0;
    int iterations = 0;

    double interim_p_boundary() const;  // 1 - Phi(c12)
};

/// Single-stage per-arm sample size for (alpha, beta) at the model's theta;
/// the classical closed form, used for starting values and as a lower bound
/// on any solved two-look N.
double single_stage_n(const EfficacyModel& model, double alpha, double beta);

/// Solves the design system. Throws infeasible_error when no design can
/// exist (theta <= 0 in solve_n mode) and nonconvergence_error when every
/// fallback start fails.
SolvedDesign solve_design(const DesignSpec& spec);

struct GridSpec {
    std::vector<double> psi_grid;
    std::vector<double> rho_e_grid;
    SolveMode constraint = SolveMode::solve_n;  // fixed power vs fixed N
    double constraint_value = 0.9;
};

struct GridRow {
    double psi = 0;
    double rho_e = 0;
    bool converged = false;  // non-converged points are recorded, not dropped
    SolvedDesign design{};
};

/// One solve per (psi, rho_e) point, ordered lexicographically by
/// (psi, rho_e) regardless of evaluation order. threads <= 1 runs inline.
std::vector<GridRow> grid_scan(const GridSpec& grid, const DesignSpec& base,
                               int threads = 1);

/// Minimum-bound targets for multi-aspect design selection.
struct TargetSet {
    double power_min = 0;
    double omega1_min = 0;
    double d1_min = -1;
};

struct MeetResult {
    std::vector<GridRow> rows;             // full scan output
    std::vector<std::size_t> feasible;     // indices into rows
    std::optional<std::size_t> recommended;  // empty feasible set => nullopt
};

/// Filters a grid scan to the points meeting every target (with 1e-7 slack
/// for the solver's residual tolerance) and recommends
/// the feasible point with smallest N (fixed-power constraint) or largest
/// power (fixed-N constraint); ties break to smaller psi, then smaller
/// rho_e. An empty feasible set is a normal result, not an error.
MeetResult meet_targets(const TargetSet& targets, const DesignSpec& base,
                        const GridSpec& grid, int threads = 1);

}  // namespace gsd
