#include "gsd/design.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "gsd/normal.hpp"
#include "gsd/solver.hpp"

namespace gsd {

void DesignSpec::validate() const {
    if (!(psi > 0.0 && psi < 1.0))
        throw std::domain_error("psi must lie strictly in (0,1)");
    if (!(plan.alpha_total > 0.0 && plan.alpha_total < 1.0))
        throw std::domain_error("alpha_total must lie in (0,1)");
    if (!(plan.rho_e > 0.0 && plan.rho_f > 0.0))
        throw std::domain_error("spending exponents must be positive");
    if (mode == SolveMode::solve_n) {
        if (!(fixed_value > 0.0 && fixed_value < 1.0))
            throw std::domain_error("fixed power must lie in (0,1)");
    } else {
        if (!(fixed_value > 0.0))
            throw std::domain_error("fixed per-arm N must be positive");
    }
}

double SolvedDesign::interim_p_boundary() const {
    return 1.0 - norm_cdf(boundaries.c12);
}

double single_stage_n(const EfficacyModel& model, double alpha, double beta) {
    const double theta = model.theta();
    if (!(theta > 0.0))
        throw infeasible_error(
            "single-stage size undefined: theta = p_t - p_c - delta must be "
            "positive");
    const double z = norm_quantile(1.0 - alpha) + norm_quantile(1.0 - beta);
    return z * z * model.variance_unit() / (theta * theta);
}

namespace {

double logit(double p) { return std::log(p / (1.0 - p)); }
double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Unpacks the solver parameter vector. Boundaries are kept ordered by
// solving in (c11, log(c12 - c11)); positive quantities are solved in logs.
struct Unpacked {
    BoundarySet bounds;
    double n_final;
    double beta_total;
};

Unpacked unpack(const DesignSpec& spec, const std::vector<double>& x) {
    Unpacked u;
    u.bounds.c11 = x[0];
    u.bounds.c12 = x[0] + std::exp(x[1]);
    u.bounds.c2 = x[2];
    if (spec.mode == SolveMode::solve_n) {
        u.n_final = std::exp(x[3]);
        u.beta_total = 1.0 - spec.fixed_value;
    } else {
        u.n_final = spec.fixed_value;
        u.beta_total = sigmoid(x[3]);
    }
    return u;
}

std::vector<double> design_residual(const DesignSpec& spec,
                                    const std::vector<double>& x) {
    const Unpacked u = unpack(spec, x);
    LookSchedule schedule({spec.psi * u.n_final, u.n_final});
    SpendingPlan plan = spec.plan;
    plan.beta_total = u.beta_total;
    const SpendTargets tg = targets(schedule, plan);
    const Design d{spec.model, schedule, u.bounds, plan};
    const auto [a1, a2] = alpha_components(d);
    const auto [b1, b2] = beta_components(d);
    return {a1 - tg.a[0], a2 - tg.a[1], b1 - tg.b[0], b2 - tg.b[1]};
}

std::vector<double> start_vector(const DesignSpec& spec, double n_start,
                                 double beta_start) {
    SpendingPlan plan = spec.plan;
    plan.beta_total = beta_start;
    const double c2 = norm_quantile(1.0 - plan.alpha_total);
    const double c12 = norm_quantile(1.0 - spend_alpha(spec.psi, plan));
    const double m1 = spec.model.theta() *
                      std::sqrt(information(spec.model, spec.psi * n_start));
    const double c11 = norm_quantile(spend_beta(spec.psi, plan)) + m1;
    const double gap = c12 > c11 ? c12 - c11 : 0.5;
    const double last = spec.mode == SolveMode::solve_n
                            ? std::log(n_start)
                            : logit(beta_start);
    return {c11, std::log(gap), c2, last};
}

SolvedDesign try_solve(const DesignSpec& spec) {
    spec.validate();
    if (spec.mode == SolveMode::solve_n && !(spec.model.theta() > 0.0))
        throw infeasible_error(
            "cannot power the design: theta = p_t - p_c - delta is not "
            "positive");

    double n_heur, beta_heur;
    if (spec.mode == SolveMode::solve_n) {
        beta_heur = 1.0 - spec.fixed_value;
        n_heur = 1.1 * single_stage_n(spec.model, spec.plan.alpha_total,
                                      beta_heur);
    } else {
        n_heur = spec.fixed_value;
        const double m = spec.model.theta() *
                         std::sqrt(information(spec.model, n_heur));
        const double pw =
            norm_cdf(m - norm_quantile(1.0 - spec.plan.alpha_total));
        beta_heur = std::min(0.6, std::max(1e-5, 1.0 - pw));
    }

    const double n_scales[] = {1.0, 0.8, 1.25, 1.6};
    const double beta_scales[] = {1.0, 0.5, 1.5, 2.0};

    SolvedDesign best{};
    best.converged = false;
    best.residual_norm = kInf;
    for (int attempt = 0; attempt < 4; ++attempt) {
        RootProblem problem;
        problem.residual = [&spec](const std::vector<double>& x) {
            return design_residual(spec, x);
        };
        const double n0 = n_heur * n_scales[attempt];
        const double b0 =
            std::min(0.9, std::max(1e-6, beta_heur * beta_scales[attempt]));
        problem.start = start_vector(spec, n0, b0);
        const RootResult rr = multiroot(problem);

        const Unpacked u = unpack(spec, rr.x);
        SolvedDesign sol;
        sol.boundaries = u.bounds;
        sol.schedule = LookSchedule({spec.psi * u.n_final, u.n_final});
        SpendingPlan plan = spec.plan;
        plan.beta_total = u.beta_total;
        sol.spend = targets(sol.schedule, plan);
        sol.oc = evaluate(Design{spec.model, sol.schedule, sol.boundaries,
                                 plan});
        sol.beta_total = u.beta_total;
        sol.converged = rr.converged();
        sol.residual_norm = rr.residual_norm;
        sol.iterations = rr.iterations;
        if (sol.converged) return sol;
        if (sol.residual_norm < best.residual_norm) best = sol;
    }
    return best;
}

}  // namespace

SolvedDesign solve_design(const DesignSpec& spec) {
    SolvedDesign sol = try_solve(spec);
    if (!sol.converged)
        throw nonconvergence_error(
            "design solver did not converge from any starting point "
            "(best residual " +
            std::to_string(sol.residual_norm) + ")");
    return sol;
}

std::vector<GridRow> grid_scan(const GridSpec& grid, const DesignSpec& base,
                               int threads) {
    if (grid.psi_grid.empty() || grid.rho_e_grid.empty())
        throw std::domain_error("grid axes must be non-empty");

    std::vector<std::pair<double, double>> points;
    for (double psi : grid.psi_grid)
        for (double rho : grid.rho_e_grid) points.emplace_back(psi, rho);

    std::vector<GridRow> rows(points.size());
    auto solve_point = [&](std::size_t i) {
        const auto [psi, rho] = points[i];
        DesignSpec spec = base;
        spec.psi = psi;
        spec.plan.rho_e = rho;
        spec.mode = grid.constraint;
        spec.fixed_value = grid.constraint_value;
        GridRow row;
        row.psi = psi;
        row.rho_e = rho;
        try {
            row.design = try_solve(spec);
            row.converged = row.design.converged;
        } catch (const std::exception&) {
            row.converged = false;
        }
        rows[i] = std::move(row);
    };

    if (threads <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) solve_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int nt = std::min<std::size_t>(threads, points.size());
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < points.size();
                     i = next.fetch_add(1))
                    solve_point(i);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

MeetResult meet_targets(const TargetSet& targets_, const DesignSpec& base,
                        const GridSpec& grid, int threads) {
    MeetResult result;
    result.rows = grid_scan(grid, base, threads);
    // Slack absorbs the root-finder's residual tolerance: a fixed-power row
    // solved to power 0.9 - 1e-10 still meets a 0.9 target.
    const double slack = 1e-7;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const GridRow& row = result.rows[i];
        if (!row.converged) continue;
        const auto& oc = row.design.oc;
        if (oc.power >= targets_.power_min - slack &&
            oc.omega1 >= targets_.omega1_min - slack &&
            oc.d1 >= targets_.d1_min - slack)
            result.feasible.push_back(i);
    }
    // Rows are lexicographic in (psi, rho_e); strict comparisons break ties
    // toward smaller psi, then smaller rho_e.
    for (std::size_t i : result.feasible) {
        if (!result.recommended) {
            result.recommended = i;
            continue;
        }
        const auto& cand = result.rows[i].design;
        const auto& cur = result.rows[*result.recommended].design;
        const bool better =
            grid.constraint == SolveMode::solve_n
                ? cand.schedule.final_n() < cur.schedule.final_n()
                : cand.oc.power > cur.oc.power;
        if (better) result.recommended = i;
    }
    return result;
}

}  // namespace gsd
