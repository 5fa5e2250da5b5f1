// Command-line front end: solve and explore one-interim group sequential
// designs, and verify them against the patient-level simulator.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsd/config.hpp"
#include "gsd/design.hpp"
#include "gsd/normal.hpp"
#include "gsd/rng.hpp"
#include "gsd/simulate.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumeric = 4;

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string full(double v) { return fmt(v, "%.17g"); }

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write to '" + path + "'");
    out << text;
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "configuration file")
        ->required();
    cmd->add_option("--out", opts.out_path, "write output to a file");
}

gsd::DesignSpec spec_from_config(const gsd::Config& cfg, gsd::SolveMode mode) {
    gsd::DesignSpec spec{cfg.model(), cfg.plan(), cfg.psi, mode, 0.0};
    if (mode == gsd::SolveMode::solve_n) {
        spec.fixed_value = cfg.power_value();
    } else {
        if (!cfg.n)
            throw gsd::config_error(
                "[schedule] n is required when solving for power");
        spec.fixed_value = *cfg.n;
    }
    return spec;
}

std::string oc_report(const gsd::SolvedDesign& sol) {
    const auto& oc = sol.oc;
    std::ostringstream os;
    os << "boundaries   c11 = " << fmt(sol.boundaries.c11)
       << "   c12 = " << fmt(sol.boundaries.c12)
       << "   c2 = " << fmt(sol.boundaries.c2) << "\n"
       << "schedule     n1 = " << fmt(sol.schedule.n(0))
       << "   N = " << fmt(sol.schedule.final_n()) << "\n"
       << "interim p-value boundary = " << fmt(sol.interim_p_boundary())
       << "\n"
       << "type I   alpha1 = " << fmt(oc.alpha1)
       << "   alpha2 = " << fmt(oc.alpha2)
       << "   total = " << fmt(oc.alpha1 + oc.alpha2) << "\n"
       << "type II  beta1 = " << fmt(oc.beta1) << "   beta2 = "
       << fmt(oc.beta2) << "   total = " << fmt(oc.beta1 + oc.beta2) << "\n"
       << "crossing omega1 = " << fmt(oc.omega1)
       << "   omega2 = " << fmt(oc.omega2)
       << "   power = " << fmt(oc.power) << "\n"
       << "minimum difference  d1 = " << fmt(oc.d1)
       << "   d2 = " << fmt(oc.d2) << "\n"
       << "expected per-arm sample size under H1 = " << fmt(oc.ess_h1)
       << " (futility stops counted)\n"
       << "solver: " << (sol.converged ? "converged" : "NOT CONVERGED")
       << " in " << sol.iterations
       << " iterations, residual = " << fmt(sol.residual_norm) << "\n";
    return os.str();
}

nlohmann::json oc_json(const gsd::SolvedDesign& sol) {
    const auto& oc = sol.oc;
    return {
        {"boundaries",
         {{"c11", sol.boundaries.c11},
          {"c12", sol.boundaries.c12},
          {"c2", sol.boundaries.c2}}},
        {"schedule",
         {{"n1", sol.schedule.n(0)}, {"n", sol.schedule.final_n()}}},
        {"interim_p_boundary", sol.interim_p_boundary()},
        {"oc",
         {{"alpha1", oc.alpha1},
          {"alpha2", oc.alpha2},
          {"beta1", oc.beta1},
          {"beta2", oc.beta2},
          {"omega1", oc.omega1},
          {"omega2", oc.omega2},
          {"power", oc.power},
          {"d1", oc.d1},
          {"d2", oc.d2},
          {"ess_h1", oc.ess_h1}}},
        {"beta_total", sol.beta_total},
        {"converged", sol.converged},
        {"residual_norm", sol.residual_norm},
        {"iterations", sol.iterations}};
}

int run_solve(const CommonOpts& opts, bool ceil_n, gsd::SolveMode mode) {
    const gsd::Config cfg = gsd::load_config(opts.config_path);
    const gsd::DesignSpec spec = spec_from_config(cfg, mode);
    const gsd::SolvedDesign sol = gsd::solve_design(spec);

    std::ostringstream os;
    if (opts.json) {
        nlohmann::json j = oc_json(sol);
        j["config"] = nlohmann::json::parse(cfg.to_json());
        if (ceil_n) {
            j["schedule_ceil"] = {
                {"n1", std::ceil(sol.schedule.n(0))},
                {"n", std::ceil(sol.schedule.final_n())}};
        }
        os << j.dump(2) << "\n";
    } else {
        if (mode == gsd::SolveMode::solve_power)
            os << "solved power = " << fmt(sol.oc.power)
               << "  (beta = " << fmt(sol.beta_total) << ")\n";
        os << oc_report(sol);
        if (ceil_n)
            os << "whole-patient schedule  n1 = "
               << fmt(std::ceil(sol.schedule.n(0)))
               << "   N = " << fmt(std::ceil(sol.schedule.final_n())) << "\n";
    }
    write_out(opts.out_path, os.str());
    return sol.converged ? 0 : kExitInfeasible;
}

std::vector<double> parse_grid_axis(const std::string& text,
                                    const std::string& name) {
    std::vector<double> out;
    double a, b, step;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &b, &step) == 3) {
        if (!(step > 0.0) || b < a)
            throw gsd::config_error("--" + name +
                                    ": need a:b:step with step > 0, a <= b");
        for (double v = a; v <= b + step * 1e-9; v += step) out.push_back(v);
        return out;
    }
    if (std::sscanf(text.c_str(), "%lf", &a) == 1) return {a};
    throw gsd::config_error("--" + name + ": expected <v> or a:b:step");
}

struct FixSpec {
    gsd::SolveMode mode;
    double value;
};

FixSpec parse_fix(const std::string& text, const gsd::Config& cfg) {
    if (text.empty()) {
        // Fall back to the config: an explicit power target fixes power,
        // otherwise a fixed N solves for power.
        if (cfg.power || cfg.beta)
            return {gsd::SolveMode::solve_n, cfg.power_value()};
        if (cfg.n) return {gsd::SolveMode::solve_power, *cfg.n};
        throw gsd::config_error(
            "scan needs --fix power=<v>|n=<v> or a power/n in the config");
    }
    double v;
    if (std::sscanf(text.c_str(), "power=%lf", &v) == 1)
        return {gsd::SolveMode::solve_n, v};
    if (std::sscanf(text.c_str(), "n=%lf", &v) == 1)
        return {gsd::SolveMode::solve_power, v};
    throw gsd::config_error("--fix: expected power=<v> or n=<v>");
}

int run_scan(const CommonOpts& opts, const std::string& psi_axis,
             const std::string& rho_axis, const std::string& fix,
             int threads, bool meet) {
    const gsd::Config cfg = gsd::load_config(opts.config_path);
    const FixSpec fixed = parse_fix(fix, cfg);

    gsd::GridSpec grid;
    grid.psi_grid = psi_axis.empty() ? std::vector<double>{cfg.psi}
                                     : parse_grid_axis(psi_axis, "psi");
    grid.rho_e_grid = rho_axis.empty() ? std::vector<double>{cfg.rho_e}
                                       : parse_grid_axis(rho_axis, "rho");
    grid.constraint = fixed.mode;
    grid.constraint_value = fixed.value;

    gsd::DesignSpec base{cfg.model(), cfg.plan(), cfg.psi, fixed.mode,
                         fixed.value};
    const bool fixed_power = fixed.mode == gsd::SolveMode::solve_n;

    std::vector<gsd::GridRow> rows;
    std::optional<gsd::MeetResult> met;
    if (meet) {
        if (!cfg.targets)
            throw gsd::config_error(
                "--meet-targets needs a [targets] section in the config");
        met = gsd::meet_targets(*cfg.targets, base, grid, threads);
        rows = met->rows;
    } else {
        rows = gsd::grid_scan(grid, base, threads);
    }

    std::ostringstream os;
    os << "psi,rho_e," << (fixed_power ? "n" : "power")
       << ",omega1,d1,p_boundary_interim,c11,c12,c2,converged";
    if (meet) os << ",feasible";
    os << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const gsd::GridRow& row = rows[i];
        const auto& d = row.design;
        const double headline =
            fixed_power ? d.schedule.final_n() : d.oc.power;
        os << full(row.psi) << ',' << full(row.rho_e) << ',';
        if (row.converged) {
            os << full(headline) << ',' << full(d.oc.omega1) << ','
               << full(d.oc.d1) << ',' << full(d.interim_p_boundary()) << ','
               << full(d.boundaries.c11) << ',' << full(d.boundaries.c12)
               << ',' << full(d.boundaries.c2) << ",1";
        } else {
            os << "nan,nan,nan,nan,nan,nan,nan,0";
        }
        if (meet) {
            const bool feas =
                met && std::find(met->feasible.begin(), met->feasible.end(),
                                 i) != met->feasible.end();
            os << ',' << (feas ? '1' : '0');
        }
        os << "\n";
    }
    if (meet) {
        if (met->recommended) {
            const gsd::GridRow& rec = rows[*met->recommended];
            os << "# recommended: psi=" << full(rec.psi)
               << " rho_e=" << full(rec.rho_e) << "\n";
        } else {
            os << "# feasible set empty\n";
        }
    }
    write_out(opts.out_path, os.str());
    return 0;
}

gsd::Design design_for_simulation(const gsd::Config& cfg) {
    if (cfg.boundaries) {
        if (!cfg.n)
            throw gsd::config_error(
                "[schedule] n is required alongside [boundaries]");
        return gsd::Design{cfg.model(),
                           gsd::LookSchedule({cfg.psi * *cfg.n, *cfg.n}),
                           *cfg.boundaries, cfg.plan()};
    }
    const gsd::SolveMode mode = (cfg.power || cfg.beta)
                                    ? gsd::SolveMode::solve_n
                                    : gsd::SolveMode::solve_power;
    const gsd::SolvedDesign sol = gsd::solve_design(
        spec_from_config(cfg, mode));
    gsd::SpendingPlan plan = cfg.plan();
    plan.beta_total = sol.beta_total;
    return gsd::Design{cfg.model(), sol.schedule, sol.boundaries, plan};
}

struct Comparison {
    std::string name;
    double empirical;
    double analytic;
    double se;

    double z() const { return se > 0 ? (empirical - analytic) / se : 0.0; }
    bool pass() const { return std::fabs(z()) <= 4.0; }
};

std::vector<Comparison> compare(const gsd::Design& design,
                                const gsd::EmpiricalOc& emp) {
    const gsd::OperatingCharacteristics oc = gsd::evaluate(design);
    std::vector<Comparison> cs;
    cs.push_back({"alpha1", emp.alpha1, oc.alpha1, emp.se(emp.alpha1)});
    cs.push_back({"alpha_total", emp.alpha1 + emp.alpha2,
                  oc.alpha1 + oc.alpha2, emp.se(emp.alpha1 + emp.alpha2)});
    cs.push_back({"beta_total", emp.beta1 + emp.beta2, oc.beta1 + oc.beta2,
                  emp.se(emp.beta1 + emp.beta2)});
    cs.push_back({"omega1", emp.omega1, oc.omega1, emp.se(emp.omega1)});
    cs.push_back({"omega2", emp.omega2, oc.omega2, emp.se(emp.omega2)});
    const double analytic_corr =
        std::sqrt(static_cast<double>(emp.n1) / emp.n2);
    cs.push_back(
        {"corr_z1_z2", emp.corr_z1_z2, analytic_corr, emp.se_corr()});
    return cs;
}

std::string simulate_report(const gsd::Design& design,
                            const gsd::EmpiricalOc& emp) {
    std::ostringstream os;
    os << "trials = " << emp.n_trials << "   simulated per-arm sizes n1 = "
       << emp.n1 << ", N = " << emp.n2 << "\n";
    os << "decision partition under H1: interim efficacy "
       << emp.h1_interim_efficacy << ", interim futility "
       << emp.h1_interim_futility << ", final success "
       << emp.h1_final_success << ", final failure " << emp.h1_final_failure
       << "\n";
    os << "empirical ESS under H1 (futility stops counted) = "
       << fmt(emp.ess_h1) << "\n";
    os << "comparison vs analytic (4 SE tolerance):\n";
    for (const Comparison& c : compare(design, emp)) {
        os << "  " << c.name << ": empirical " << fmt(c.empirical)
           << "  analytic " << fmt(c.analytic) << "  se " << fmt(c.se)
           << "  z " << fmt(c.z()) << "  "
           << (c.pass() ? "PASS" : "FAIL") << "\n";
    }
    return os.str();
}

int run_simulate(const CommonOpts& opts, std::uint64_t trials,
                 std::uint64_t seed, int threads, bool verify_mode) {
    if (trials == 0)
        throw gsd::config_error("--trials must be at least 1");
    const gsd::Config cfg = gsd::load_config(opts.config_path);
    const gsd::Design design = design_for_simulation(cfg);
    const gsd::EmpiricalOc emp =
        gsd::estimate_oc(design, trials, seed, threads);

    std::ostringstream os;
    bool all_pass = true;
    for (const Comparison& c : compare(design, emp))
        all_pass = all_pass && c.pass();

    if (opts.json) {
        nlohmann::json j;
        j["config"] = nlohmann::json::parse(cfg.to_json());
        j["trials"] = trials;
        j["seed"] = seed;
        j["n1"] = emp.n1;
        j["n2"] = emp.n2;
        j["partition_h1"] = {{"interim_efficacy", emp.h1_interim_efficacy},
                             {"interim_futility", emp.h1_interim_futility},
                             {"final_success", emp.h1_final_success},
                             {"final_failure", emp.h1_final_failure}};
        j["empirical"] = {{"alpha1", emp.alpha1}, {"alpha2", emp.alpha2},
                          {"beta1", emp.beta1},   {"beta2", emp.beta2},
                          {"omega1", emp.omega1}, {"omega2", emp.omega2},
                          {"corr_z1_z2", emp.corr_z1_z2},
                          {"ess_h1", emp.ess_h1}};
        nlohmann::json comps = nlohmann::json::array();
        for (const Comparison& c : compare(design, emp))
            comps.push_back({{"name", c.name},
                             {"empirical", c.empirical},
                             {"analytic", c.analytic},
                             {"se", c.se},
                             {"z", c.z()},
                             {"pass", c.pass()}});
        j["comparisons"] = comps;
        j["all_pass"] = all_pass;
        os << j.dump(2) << "\n";
    } else {
        os << simulate_report(design, emp);
        if (verify_mode)
            os << (all_pass ? "VERIFY PASS\n" : "VERIFY FAIL\n");
    }
    write_out(opts.out_path, os.str());
    if (verify_mode) return all_pass ? 0 : 1;
    return 0;
}

int run_trajectories(const CommonOpts& opts, int count, long max_n,
                     std::uint64_t seed) {
    if (count < 0) throw gsd::config_error("--count must be >= 0");
    if (max_n < 2) throw gsd::config_error("--max-n must be >= 2");
    const gsd::Config cfg = gsd::load_config(opts.config_path);
    const gsd::EfficacyModel model = cfg.model();

    std::ostringstream os;
    if (cfg.boundaries) {
        os << "# c11=" << full(cfg.boundaries->c11) << "\n"
           << "# c12=" << full(cfg.boundaries->c12) << "\n"
           << "# c2=" << full(cfg.boundaries->c2) << "\n";
    }
    os << "# interim_n=" << std::lround(cfg.psi * max_n) << "\n"
       << "# final_n=" << max_n << "\n";

    std::vector<gsd::TrajectoryRun> runs;
    for (int i = 0; i < count; ++i)
        runs.push_back(gsd::simulate_trajectory(
            model, static_cast<std::size_t>(max_n),
            gsd::substream(seed, static_cast<std::uint64_t>(i))));

    os << "step";
    for (int i = 0; i < count; ++i) os << ",z" << (i + 1);
    os << "\n";
    for (long s = 0; s < max_n; ++s) {
        os << (s + 1);
        for (int i = 0; i < count; ++i)
            os << ',' << full(runs[i].z_path[static_cast<std::size_t>(s)]);
        os << "\n";
    }
    write_out(opts.out_path, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"group sequential design engine for two-arm binary "
                 "non-inferiority trials"};
    app.require_subcommand(1);

    CommonOpts solve_opts, power_opts, scan_opts, sim_opts, traj_opts,
        verify_opts;
    bool solve_ceil = false, power_ceil = false;
    std::string psi_axis, rho_axis, fix;
    int threads = 1;
    bool meet = false;
    std::uint64_t trials = 1000000, seed = 1;
    int traj_count = 3;
    long traj_max_n = 800;

    auto* solve = app.add_subcommand("solve",
                                     "solve boundaries and N for a power "
                                     "target");
    add_common(solve, solve_opts);
    solve->add_flag("--json", solve_opts.json, "machine-readable output");
    solve->add_flag("--ceil", solve_ceil, "also report whole-patient sizes");

    auto* power = app.add_subcommand("power",
                                     "solve boundaries and power for a "
                                     "fixed N");
    add_common(power, power_opts);
    power->add_flag("--json", power_opts.json, "machine-readable output");
    power->add_flag("--ceil", power_ceil, "also report whole-patient sizes");

    auto* scan = app.add_subcommand("scan",
                                    "solve across a (psi, rho_e) grid and "
                                    "emit CSV");
    add_common(scan, scan_opts);
    scan->add_option("--psi", psi_axis, "psi axis, <v> or a:b:step");
    scan->add_option("--rho", rho_axis, "rho_e axis, <v> or a:b:step");
    scan->add_option("--fix", fix, "power=<v> or n=<v>");
    scan->add_option("--threads", threads, "parallel grid workers");
    scan->add_flag("--meet-targets", meet,
                   "filter by [targets] and recommend a point");

    auto* simulate = app.add_subcommand("simulate",
                                        "patient-level Monte Carlo with "
                                        "analytic comparison");
    add_common(simulate, sim_opts);
    simulate->add_flag("--json", sim_opts.json, "machine-readable output");
    simulate->add_option("--trials", trials, "number of simulated trials");
    simulate->add_option("--seed", seed, "random seed");
    simulate->add_option("--threads", threads, "parallel workers");

    auto* traj = app.add_subcommand("trajectories",
                                    "simulate Z paths for plotting");
    add_common(traj, traj_opts);
    traj->add_option("--count", traj_count, "number of trajectories");
    traj->add_option("--max-n", traj_max_n, "per-arm patients to accumulate");
    traj->add_option("--seed", seed, "random seed");

    auto* verify = app.add_subcommand("verify",
                                      "simulate and require 4 SE agreement "
                                      "with the analytic results");
    add_common(verify, verify_opts);
    verify->add_flag("--json", verify_opts.json, "machine-readable output");
    verify->add_option("--trials", trials, "number of simulated trials");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--threads", threads, "parallel workers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (solve->parsed())
            return run_solve(solve_opts, solve_ceil, gsd::SolveMode::solve_n);
        if (power->parsed())
            return run_solve(power_opts, power_ceil,
                             gsd::SolveMode::solve_power);
        if (scan->parsed())
            return run_scan(scan_opts, psi_axis, rho_axis, fix, threads,
                            meet);
        if (simulate->parsed())
            return run_simulate(sim_opts, trials, seed, threads, false);
        if (traj->parsed())
            return run_trajectories(traj_opts, traj_count, traj_max_n, seed);
        if (verify->parsed())
            return run_simulate(verify_opts, trials, seed, threads, true);
    } catch (const gsd::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const gsd::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const gsd::nonconvergence_error& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
