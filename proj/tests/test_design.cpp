#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gsd/design.hpp"
#include "gsd/normal.hpp"

using namespace gsd;

namespace {

DesignSpec case_study() {
    DesignSpec spec{EfficacyModel(0.58, 0.6, -0.1), SpendingPlan{}, 0.6,
                    SolveMode::solve_n, 0.9};
    spec.plan.alpha_total = 0.025;
    spec.plan.beta_total = 0.1;
    spec.plan.rho_e = 2.0;
    spec.plan.rho_f = 3.0;
    return spec;
}

}  // namespace

TEST_CASE("single-stage closed form") {
    EfficacyModel m(0.58, 0.6, -0.1);
    // (z_{0.975} + z_{0.9})^2 * 0.4836 / 0.08^2
    CHECK(single_stage_n(m, 0.025, 0.1) ==
          doctest::Approx(793.9672).epsilon(1e-6));
    EfficacyModel flat(0.45, 0.6, -0.1);  // theta < 0
    CHECK_THROWS_AS(single_stage_n(flat, 0.025, 0.1), infeasible_error);
}

TEST_CASE("case-study solve matches the reference values") {
    SolvedDesign sol = solve_design(case_study());
    REQUIRE(sol.converged);
    CHECK(sol.boundaries.c11 == doctest::Approx(0.547891).epsilon(2e-4));
    CHECK(sol.boundaries.c12 == doctest::Approx(2.365618).epsilon(2e-4));
    CHECK(sol.boundaries.c2 == doctest::Approx(2.038587).epsilon(2e-4));
    CHECK(sol.schedule.final_n() == doctest::Approx(831.5861).epsilon(1e-5));
    CHECK(sol.schedule.fraction(0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(sol.oc.omega1 == doctest::Approx(0.580841).epsilon(1e-4));
    CHECK(sol.oc.d1 == doctest::Approx(-0.026352).epsilon(1e-3));
    CHECK(sol.interim_p_boundary() == doctest::Approx(0.009).epsilon(1e-5));
    CHECK(sol.oc.ess_h1 == doctest::Approx(631.194).epsilon(1e-4));

    // realized errors match the spend targets
    CHECK(sol.oc.alpha1 + sol.oc.alpha2 == doctest::Approx(0.025).epsilon(1e-7));
    CHECK(sol.oc.beta1 + sol.oc.beta2 == doctest::Approx(0.1).epsilon(1e-7));
    CHECK(sol.oc.alpha1 == doctest::Approx(sol.spend.a[0]).epsilon(1e-6));
    CHECK(sol.oc.beta1 == doctest::Approx(sol.spend.b[0]).epsilon(1e-6));
}

TEST_CASE("round trip: fixed-N solve returns the fixed-power design") {
    SolvedDesign fwd = solve_design(case_study());
    DesignSpec back = case_study();
    back.mode = SolveMode::solve_power;
    back.fixed_value = fwd.schedule.final_n();
    SolvedDesign sol = solve_design(back);
    REQUIRE(sol.converged);
    CHECK(1.0 - sol.beta_total == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(sol.oc.power == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(sol.boundaries.c11 ==
          doctest::Approx(fwd.boundaries.c11).epsilon(1e-6));
    CHECK(sol.boundaries.c12 ==
          doctest::Approx(fwd.boundaries.c12).epsilon(1e-6));
    CHECK(sol.boundaries.c2 ==
          doctest::Approx(fwd.boundaries.c2).epsilon(1e-6));
}

TEST_CASE("aggressive interim spending raises N") {
    DesignSpec spec = case_study();
    spec.plan.rho_e = 1.0;
    SolvedDesign sol = solve_design(spec);
    REQUIRE(sol.converged);
    CHECK(sol.schedule.final_n() == doctest::Approx(869.453).epsilon(1e-4));
    CHECK(sol.oc.omega1 == doctest::Approx(0.67632).epsilon(1e-3));
    CHECK(sol.oc.d1 == doctest::Approx(-0.033927).epsilon(1e-3));
    CHECK(sol.interim_p_boundary() == doctest::Approx(0.015).epsilon(1e-4));
}

TEST_CASE("fixed-N solves at reference surface points") {
    DesignSpec spec = case_study();
    spec.mode = SolveMode::solve_power;
    spec.fixed_value = 831.586;

    spec.psi = 0.5;
    spec.plan.rho_e = 1.0;
    SolvedDesign a = solve_design(spec);
    REQUIRE(a.converged);
    CHECK(a.oc.power == doctest::Approx(0.88953).epsilon(1e-3));
    CHECK(a.oc.omega1 == doctest::Approx(0.54156).epsilon(2e-3));
    CHECK(a.oc.d1 == doctest::Approx(-0.023559).epsilon(1e-3));
    CHECK(a.interim_p_boundary() == doctest::Approx(0.0125).epsilon(1e-4));

    spec.psi = 0.6;
    spec.plan.rho_e = 2.5;
    SolvedDesign b = solve_design(spec);
    REQUIRE(b.converged);
    CHECK(b.oc.omega1 == doctest::Approx(0.54416).epsilon(2e-3));
    CHECK(b.oc.power == doctest::Approx(0.90289).epsilon(1e-3));
    CHECK(b.interim_p_boundary() == doctest::Approx(0.0069714).epsilon(1e-3));
}

TEST_CASE("vanishing interim spend approaches the single-stage design") {
    DesignSpec spec = case_study();
    spec.plan.rho_e = 12.0;
    spec.plan.rho_f = 12.0;
    SolvedDesign sol = solve_design(spec);
    REQUIRE(sol.converged);
    const double nss = single_stage_n(spec.model, 0.025, 0.1);
    CHECK(sol.schedule.final_n() == doctest::Approx(nss).epsilon(1e-4));
    CHECK(sol.schedule.final_n() >= nss);
    CHECK(sol.boundaries.c2 ==
          doctest::Approx(norm_quantile(0.975)).epsilon(1e-4));
}

TEST_CASE("solved N never beats the single-stage size") {
    for (double psi : {0.3, 0.5, 0.7})
        for (double rho : {1.0, 2.0, 4.0}) {
            DesignSpec spec = case_study();
            spec.psi = psi;
            spec.plan.rho_e = rho;
            SolvedDesign sol = solve_design(spec);
            REQUIRE(sol.converged);
            CHECK(sol.schedule.final_n() >=
                  single_stage_n(spec.model, 0.025, 0.1));
        }
}

TEST_CASE("infeasible and invalid specs are rejected") {
    DesignSpec spec = case_study();
    spec.model = EfficacyModel(0.45, 0.6, -0.1);  // theta < 0
    CHECK_THROWS_AS(solve_design(spec), infeasible_error);

    DesignSpec bad = case_study();
    bad.psi = 1.0;
    CHECK_THROWS_AS(solve_design(bad), std::domain_error);
    bad = case_study();
    bad.fixed_value = 1.5;  // power above 1
    CHECK_THROWS_AS(solve_design(bad), std::domain_error);
}

TEST_CASE("grid scan is ordered and thread-count independent") {
    GridSpec grid;
    grid.psi_grid = {0.4, 0.6};
    grid.rho_e_grid = {1.0, 2.0, 3.0};
    grid.constraint = SolveMode::solve_n;
    grid.constraint_value = 0.9;

    std::vector<GridRow> seq = grid_scan(grid, case_study(), 1);
    std::vector<GridRow> par = grid_scan(grid, case_study(), 4);
    REQUIRE(seq.size() == 6);
    REQUIRE(par.size() == 6);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].psi == par[i].psi);
        CHECK(seq[i].rho_e == par[i].rho_e);
        CHECK(seq[i].converged);
        CHECK(seq[i].design.schedule.final_n() ==
              par[i].design.schedule.final_n());  // bit-exact
        CHECK(seq[i].design.boundaries.c12 == par[i].design.boundaries.c12);
    }
    // lexicographic (psi, rho_e) ordering
    CHECK(seq[0].psi == 0.4);
    CHECK(seq[0].rho_e == 1.0);
    CHECK(seq[2].rho_e == 3.0);
    CHECK(seq[3].psi == 0.6);

    // interim p-boundary falls as rho_e rises at fixed psi
    CHECK(seq[0].design.interim_p_boundary() >
          seq[1].design.interim_p_boundary());
    CHECK(seq[1].design.interim_p_boundary() >
          seq[2].design.interim_p_boundary());
}

TEST_CASE("meet_targets: case-study point is feasible and recommendable") {
    GridSpec grid;
    grid.psi_grid = {0.4, 0.5, 0.6};
    grid.rho_e_grid = {1.0, 2.0, 3.0};
    grid.constraint = SolveMode::solve_n;
    grid.constraint_value = 0.9;

    TargetSet t{0.9, 0.58, -0.03};
    MeetResult r = meet_targets(t, case_study(), grid, 2);
    bool has_case_study = false;
    for (std::size_t i : r.feasible)
        if (r.rows[i].psi == 0.6 && r.rows[i].rho_e == 2.0)
            has_case_study = true;
    CHECK(has_case_study);
    REQUIRE(r.recommended.has_value());
    const GridRow& rec = r.rows[*r.recommended];
    CHECK(rec.design.oc.power >= 0.9 - 1e-6);
    CHECK(rec.design.oc.omega1 >= 0.58);
    CHECK(rec.design.oc.d1 >= -0.03);
    for (std::size_t i : r.feasible)
        CHECK(rec.design.schedule.final_n() <=
              r.rows[i].design.schedule.final_n());
}

TEST_CASE("meet_targets: unreachable and vacuous targets") {
    GridSpec grid;
    grid.psi_grid = {0.4, 0.6};
    grid.rho_e_grid = {1.0, 2.0};
    grid.constraint = SolveMode::solve_n;
    grid.constraint_value = 0.9;

    MeetResult none = meet_targets(TargetSet{0.0, 0.99, -1.0}, case_study(),
                                   grid);
    CHECK(none.feasible.empty());
    CHECK_FALSE(none.recommended.has_value());

    MeetResult all = meet_targets(TargetSet{0.0, 0.0, -1.0}, case_study(),
                                  grid);
    CHECK(all.feasible.size() == all.rows.size());
    REQUIRE(all.recommended.has_value());
}
