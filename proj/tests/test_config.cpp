#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsd/config.hpp"

using namespace gsd;

namespace {
const char* kCaseStudy =
    "# case study\n"
    "[model]\n"
    "p_t = 0.58\n"
    "p_c = 0.6\n"
    "delta = -0.1\n"
    "\n"
    "[plan]\n"
    "alpha = 0.025  ; one-sided\n"
    "power = 0.9\n"
    "rho_e = 2\n"
    "rho_f = 3\n"
    "\n"
    "[schedule]\n"
    "psi = 0.6\n";
}  // namespace

TEST_CASE("INI parsing with comments and defaults") {
    Config cfg = parse_config(kCaseStudy);
    CHECK(cfg.p_t == 0.58);
    CHECK(cfg.p_c == 0.6);
    CHECK(cfg.delta == -0.1);
    CHECK(cfg.alpha == 0.025);
    REQUIRE(cfg.power.has_value());
    CHECK(*cfg.power == 0.9);
    CHECK_FALSE(cfg.beta.has_value());
    CHECK(cfg.rho_e == 2.0);
    CHECK(cfg.psi == 0.6);
    CHECK(cfg.binding == false);
    CHECK_FALSE(cfg.n.has_value());
    CHECK_FALSE(cfg.boundaries.has_value());
    CHECK(cfg.power_value() == 0.9);
    CHECK(cfg.plan().beta_total == doctest::Approx(0.1));
}

TEST_CASE("unknown keys and sections are errors") {
    CHECK_THROWS_AS(parse_config("[model]\np_t=0.5\np_c=0.5\nalfa=0.025\n"),
                    config_error);
    CHECK_THROWS_AS(parse_config("[modell]\np_t=0.5\n"), config_error);
    CHECK_THROWS_AS(parse_config("[plan]\npowr = 0.9\n"), config_error);
}

TEST_CASE("malformed documents are rejected with line context") {
    CHECK_THROWS_AS(parse_config("p_t = 0.5\n"), config_error);   // no section
    CHECK_THROWS_AS(parse_config("[model\np_t = 0.5\n"), config_error);
    CHECK_THROWS_AS(parse_config("[model]\np_t 0.5\n"), config_error);
    CHECK_THROWS_AS(parse_config("[model]\np_t = zero\n"), config_error);
    CHECK_THROWS_AS(parse_config("[plan]\nbinding = maybe\n"), config_error);
}

TEST_CASE("validation: ranges and mutual exclusion") {
    CHECK_THROWS_AS(
        parse_config("[model]\np_t=0.58\np_c=0.6\ndelta=-0.1\n"
                     "[plan]\nalpha=0\n"),
        config_error);
    CHECK_THROWS_AS(
        parse_config("[model]\np_t=0.58\np_c=0.6\ndelta=-0.1\n"
                     "[plan]\npower=0.9\nbeta=0.1\n"),
        config_error);
    CHECK_THROWS_AS(
        parse_config("[model]\np_t=1.2\np_c=0.6\ndelta=-0.1\n"),
        config_error);
    CHECK_THROWS_AS(
        parse_config("[model]\np_t=0.58\np_c=0.6\ndelta=-0.1\n"
                     "[schedule]\npsi=1.0\n"),
        config_error);
    CHECK_THROWS_AS(
        parse_config("[model]\np_t=0.58\np_c=0.6\ndelta=-0.1\n"
                     "[boundaries]\nc11=2.0\nc12=1.0\nc2=2.0\n"),
        config_error);
}

TEST_CASE("power_value falls back to beta and errors when absent") {
    Config with_beta = parse_config(
        "[model]\np_t=0.58\np_c=0.6\ndelta=-0.1\n[plan]\nbeta=0.1\n");
    CHECK(with_beta.power_value() == doctest::Approx(0.9));
    Config neither =
        parse_config("[model]\np_t=0.58\np_c=0.6\ndelta=-0.1\n");
    CHECK_THROWS_AS(neither.power_value(), config_error);
}

TEST_CASE("optional sections: boundaries and targets") {
    Config cfg = parse_config(
        "[model]\np_t=0.58\np_c=0.6\ndelta=-0.1\n"
        "[schedule]\npsi=0.6\nn=831.586\n"
        "[boundaries]\nc11=0.548\nc12=2.366\nc2=2.04\n"
        "[targets]\npower_min=0.9\nomega1_min=0.58\nd1_min=-0.03\n");
    REQUIRE(cfg.boundaries.has_value());
    CHECK(cfg.boundaries->c12 == 2.366);
    REQUIRE(cfg.n.has_value());
    CHECK(*cfg.n == 831.586);
    REQUIRE(cfg.targets.has_value());
    CHECK(cfg.targets->omega1_min == 0.58);
}

TEST_CASE("JSON round trip through to_json is lossless") {
    Config cfg = parse_config(
        "[model]\np_t=0.58\np_c=0.6\ndelta=-0.1\n"
        "[plan]\npower=0.9\nrho_e=2.5\nbinding=true\n"
        "[schedule]\npsi=0.55\nn=831.5861029\n"
        "[boundaries]\nc11=0.547891\nc12=2.365618\nc2=2.038587\n");
    Config back = parse_config(cfg.to_json());
    CHECK(back.p_t == cfg.p_t);
    CHECK(back.delta == cfg.delta);
    CHECK(back.rho_e == cfg.rho_e);
    CHECK(back.binding == cfg.binding);
    CHECK(*back.power == *cfg.power);
    CHECK(*back.n == *cfg.n);
    CHECK(back.boundaries->c11 == cfg.boundaries->c11);
    CHECK(back.boundaries->c2 == cfg.boundaries->c2);
    CHECK(back.psi == cfg.psi);
}

TEST_CASE("JSON config with unknown content is rejected") {
    CHECK_THROWS_AS(parse_config("{ not json"), config_error);
    CHECK_THROWS_AS(parse_config("{\"model\": {\"p_x\": 0.5}}"), config_error);
    CHECK_THROWS_AS(parse_config("{\"model\": {\"p_t\": \"high\"}}"),
                    config_error);
}

TEST_CASE("load_config surfaces missing files") {
    CHECK_THROWS_AS(load_config("/nonexistent/path.ini"), config_error);
}
