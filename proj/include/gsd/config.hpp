#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "gsd/design.hpp"
#include "gsd/types.hpp"

namespace gsd {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parsed and validated run configuration. The on-disk format is a flat
/// [section] key = value document ([model], [plan], [schedule],
/// [boundaries], [targets]); unknown sections or keys are errors. A JSON
/// document with the same sections (as emitted by the CLI reports) is
/// accepted interchangeably.
struct Config {
    // [model]
    double p_t = 0;
    double p_c = 0;
    double delta = 0;

    // [plan]
    double alpha = 0.025;
    std::optional<double> power;  // exactly one of power/beta may be given
    std::optional<double> beta;
    double rho_e = 2.0;
    double rho_f = 3.0;
    bool binding = false;

    // [schedule]
    double psi = 0.5;
    std::optional<double> n;  // per-arm N, required for fixed-N modes

    // [boundaries] (optional; lets simulate/trajectories skip solving)
    std::optional<BoundarySet> boundaries;

    // [targets] (optional; used by scan --meet-targets)
    std::optional<TargetSet> targets;

    EfficacyModel model() const;
    SpendingPlan plan() const;     // beta_total from beta or 1 - power
    double power_value() const;    // throws config_error if neither given

    std::string to_json() const;   // full precision, re-ingestable
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

}  // namespace gsd
