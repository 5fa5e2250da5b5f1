#include "gsd/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gsd {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& section, const std::string& key,
                    const std::string& value) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != value.size() || value.empty())
        throw config_error("[" + section + "] " + key +
                           ": expected a number, got '" + value + "'");
    return v;
}

bool parse_bool(const std::string& section, const std::string& key,
                const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw config_error("[" + section + "] " + key +
                       ": expected true/false, got '" + value + "'");
}

void apply_key(Config& cfg, const std::string& section,
               const std::string& key, const std::string& value) {
    auto num = [&] { return parse_number(section, key, value); };
    if (section == "model") {
        if (key == "p_t") cfg.p_t = num();
        else if (key == "p_c") cfg.p_c = num();
        else if (key == "delta") cfg.delta = num();
        else throw config_error("[model] unknown key '" + key + "'");
    } else if (section == "plan") {
        if (key == "alpha") cfg.alpha = num();
        else if (key == "power") cfg.power = num();
        else if (key == "beta") cfg.beta = num();
        else if (key == "rho_e") cfg.rho_e = num();
        else if (key == "rho_f") cfg.rho_f = num();
        else if (key == "binding") cfg.binding = parse_bool(section, key, value);
        else throw config_error("[plan] unknown key '" + key + "'");
    } else if (section == "schedule") {
        if (key == "psi") cfg.psi = num();
        else if (key == "n") cfg.n = num();
        else throw config_error("[schedule] unknown key '" + key + "'");
    } else if (section == "boundaries") {
        if (!cfg.boundaries) cfg.boundaries = BoundarySet{0, 0, 0};
        if (key == "c11") cfg.boundaries->c11 = num();
        else if (key == "c12") cfg.boundaries->c12 = num();
        else if (key == "c2") cfg.boundaries->c2 = num();
        else throw config_error("[boundaries] unknown key '" + key + "'");
    } else if (section == "targets") {
        if (!cfg.targets) cfg.targets = TargetSet{};
        if (key == "power_min") cfg.targets->power_min = num();
        else if (key == "omega1_min") cfg.targets->omega1_min = num();
        else if (key == "d1_min") cfg.targets->d1_min = num();
        else throw config_error("[targets] unknown key '" + key + "'");
    } else {
        throw config_error("unknown section '[" + section + "]'");
    }
}

void validate(const Config& cfg) {
    try {
        (void)cfg.model();
    } catch (const std::domain_error& e) {
        throw config_error(std::string("[model] ") + e.what());
    }
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw config_error("[plan] alpha must lie strictly in (0,1)");
    if (cfg.power && cfg.beta)
        throw config_error("[plan] give either power or beta, not both");
    if (cfg.power && !(*cfg.power > 0.0 && *cfg.power < 1.0))
        throw config_error("[plan] power must lie strictly in (0,1)");
    if (cfg.beta && !(*cfg.beta > 0.0 && *cfg.beta < 1.0))
        throw config_error("[plan] beta must lie strictly in (0,1)");
    if (!(cfg.rho_e > 0.0))
        throw config_error("[plan] rho_e must be positive");
    if (!(cfg.rho_f > 0.0))
        throw config_error("[plan] rho_f must be positive");
    if (!(cfg.psi > 0.0 && cfg.psi < 1.0))
        throw config_error("[schedule] psi must lie strictly in (0,1)");
    if (cfg.n && !(*cfg.n > 0.0))
        throw config_error("[schedule] n must be positive");
    if (cfg.boundaries && !(cfg.boundaries->c12 > cfg.boundaries->c11))
        throw config_error("[boundaries] c12 must exceed c11");
}

Config parse_ini(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("line " + std::to_string(lineno) +
                                   ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) +
                               ": expected key = value");
        if (section.empty())
            throw config_error("line " + std::to_string(lineno) +
                               ": key outside any [section]");
        apply_key(cfg, section, trim(line.substr(0, eq)),
                  trim(line.substr(eq + 1)));
    }
    return cfg;
}

Config parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("invalid JSON config: ") + e.what());
    }
    // A CLI report embeds its inputs under "config".
    if (j.contains("config")) j = j.at("config");
    Config cfg;
    for (auto& [section, body] : j.items()) {
        if (!body.is_object())
            throw config_error("section '" + section + "' must be an object");
        for (auto& [key, value] : body.items()) {
            std::string text_value;
            if (value.is_boolean())
                text_value = value.get<bool>() ? "true" : "false";
            else if (value.is_number())
                text_value = value.dump();
            else
                throw config_error("[" + section + "] " + key +
                                   ": expected a number or boolean");
            apply_key(cfg, section, key, text_value);
        }
    }
    return cfg;
}

}  // namespace

Config parse_config(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    Config cfg = (first != std::string::npos && text[first] == '{')
                     ? parse_json(text)
                     : parse_ini(text);
    validate(cfg);
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

EfficacyModel Config::model() const { return {p_t, p_c, delta}; }

SpendingPlan Config::plan() const {
    SpendingPlan p;
    p.alpha_total = alpha;
    // When neither beta nor power is given the plan's beta_total is a
    // placeholder; fixed-N solving replaces it with the solved value and
    // nothing else consumes it.
    p.beta_total = beta ? *beta : (power ? 1.0 - *power : 0.5);
    p.rho_e = rho_e;
    p.rho_f = rho_f;
    p.futility_binding = binding;
    return p;
}

double Config::power_value() const {
    if (power) return *power;
    if (beta) return 1.0 - *beta;
    throw config_error("[plan] needs power or beta");
}

std::string Config::to_json() const {
    nlohmann::json j;
    j["model"] = {{"p_t", p_t}, {"p_c", p_c}, {"delta", delta}};
    j["plan"] = {{"alpha", alpha},
                 {"rho_e", rho_e},
                 {"rho_f", rho_f},
                 {"binding", binding}};
    if (power) j["plan"]["power"] = *power;
    if (beta) j["plan"]["beta"] = *beta;
    j["schedule"] = {{"psi", psi}};
    if (n) j["schedule"]["n"] = *n;
    if (boundaries)
        j["boundaries"] = {{"c11", boundaries->c11},
                           {"c12", boundaries->c12},
                           {"c2", boundaries->c2}};
    if (targets)
        j["targets"] = {{"power_min", targets->power_min},
                        {"omega1_min", targets->omega1_min},
                        {"d1_min", targets->d1_min}};
    return j.dump(2);
}

}  // namespace gsd
