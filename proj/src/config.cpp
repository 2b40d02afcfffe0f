#include "irslab/config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "irslab/units.hpp"

namespace irslab::config {

namespace {

struct KeyState {
    scenario::ScenarioParams params;
    bool d_su_given = false;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: value for '" + key + "' is not a number: '" +
                                    value + "'");
    }
}

void apply_pair(KeyState& st, const std::string& key, const std::string& value) {
    const double x = parse_number(key, value);
    auto& p = st.params;
    if (key == "alpha") p.alpha = x;
    else if (key == "P_dBm") p.power_w = units::dbm_to_watts(x);
    else if (key == "sigma_w2_dBm") p.noise_w = units::dbm_to_watts(x);
    else if (key == "zeta0_dB") p.zeta0 = units::db_to_linear(x);
    else if (key == "d0") p.d0_m = x;
    else if (key == "alpha_IU") p.exp_iu = x;
    else if (key == "alpha_SI") p.exp_si = x;
    else if (key == "alpha_SU") p.exp_su = x;
    else if (key == "phi_SU") p.phi_su = x;
    else if (key == "kappa_t") p.kappa_t = x;
    else if (key == "kappa_r") p.kappa_r = x;
    else if (key == "delta") p.delta_osc = x;
    else if (key == "d_SI") p.geometry.d_si_m = x;
    else if (key == "d_IU") p.geometry.d_iu_m = x;
    else if (key == "d_SU") { p.geometry.d_su_m = x; st.d_su_given = true; }
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void apply_config_lines(KeyState& st, std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        apply_pair(st, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void apply_override_lines(KeyState& st, const std::vector<std::string>& overrides) {
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override '" + kv + "' is not key=value");
        apply_pair(st, trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
    }
}

void finalize(KeyState& st) {
    if (!st.d_su_given)
        st.params.geometry.d_su_m = std::hypot(st.params.geometry.d_si_m,
                                               st.params.geometry.d_iu_m);
    scenario::validate(st.params);
}

}  // namespace

scenario::ScenarioParams apply_config(std::istream& in, scenario::ScenarioParams base) {
    KeyState st{base, false};
    apply_config_lines(st, in);
    finalize(st);
    return st.params;
}

scenario::ScenarioParams load_config(const std::string& path, scenario::ScenarioParams base) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    return apply_config(in, base);
}

scenario::ScenarioParams apply_overrides(const std::vector<std::string>& overrides,
                                         scenario::ScenarioParams base) {
    KeyState st{base, false};
    // A preexisting non-right-triangle d_SU must survive unrelated overrides.
    st.d_su_given = true;
    apply_override_lines(st, overrides);
    finalize(st);
    return st.params;
}

scenario::ScenarioParams resolve_params(const std::string& config_path,
                                        const std::vector<std::string>& overrides) {
    KeyState st{scenario::default_scenario(), false};
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::invalid_argument("config: cannot open '" + config_path + "'");
        apply_config_lines(st, in);
    }
    apply_override_lines(st, overrides);
    finalize(st);
    return st.params;
}

std::vector<std::pair<std::string, double>> resolved_entries(const scenario::ScenarioParams& p) {
    return {
        {"alpha", p.alpha},
        {"P_dBm", units::watts_to_dbm(p.power_w)},
        {"sigma_w2_dBm", units::watts_to_dbm(p.noise_w)},
        {"zeta0_dB", units::linear_to_db(p.zeta0)},
        {"d0", p.d0_m},
        {"alpha_IU", p.exp_iu},
        {"alpha_SI", p.exp_si},
        {"alpha_SU", p.exp_su},
        {"phi_SU", p.phi_su},
        {"kappa_t", p.kappa_t},
        {"kappa_r", p.kappa_r},
        {"delta", p.delta_osc},
        {"d_SI", p.geometry.d_si_m},
        {"d_IU", p.geometry.d_iu_m},
        {"d_SU", p.geometry.d_su_m},
    };
}

}  // namespace irslab::config
