#include "irslab/scenario.hpp"

#include <cmath>
#include <string>

#include "irslab/units.hpp"

namespace irslab::scenario {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("scenario: " + what);
}

}  // namespace

void validate(const Geometry& g) {
    require(std::isfinite(g.d_si_m) && g.d_si_m > 0.0, "d_si must be positive");
    require(std::isfinite(g.d_iu_m) && g.d_iu_m > 0.0, "d_iu must be positive");
    require(std::isfinite(g.d_su_m) && g.d_su_m > 0.0, "d_su must be positive");
}

void validate(const ScenarioParams& p) {
    require(p.alpha > 0.0 && p.alpha <= 1.0, "alpha must lie in (0, 1]");
    require(std::isfinite(p.power_w) && p.power_w > 0.0, "power must be positive");
    require(std::isfinite(p.noise_w) && p.noise_w > 0.0, "noise power must be positive");
    require(std::isfinite(p.zeta0) && p.zeta0 > 0.0, "zeta0 must be positive");
    require(std::isfinite(p.d0_m) && p.d0_m > 0.0, "d0 must be positive");
    require(p.kappa_t >= 0.0, "kappa_t must be nonnegative");
    require(p.kappa_r >= 0.0, "kappa_r must be nonnegative");
    require(p.delta_osc >= 0.0, "delta_osc must be nonnegative");
    require(std::isfinite(p.exp_iu) && std::isfinite(p.exp_si) && std::isfinite(p.exp_su),
            "path-loss exponents must be finite");
    require(std::isfinite(p.phi_su), "phi_su must be finite");
    validate(p.geometry);
}

LinkBudget link_budget(const ScenarioParams& p) {
    validate(p);
    const auto mu = [&](double d, double e) { return p.zeta0 * std::pow(p.d0_m / d, e); };
    LinkBudget b;
    b.mu_iu = mu(p.geometry.d_iu_m, p.exp_iu);
    b.mu_si = mu(p.geometry.d_si_m, p.exp_si);
    b.mu_su = mu(p.geometry.d_su_m, p.exp_su);
    return b;
}

ScenarioParams default_scenario() {
    ScenarioParams p;
    p.alpha = 1.0;
    p.power_w = units::dbm_to_watts(20.0);
    p.noise_w = units::dbm_to_watts(-80.0);
    p.zeta0 = units::db_to_linear(-20.0);
    p.d0_m = 1.0;
    p.exp_iu = p.exp_si = p.exp_su = 3.0;
    p.phi_su = 0.25 * M_PI;
    p.kappa_t = 0.05 * 0.05;
    p.kappa_r = 0.05 * 0.05;
    p.delta_osc = 1.58e-4;
    p.geometry.d_si_m = 50.0;
    p.geometry.d_iu_m = 15.0;
    p.geometry.d_su_m = std::hypot(50.0, 15.0);
    return p;
}

}  // namespace irslab::scenario
