#pragma once

#include <stdexcept>

namespace irslab::scenario {

/// Source/IRS/destination placement. The default layout is a right triangle:
/// d_su = sqrt(d_si^2 + d_iu^2).
struct Geometry {
    double d_si_m = 0.0;
    double d_iu_m = 0.0;
    double d_su_m = 0.0;
};

/// Full physical configuration of the link in linear SI units (watts, meters).
/// dB/dBm exist only at the config/CLI boundary. Instances are treated as
/// immutable after construction; experiments work on modified copies.
struct ScenarioParams {
    double alpha = 1.0;        // reflection amplitude, in (0, 1]
    double power_w = 0.0;      // transmit signal power P
    double noise_w = 0.0;      // receiver noise power sigma_w^2
    double zeta0 = 0.0;        // path loss at the reference distance (linear)
    double d0_m = 1.0;         // reference distance
    double exp_iu = 3.0;       // path-loss exponents per link
    double exp_si = 3.0;
    double exp_su = 3.0;
    double phi_su = 0.0;       // phase of the direct source-destination channel
    double kappa_t = 0.0;      // transmitter distortion proportionality
    double kappa_r = 0.0;      // receiver distortion proportionality
    double delta_osc = 0.0;    // oscillator quality of the receiver LO
    Geometry geometry;

    double kappa_sum() const { return kappa_t + kappa_r; }
};

/// Linear power-attenuation coefficients mu_x = zeta0 * (d0 / d_x)^exp_x.
struct LinkBudget {
    double mu_iu = 0.0;
    double mu_si = 0.0;
    double mu_su = 0.0;
};

void validate(const Geometry& g);
void validate(const ScenarioParams& p);

LinkBudget link_budget(const ScenarioParams& p);

/// Baseline configuration: alpha=1, P=20 dBm, sigma_w^2=-80 dBm, zeta0=-20 dB,
/// d0=1 m, exponents 3, phi_su=pi/4, kappa_t=kappa_r=0.05^2, delta=1.58e-4,
/// distances (50, 15, sqrt(50^2+15^2)).
ScenarioParams default_scenario();

}  // namespace irslab::scenario
