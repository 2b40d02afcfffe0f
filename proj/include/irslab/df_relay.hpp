#pragma once

#include "irslab/scenario.hpp"

namespace irslab::df_relay {

/// Configuration of the multiple-antenna decode-and-forward relay benchmark.
/// The relay reuses the IRS link budget (h_SR = h_SI, h_RU = h_IU) and splits
/// the total power as P1 + P2 = 2P, by default evenly.
struct DfParams {
    double p1_w = 0.0;  // source transmit power
    double p2_w = 0.0;  // relay transmit power
    double kappa_t = 0.0;
    double kappa_r = 0.0;
    scenario::LinkBudget budget;
};

DfParams df_params_from(const scenario::ScenarioParams& params,
                        const scenario::LinkBudget& budget);

/// Closed-form upper bound (1/2) * min{A(N), B(N)} on the relay link's
/// achievable rate with N antennas, bits/s/Hz.
double df_rate_upper_bound(double n, const DfParams& df, const scenario::ScenarioParams& params);

/// Marginal rate per added relay antenna. The bound is piecewise in which of
/// the two hops binds; at a tie the A-branch value is returned flagged as a
/// non-differentiable point.
struct DfUtility {
    double value = 0.0;
    bool branch_tie = false;
};
DfUtility df_utility(double n, const DfParams& df, const scenario::ScenarioParams& params);

/// Asymptotic limits and their gaps, all with kappa = kappa_t + kappa_r and
/// the even power split. The high-power entries depend on the antenna count.
struct AsymptoticLimits {
    double irs_rate_limit = 0.0;          // log2(1 + 1/kappa)
    double df_rate_limit_large_n = 0.0;   // (1/2) log2(1 + 2/kappa)
    double df_rate_limit_high_power = 0.0;   // (1/2) log2(1 + 2N/(kappa + kappa N))
    double df_utility_high_power = 0.0;      // kappa / ((kappa+N kappa+2N)(kappa+N kappa) ln 2)
    double irs_utility_high_power = 0.0;     // 0
    double gap_large_n = 0.0;     // (1/2) log2(1 + 1/(kappa^2 + 2 kappa)) > 0
    double gap_high_power = 0.0;  // (1/2) log2(1 + (2 kappa+N+1)/((N+1)kappa^2 + 2N kappa)) > 0
};
AsymptoticLimits asymptotics(const scenario::ScenarioParams& params, const DfParams& df,
                             double n);

/// Threshold on kappa_t + kappa_r above which the single-element IRS link
/// already beats the relay's large-N ceiling:
/// 2 sigma_w^4 / [P^2 (beta+lambda+mu_su)^2 - 2 sigma_w^2 P (beta+lambda+mu_su)].
/// Throws std::domain_error when the denominator is not positive.
double kappa_threshold(const scenario::ScenarioParams& params,
                       const scenario::LinkBudget& budget);

}  // namespace irslab::df_relay
