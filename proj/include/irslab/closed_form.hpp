#pragma once

#include "irslab/scenario.hpp"

namespace irslab::closed_form {

/// Polynomial coefficients behind the average-rate expressions. With
/// kappa = kappa_t + kappa_r and s = sigma_w^2 / P, the average achievable
/// rate with impairments is log2(1 + chi / (kappa*chi + s)) where
/// chi(N) = beta*N^2 + lambda*N + mu_su, and the ideal-hardware rate is
/// log2(1 + varpi / s) where varpi(N) = (pi^2/4)*beta*N^2 + rho*N + mu_su.
struct RateCoefficients {
    double beta = 0.0;    // 4 alpha^2 mu_iu mu_si / pi^2
    double lambda = 0.0;  // (1 - 4/pi^2) alpha^2 mu_iu mu_si + (4 alpha/pi) sqrt(mu_iu mu_si mu_su) cos(phi_su)
    double rho = 0.0;     // 2 alpha sqrt(mu_iu mu_si mu_su) cos(phi_su)
    double mu_su = 0.0;

    double chi(double n) const { return (beta * n + lambda) * n + mu_su; }
    double varpi(double n) const {
        return (2.4674011002723396547 * beta * n + rho) * n + mu_su;  // pi^2/4
    }
    double dchi(double n) const { return 2.0 * beta * n + lambda; }
    double dvarpi(double n) const { return 4.9348022005446793094 * beta * n + rho; }  // pi^2/2
};

RateCoefficients coefficients(const scenario::ScenarioParams& params,
                              const scenario::LinkBudget& budget);

// The rate/utility expressions are smooth in a real-valued element count;
// derivative checks rely on that, integer grids live at the CLI boundary.

/// Average achievable rate with hardware impairments, bits/s/Hz.
double avg_rate_hwi(double n, const scenario::ScenarioParams& params,
                    const scenario::LinkBudget& budget);

/// Marginal rate per added reflecting element, d avg_rate_hwi / dN.
double utility_hwi(double n, const scenario::ScenarioParams& params,
                   const scenario::LinkBudget& budget);

/// Ideal-hardware counterparts.
double rate_ideal(double n, const scenario::ScenarioParams& params,
                  const scenario::LinkBudget& budget);
double utility_ideal(double n, const scenario::ScenarioParams& params,
                     const scenario::LinkBudget& budget);

/// Rate/utility degradation caused by the impairments; equals the difference
/// of the ideal and impaired expressions analytically.
double rate_gap(double n, const scenario::ScenarioParams& params,
                const scenario::LinkBudget& budget);
double utility_gap(double n, const scenario::ScenarioParams& params,
                   const scenario::LinkBudget& budget);

/// Large-N rate ceiling log2(1 + 1/(kappa_t + kappa_r)). Requires a positive
/// kappa sum; the ideal-hardware rate has no such ceiling.
double rate_limit_inf(const scenario::ScenarioParams& params);

/// log2(1 + x) evaluated as a natural-log ratio.
double log2_rate(double snr);

}  // namespace irslab::closed_form
