#include "irslab/df_relay.hpp"

#include <cmath>
#include <stdexcept>

#include "irslab/closed_form.hpp"

namespace irslab::df_relay {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void check_df(const DfParams& df, const scenario::ScenarioParams& params) {
    if (!(df.p1_w > 0.0) || !(df.p2_w > 0.0))
        throw std::invalid_argument("df_relay: transmit powers must be positive");
    const double total = df.p1_w + df.p2_w;
    if (std::abs(total - 2.0 * params.power_w) > 1e-9 * (1.0 + 2.0 * params.power_w))
        throw std::invalid_argument("df_relay: P1 + P2 must equal 2P");
}

/// First hop, source -> relay.
double branch_a(double n, const DfParams& df, double noise_w) {
    const double mu = df.budget.mu_si;
    const double den = df.kappa_r * mu + n * df.kappa_t * mu + noise_w / df.p1_w;
    return closed_form::log2_rate(n * mu / den);
}

/// Second hop plus the direct link, relay -> destination.
double branch_b(double n, const DfParams& df, double noise_w) {
    const double mu_su = df.budget.mu_su;
    const double mu_iu = df.budget.mu_iu;
    const double direct = mu_su / ((df.kappa_t + df.kappa_r) * mu_su + noise_w / df.p1_w);
    const double hop = n * mu_iu / (df.kappa_t * mu_iu + n * df.kappa_r * mu_iu + noise_w / df.p2_w);
    return closed_form::log2_rate(direct + hop);
}

}  // namespace

DfParams df_params_from(const scenario::ScenarioParams& params,
                        const scenario::LinkBudget& budget) {
    DfParams df;
    df.p1_w = params.power_w;
    df.p2_w = params.power_w;
    df.kappa_t = params.kappa_t;
    df.kappa_r = params.kappa_r;
    df.budget = budget;
    return df;
}

double df_rate_upper_bound(double n, const DfParams& df,
                           const scenario::ScenarioParams& params) {
    if (!(n >= 1.0)) throw std::invalid_argument("df_rate_upper_bound: n must be >= 1");
    check_df(df, params);
    return 0.5 * std::min(branch_a(n, df, params.noise_w), branch_b(n, df, params.noise_w));
}

DfUtility df_utility(double n, const DfParams& df, const scenario::ScenarioParams& params) {
    if (!(n >= 1.0)) throw std::invalid_argument("df_utility: n must be >= 1");
    check_df(df, params);
    const double noise = params.noise_w;
    const double a = branch_a(n, df, noise);
    const double b = branch_b(n, df, noise);

    DfUtility u;
    u.branch_tie = std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a) + std::abs(b));
    if (a < b || u.branch_tie) {
        const double mu = df.budget.mu_si;
        const double den_lin = df.kappa_r * mu + n * df.kappa_t * mu + noise / df.p1_w;
        u.value = (df.kappa_r * mu * mu + (noise / df.p1_w) * mu) /
                  (2.0 * den_lin * (den_lin + n * mu) * kLn2);
    } else {
        const double mu = df.budget.mu_iu;
        const double mu_su = df.budget.mu_su;
        const double den_lin = df.kappa_t * mu + n * df.kappa_r * mu + noise / df.p2_w;
        const double direct = mu_su / ((df.kappa_t + df.kappa_r) * mu_su + noise / df.p1_w);
        const double level = 1.0 + direct + n * mu / den_lin;
        u.value = (df.kappa_t * mu * mu + (noise / df.p2_w) * mu) /
                  (2.0 * level * den_lin * den_lin * kLn2);
    }
    return u;
}

AsymptoticLimits asymptotics(const scenario::ScenarioParams& params, const DfParams& df,
                             double n) {
    const double kappa = df.kappa_t + df.kappa_r;
    if (!(kappa > 0.0)) throw std::invalid_argument("asymptotics: kappa must be positive");
    if (!(n > 0.0)) throw std::invalid_argument("asymptotics: n must be positive");
    // the limit formulas hold for the even split kappa_t = kappa_r = kappa/2
    if (std::abs(df.kappa_t - df.kappa_r) > 1e-12 * (1.0 + kappa))
        throw std::invalid_argument("asymptotics: requires kappa_t = kappa_r");

    AsymptoticLimits lim;
    lim.irs_rate_limit = closed_form::rate_limit_inf(params);
    lim.df_rate_limit_large_n = 0.5 * closed_form::log2_rate(2.0 / kappa);
    lim.df_rate_limit_high_power = 0.5 * closed_form::log2_rate(2.0 * n / (kappa + kappa * n));
    lim.df_utility_high_power =
        kappa / ((kappa + n * kappa + 2.0 * n) * (kappa + n * kappa) * kLn2);
    lim.irs_utility_high_power = 0.0;
    lim.gap_large_n = 0.5 * closed_form::log2_rate(1.0 / (kappa * kappa + 2.0 * kappa));
    lim.gap_high_power = 0.5 * closed_form::log2_rate(
        (2.0 * kappa + n + 1.0) / ((n + 1.0) * kappa * kappa + 2.0 * n * kappa));
    return lim;
}

double kappa_threshold(const scenario::ScenarioParams& params,
                       const scenario::LinkBudget& budget) {
    const auto c = closed_form::coefficients(params, budget);
    const double s = c.beta + c.lambda + c.mu_su;
    const double sw2 = params.noise_w;
    const double p = params.power_w;
    const double den = p * p * s * s - 2.0 * sw2 * p * s;
    if (!(den > 0.0))
        throw std::domain_error("kappa_threshold: undefined, P(beta+lambda+mu_su) <= 2 sigma_w^2");
    return 2.0 * sw2 * sw2 / den;
}

}  // namespace irslab::df_relay
