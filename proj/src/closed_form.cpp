#include "irslab/closed_form.hpp"

#include <cmath>
#include <stdexcept>

namespace irslab::closed_form {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

double log2_rate(double snr) { return std::log1p(snr) / kLn2; }

RateCoefficients coefficients(const scenario::ScenarioParams& params,
                              const scenario::LinkBudget& budget) {
    const double a = params.alpha;
    const double cascade = a * a * budget.mu_iu * budget.mu_si;
    const double cross = a * std::sqrt(budget.mu_iu * budget.mu_si * budget.mu_su) *
                         std::cos(params.phi_su);
    RateCoefficients c;
    c.beta = 4.0 * cascade / (kPi * kPi);
    c.lambda = (1.0 - 4.0 / (kPi * kPi)) * cascade + (4.0 / kPi) * cross;
    c.rho = 2.0 * cross;
    c.mu_su = budget.mu_su;
    return c;
}

double avg_rate_hwi(double n, const scenario::ScenarioParams& params,
                    const scenario::LinkBudget& budget) {
    if (!(n >= 1.0)) throw std::invalid_argument("avg_rate_hwi: n must be >= 1");
    const auto c = coefficients(params, budget);
    const double chi = c.chi(n);
    const double s = params.noise_w / params.power_w;
    return log2_rate(chi / (params.kappa_sum() * chi + s));
}

double utility_hwi(double n, const scenario::ScenarioParams& params,
                   const scenario::LinkBudget& budget) {
    if (!(n >= 1.0)) throw std::invalid_argument("utility_hwi: n must be >= 1");
    const auto c = coefficients(params, budget);
    const double kappa = params.kappa_sum();
    const double s = params.noise_w / params.power_w;
    const double chi = c.chi(n);
    return s * c.dchi(n) / ((kappa * chi + s) * ((kappa + 1.0) * chi + s) * kLn2);
}

double rate_ideal(double n, const scenario::ScenarioParams& params,
                  const scenario::LinkBudget& budget) {
    if (!(n >= 1.0)) throw std::invalid_argument("rate_ideal: n must be >= 1");
    const auto c = coefficients(params, budget);
    return log2_rate(params.power_w * c.varpi(n) / params.noise_w);
}

double utility_ideal(double n, const scenario::ScenarioParams& params,
                     const scenario::LinkBudget& budget) {
    if (!(n >= 1.0)) throw std::invalid_argument("utility_ideal: n must be >= 1");
    const auto c = coefficients(params, budget);
    const double s = params.noise_w / params.power_w;
    return c.dvarpi(n) / ((s + c.varpi(n)) * kLn2);
}

double rate_gap(double n, const scenario::ScenarioParams& params,
                const scenario::LinkBudget& budget) {
    if (!(n >= 1.0)) throw std::invalid_argument("rate_gap: n must be >= 1");
    const auto c = coefficients(params, budget);
    const double kappa = params.kappa_sum();
    const double p = params.power_w;
    const double sw2 = params.noise_w;
    const double chi = c.chi(n);
    const double varpi = c.varpi(n);
    const double num = p * kappa * chi + sw2 + p * p * chi * varpi * (kappa / sw2) + p * varpi;
    const double den = p * (kappa + 1.0) * chi + sw2;
    return std::log(num / den) / kLn2;
}

double utility_gap(double n, const scenario::ScenarioParams& params,
                   const scenario::LinkBudget& budget) {
    if (!(n >= 1.0)) throw std::invalid_argument("utility_gap: n must be >= 1");
    const auto c = coefficients(params, budget);
    const double kappa = params.kappa_sum();
    const double p = params.power_w;
    const double sw2 = params.noise_w;
    const double chi = c.chi(n);
    const double varpi = c.varpi(n);
    const double dchi = c.dchi(n);
    const double dvarpi = c.dvarpi(n);

    const double num = p * p * p * chi * chi * (kappa + 1.0) * (kappa / sw2) * dvarpi +
                       p * p * (kappa + 1.0) * (dvarpi * chi - dchi * varpi) +
                       p * p * kappa * (dvarpi * chi + dchi * varpi) +
                       p * sw2 * (dvarpi - dchi);
    const double den = (p * kappa * chi + sw2 + p * p * varpi * chi * (kappa / sw2) + p * varpi) *
                       (p * (kappa + 1.0) * chi + sw2) * kLn2;
    return num / den;
}

double rate_limit_inf(const scenario::ScenarioParams& params) {
    const double kappa = params.kappa_sum();
    if (!(kappa > 0.0))
        throw std::domain_error("rate_limit_inf: diverges for kappa_t + kappa_r = 0");
    return log2_rate(1.0 / kappa);
}

}  // namespace irslab::closed_form
