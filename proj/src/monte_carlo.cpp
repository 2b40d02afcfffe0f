#include "irslab/monte_carlo.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "irslab/closed_form.hpp"
#include "irslab/parallel.hpp"

namespace irslab::monte_carlo {

namespace {

double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 8) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

}  // namespace

double rate_from_gain(double gain, const scenario::ScenarioParams& params) {
    if (!(gain >= 0.0)) throw std::invalid_argument("rate_from_gain: gain must be nonnegative");
    const double p = params.power_w;
    const double snr = p * gain / (p * params.kappa_sum() * gain + params.noise_w);
    return closed_form::log2_rate(snr);
}

double instantaneous_rate_compensated(int n, const scenario::ScenarioParams& params,
                                      const scenario::LinkBudget& budget,
                                      const hwi::PhaseErrorVector& errors) {
    if (errors.size() != n)
        throw std::invalid_argument("instantaneous_rate_compensated: errors length mismatch");
    std::complex<double> sum{0.0, 0.0};
    for (int i = 0; i < n; ++i) sum += std::polar(1.0, errors.theta[i]);
    const std::complex<double> composite =
        params.alpha * std::sqrt(budget.mu_iu * budget.mu_si) * sum +
        std::polar(std::sqrt(budget.mu_su), params.phi_su);
    return rate_from_gain(std::norm(composite), params);
}

double instantaneous_rate_with_phi(const Eigen::VectorXcd& phi_diag,
                                   const channels::ChannelRealization& ch,
                                   const hwi::PhaseErrorVector& errors,
                                   const scenario::ScenarioParams& params) {
    const int n = ch.n;
    if (phi_diag.size() != n || errors.size() != n)
        throw std::invalid_argument("instantaneous_rate_with_phi: dimension mismatch");
    for (int i = 0; i < n; ++i) {
        if (std::abs(std::abs(phi_diag[i]) - params.alpha) > 1e-9 * (1.0 + params.alpha))
            throw std::invalid_argument(
                "instantaneous_rate_with_phi: |Phi_ii| must equal alpha");
    }
    // h_IU^T Phi Theta_E h_SI + h_SU
    std::complex<double> cascade{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double phase = ch.phi_iu[i] + ch.phi_si[i] + errors.theta[i];
        cascade += ch.amp_iu[i] * ch.amp_si[i] * phi_diag[i] * std::polar(1.0, phase);
    }
    const std::complex<double> composite = cascade + ch.h_su();
    return rate_from_gain(std::norm(composite), params);
}

TrialAverage average_rate(const Sampler& sampler, long trials, const rng::Stream& stream) {
    if (trials < 1) throw std::invalid_argument("average_rate: trials must be >= 1");
    std::vector<double> values(static_cast<std::size_t>(trials));
    parallel::parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
        auto eng = stream.substream(i);
        values[i] = sampler(eng);
    });

    const auto n = values.size();
    const double mean = pairwise_sum(values.data(), n) / static_cast<double>(n);
    TrialAverage avg;
    avg.mean = mean;
    avg.trials = trials;
    if (trials > 1) {
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = values[i] - mean;
            sq[i] = d * d;
        }
        const double var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
        avg.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return avg;
}

}  // namespace irslab::monte_carlo
