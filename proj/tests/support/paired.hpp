#pragma once

// Test-only paired (common-random-number) rate comparisons: both
// configurations see identical phase-error draws per trial, so the standard
// error of the difference reflects only the configurations' true gap.

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "irslab/channels.hpp"
#include "irslab/hwi.hpp"
#include "irslab/monte_carlo.hpp"
#include "irslab/rng.hpp"
#include "irslab/scenario.hpp"

namespace test_support {

inline Eigen::VectorXcd phi_from_theta(const Eigen::VectorXd& theta, double alpha) {
    Eigen::VectorXcd phi(theta.size());
    for (int i = 0; i < theta.size(); ++i) phi[i] = std::polar(alpha, theta[i]);
    return phi;
}

inline Eigen::VectorXd compensated_theta(const irslab::channels::ChannelRealization& ch) {
    Eigen::VectorXd theta(ch.n);
    for (int i = 0; i < ch.n; ++i) theta[i] = -(ch.phi_iu[i] + ch.phi_si[i]);
    return theta;
}

/// Mean and standard error of rate(theta_a) - rate(theta_b) under shared
/// phase-error draws.
inline irslab::monte_carlo::TrialAverage paired_rate_gap(
    const Eigen::VectorXd& theta_a, const Eigen::VectorXd& theta_b,
    const irslab::channels::ChannelRealization& ch,
    const irslab::scenario::ScenarioParams& params, long trials,
    const irslab::rng::Stream& stream) {
    namespace mc = irslab::monte_carlo;
    const auto phi_a = phi_from_theta(theta_a, params.alpha);
    const auto phi_b = phi_from_theta(theta_b, params.alpha);
    return mc::average_rate(
        [&](irslab::rng::Engine& eng) {
            const auto errors = irslab::hwi::sample_phase_errors(ch.n, eng);
            return mc::instantaneous_rate_with_phi(phi_a, ch, errors, params) -
                   mc::instantaneous_rate_with_phi(phi_b, ch, errors, params);
        },
        trials, stream);
}

/// Same, with the second configuration additionally disturbed by residual
/// phase noise drawn after the shared phase errors.
inline irslab::monte_carlo::TrialAverage paired_residual_noise_gap(
    const Eigen::VectorXd& theta, const irslab::channels::ChannelRealization& ch,
    const irslab::scenario::ScenarioParams& params, long trials,
    const irslab::rng::Stream& stream) {
    namespace mc = irslab::monte_carlo;
    const auto phi = phi_from_theta(theta, params.alpha);
    return mc::average_rate(
        [&](irslab::rng::Engine& eng) {
            const auto errors = irslab::hwi::sample_phase_errors(ch.n, eng);
            const auto noise = irslab::hwi::sample_phase_errors(ch.n, eng);
            Eigen::VectorXd disturbed(ch.n);
            for (int i = 0; i < ch.n; ++i) disturbed[i] = theta[i] + noise.theta[i];
            const auto phi_noisy = phi_from_theta(disturbed, params.alpha);
            return mc::instantaneous_rate_with_phi(phi, ch, errors, params) -
                   mc::instantaneous_rate_with_phi(phi_noisy, ch, errors, params);
        },
        trials, stream);
}

}  // namespace test_support
