#pragma once

#include <Eigen/Dense>

#include "irslab/channels.hpp"
#include "irslab/monte_carlo.hpp"
#include "irslab/optimizer.hpp"
#include "irslab/rng.hpp"
#include "irslab/scenario.hpp"

namespace irslab::robustness {

/// Additive zero-mean complex Gaussian channel-estimation error, applied to
/// every complex channel coefficient. The baseline study uses the receiver
/// noise power as the error variance.
struct CsiErrorModel {
    double error_variance_w = 0.0;
};

/// Adds one CN(0, variance) draw to each coefficient of h_SI, h_IU and h_SU,
/// then re-extracts the per-element magnitude/phase representation. The
/// constant-magnitude property of sampled realizations does not survive this.
channels::ChannelRealization perturb_csi(const channels::ChannelRealization& ch,
                                         const CsiErrorModel& model, rng::Engine& eng);

/// Optimizes against the perturbed CSI (expected_xi of the perturbed
/// realization feeds the lift) but evaluates the extracted phases on the true
/// channels over fresh phase-error draws.
struct ImperfectCsiOutcome {
    monte_carlo::TrialAverage rate;
    optimizer::LiftedSolution lifted;
};
ImperfectCsiOutcome optimize_with_imperfect_csi(const channels::ChannelRealization& ch_true,
                                                const CsiErrorModel& model,
                                                const scenario::ScenarioParams& params,
                                                long trials, const rng::Stream& stream);

/// Per trial, draws the IRS phase errors first and a residual phase-noise
/// vector (i.i.d. uniform on [-pi/2, pi/2]) second, then evaluates with
/// Phi = diag(theta ⊙ theta_p). Drawing order keeps the phase-error stream
/// aligned with the clean evaluation under a shared master seed.
monte_carlo::TrialAverage evaluate_with_residual_phase_noise(
    const Eigen::VectorXd& theta_opt, const channels::ChannelRealization& ch,
    const scenario::ScenarioParams& params, long trials, const rng::Stream& stream);

}  // namespace irslab::robustness
