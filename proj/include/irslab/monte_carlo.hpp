#pragma once

#include <Eigen/Dense>
#include <functional>

#include "irslab/channels.hpp"
#include "irslab/hwi.hpp"
#include "irslab/rng.hpp"
#include "irslab/scenario.hpp"

namespace irslab::monte_carlo {

/// Mean and standard error of a trial battery.
struct TrialAverage {
    double mean = 0.0;
    double std_error = 0.0;
    long trials = 0;
};

/// The instantaneous achievable rate log2{1 + P*g / (P*(kappa_t+kappa_r)*g + sigma_w^2)}
/// for a composite channel gain g = |effective channel|^2. The receiver phase
/// drift multiplies the composite coefficient by a unit-modulus factor and so
/// never changes g.
double rate_from_gain(double gain, const scenario::ScenarioParams& params);

/// Rate with compensated phase shifts theta_i = -(phi_IU,i + phi_SI,i): the
/// cascaded channel collapses to constant-magnitude vectors and only the IRS
/// phase errors remain, g = |alpha sqrt(mu_iu mu_si) sum_i e^{j theta_Ei} + h_su|^2.
double instantaneous_rate_compensated(int n, const scenario::ScenarioParams& params,
                                      const scenario::LinkBudget& budget,
                                      const hwi::PhaseErrorVector& errors);

/// Rate for an arbitrary phase-shift diagonal Phi (entries alpha * e^{j theta_i})
/// against the true per-element channel phases. Every |Phi_ii| must equal
/// params.alpha.
double instantaneous_rate_with_phi(const Eigen::VectorXcd& phi_diag,
                                   const channels::ChannelRealization& ch,
                                   const hwi::PhaseErrorVector& errors,
                                   const scenario::ScenarioParams& params);

using Sampler = std::function<double(rng::Engine&)>;

/// Sample mean and standard error of `sampler` over independent trials.
/// Trial i draws from stream.substream(i), so results are identical for any
/// worker count or execution order; the reduction uses pairwise summation.
TrialAverage average_rate(const Sampler& sampler, long trials, const rng::Stream& stream);

}  // namespace irslab::monte_carlo
