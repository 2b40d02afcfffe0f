#pragma once

#include <Eigen/Dense>
#include <string>

#include "irslab/channels.hpp"
#include "irslab/hwi.hpp"
#include "irslab/monte_carlo.hpp"
#include "irslab/rng.hpp"
#include "irslab/scenario.hpp"
#include "irslab/sdp.hpp"

namespace irslab::optimizer {

/// The (N+1)-dimensional Hermitian matrix with the cascaded-channel quadratic
/// form in its top-left N x N block, the direct-link coupling on its borders
/// and an exactly zero bottom-right corner.
using XiMatrix = Eigen::MatrixXcd;

/// Per-realization quadratic form: for a = (theta^T, 1)^H the received signal
/// power is a^H Xi a + |h_su|^2.
XiMatrix build_xi(const channels::ChannelRealization& ch, const hwi::PhaseErrorVector& errors);

/// Expectation of build_xi over the IRS phase errors: the top-left block gains
/// the off-diagonal factor 4/pi^2 and the borders the factor 2/pi.
XiMatrix expected_xi(const channels::ChannelRealization& ch);

/// The lifted decision variable is a single PSD block of dimension N+2: the
/// (N+1)-dimensional Y plus the normalization scalar on an appended diagonal
/// slot, whose nonnegativity is exactly its PSD constraint. The variable is
/// expressed in units of p6_variable_scale so the solver sees O(1) data; the
/// objective value and the extracted X = Y / mu_tilde are unaffected.
sdp::SdpProblem build_p6(const XiMatrix& xi_bar, const scenario::ScenarioParams& params,
                         int n_elements);

/// Units factor between the solver-level lifted variable and the physical one:
/// mu_tilde = p6_variable_scale(...) * (bottom-right entry of the solved block).
double p6_variable_scale(const scenario::ScenarioParams& params,
                         const scenario::LinkBudget& budget);

/// The average received SNR achieved by a lifted matrix X (Hermitian, N+1):
/// P*(tr(Xi_bar X) + mu_su) / (P*(kappa_t+kappa_r)*(tr(Xi_bar X) + mu_su) + sigma_w^2).
double average_snr_for(const XiMatrix& xi_bar, const Eigen::MatrixXcd& x,
                       const scenario::ScenarioParams& params,
                       const scenario::LinkBudget& budget);

struct LiftedSolution {
    Eigen::MatrixXcd y;     // mu_tilde * X in physical units, (N+1)x(N+1)
    double mu_tilde = 0.0;
    Eigen::MatrixXcd x;     // Y / mu_tilde; bottom-right 1, top diagonal alpha^2
    Eigen::VectorXd theta;  // extracted phase shifts, radians
    bool rank1_certified = false;
    double eigen_ratio = 0.0;  // second largest / largest eigenvalue of Y
};

/// Recovers the phase vector from the (N+1)-th row of X = Y / mu_tilde,
/// reconstructs the rank-1 matrix it implies and certifies that it matches the
/// solver output. A failed certificate is reported, not thrown; theta then
/// falls back to the dominant eigenvector's phase pattern.
LiftedSolution extract_and_certify(const sdp::SdpSolution& sol, double mu_tilde, double alpha,
                                   double rank_tol = 1e-6);

struct OptimizeOutcome {
    LiftedSolution lifted;
    double objective_snr = 0.0;
    double objective_rate = 0.0;  // log2(1 + objective_snr)
    monte_carlo::TrialAverage mc_rate;
    sdp::SdpSolution sdp_solution;
};

/// Full pipeline: expected_xi -> build_p6 -> solve -> extract, then averages
/// the instantaneous rate with Phi = diag(theta) over fresh phase-error draws.
/// `ch` must have been sampled under `params`.
OptimizeOutcome optimize_and_evaluate(const channels::ChannelRealization& ch,
                                      const scenario::ScenarioParams& params, long trials,
                                      const rng::Stream& stream, double rank_tol = 1e-6);

/// CSV report row: N, objective value, certified flag, eigenvalue ratio, theta.
std::string format_report_row(int n_elements, const OptimizeOutcome& outcome);

}  // namespace irslab::optimizer
