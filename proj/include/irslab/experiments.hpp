#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "irslab/scenario.hpp"

namespace irslab::experiments {

/// Thrown when a computed result violates a cross-checked invariant (e.g. a
/// failed rank-1 certificate); the CLI maps it to its own exit code.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentId { fig3a, fig3b, fig4, fig5, fig6a, fig6b, custom_sweep };

ExperimentId parse_experiment_id(const std::string& name);
const char* to_string(ExperimentId id);

enum class SweepAxis { elements, power_dbm };

struct ExperimentSpec {
    ExperimentId id = ExperimentId::fig3a;
    std::uint64_t seed = 1;
    long trials = 1000;
    std::string out_path;

    // custom-sweep settings
    SweepAxis axis = SweepAxis::elements;
    double sweep_from = 1.0;
    double sweep_to = 5000.0;
    double sweep_step = 1.0;
    long mc_every = 0;        // emit Monte Carlo columns every k grid points; 0 disables
    int fixed_elements = 256; // element count for power sweeps
};

/// Runs one experiment and writes its CSV. Every file carries an audit header
/// with the resolved parameter set and seed; identical spec and seed produce a
/// byte-identical file. On error the partial output is removed.
///
/// CSV layouts:
///   fig3a  N, rate_hwi, rate_ideal, rate_gap, mc_mean, mc_std_error
///          (Monte Carlo columns filled every 500 elements and at N=1)
///   fig3b  N, utility_hwi, utility_ideal, utility_gap
///   fig4   N, rate_compensated_cf, rate_compensated_mc, rate_compensated_mc_se,
///          rate_opt_objective, rate_opt_reconstructed, rate_opt_mc,
///          rate_opt_mc_se, rank1_certified, eigen_ratio
///          (plus <out>.thetas.csv with rows N, objective, certified, ratio, theta...)
///   fig5   N, variant, mean, std_error   (clean | imperfect_csi | residual_phase_noise)
///   fig6a  kappa_each, N, irs_rate, df_rate, irs_utility, df_utility
///   fig6b  kappa_each, P_dBm, irs_rate, df_rate, irs_utility, df_utility
///   custom-sweep (elements axis)   N, rate_hwi, rate_ideal, rate_gap, df_rate,
///                                  mc_mean, mc_std_error
///   custom-sweep (power_dbm axis)  P_dBm, rate_hwi, df_rate
void run(const ExperimentSpec& spec, const scenario::ScenarioParams& params);

}  // namespace irslab::experiments
