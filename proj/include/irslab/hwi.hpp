#pragma once

#include <Eigen/Dense>

#include "irslab/rng.hpp"
#include "irslab/scenario.hpp"

namespace irslab::hwi {

/// Per-element IRS phase errors, i.i.d. uniform on [-support, support].
/// The closed-form constants 2/pi and 4/pi^2 hold only for the default
/// support pi/2; other supports are accepted but void those constants.
struct PhaseErrorVector {
    Eigen::VectorXd theta;
    double support = 1.5707963267948966;  // pi/2

    int size() const { return static_cast<int>(theta.size()); }
};

/// Receiver local-oscillator phase, psi(t) ~ N(psi(t-1), delta_osc).
struct PhaseDriftState {
    double psi = 0.0;        // accumulated phase, psi(0) = 0
    double delta_osc = 0.0;  // per-step variance
};

/// Distortion-noise variances for unit-power symbols.
struct DistortionVariances {
    double upsilon_t_w = 0.0;  // transmitter side, kappa_t * P
    double v_r_w = 0.0;        // receiver side, kappa_r * P * |effective channel|^2
};

PhaseErrorVector sample_phase_errors(int n, rng::Engine& eng,
                                     double support = 1.5707963267948966);

PhaseDriftState advance_phase_drift(const PhaseDriftState& state, rng::Engine& eng);

DistortionVariances distortion_variances(const scenario::ScenarioParams& params,
                                         double composite_gain);

}  // namespace irslab::hwi
