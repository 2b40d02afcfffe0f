#include "irslab/hwi.hpp"

#include <cmath>
#include <stdexcept>

namespace irslab::hwi {

PhaseErrorVector sample_phase_errors(int n, rng::Engine& eng, double support) {
    if (n < 1) throw std::invalid_argument("sample_phase_errors: need at least one element");
    if (!(support > 0.0) || !std::isfinite(support))
        throw std::invalid_argument("sample_phase_errors: support must be positive");
    PhaseErrorVector v;
    v.support = support;
    v.theta.resize(n);
    for (int i = 0; i < n; ++i) v.theta[i] = rng::uniform(eng, -support, support);
    return v;
}

PhaseDriftState advance_phase_drift(const PhaseDriftState& state, rng::Engine& eng) {
    if (state.delta_osc < 0.0)
        throw std::invalid_argument("advance_phase_drift: delta_osc must be nonnegative");
    PhaseDriftState next = state;
    if (state.delta_osc > 0.0) next.psi = rng::normal(eng, state.psi, state.delta_osc);
    return next;
}

DistortionVariances distortion_variances(const scenario::ScenarioParams& params,
                                         double composite_gain) {
    if (!(composite_gain >= 0.0))
        throw std::invalid_argument("distortion_variances: composite gain must be nonnegative");
    DistortionVariances v;
    v.upsilon_t_w = params.kappa_t * params.power_w;
    v.v_r_w = params.kappa_r * params.power_w * composite_gain;
    return v;
}

}  // namespace irslab::hwi
