#include "irslab/robustness.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "irslab/hwi.hpp"

namespace irslab::robustness {

namespace {

using std::complex;

void perturb_polar(double& amp, double& phi, const complex<double>& error) {
    const complex<double> perturbed = std::polar(amp, phi) + error;
    amp = std::abs(perturbed);
    phi = std::arg(perturbed);
}

}  // namespace

channels::ChannelRealization perturb_csi(const channels::ChannelRealization& ch,
                                         const CsiErrorModel& model, rng::Engine& eng) {
    if (!(model.error_variance_w >= 0.0))
        throw std::invalid_argument("perturb_csi: variance must be nonnegative");
    channels::ChannelRealization out = ch;
    if (model.error_variance_w == 0.0) return out;
    for (int i = 0; i < ch.n; ++i)
        perturb_polar(out.amp_si[i], out.phi_si[i],
                      rng::complex_normal(eng, model.error_variance_w));
    for (int i = 0; i < ch.n; ++i)
        perturb_polar(out.amp_iu[i], out.phi_iu[i],
                      rng::complex_normal(eng, model.error_variance_w));
    perturb_polar(out.amp_su, out.phi_su, rng::complex_normal(eng, model.error_variance_w));
    return out;
}

ImperfectCsiOutcome optimize_with_imperfect_csi(const channels::ChannelRealization& ch_true,
                                                const CsiErrorModel& model,
                                                const scenario::ScenarioParams& params,
                                                long trials, const rng::Stream& stream) {
    auto csi_eng = stream.fork(0x0c51).substream(0);
    const auto ch_estimated = perturb_csi(ch_true, model, csi_eng);

    const auto xi_bar = optimizer::expected_xi(ch_estimated);
    const auto p6 = optimizer::build_p6(xi_bar, params, ch_true.n);
    const auto sol = sdp::solve(p6);
    const auto budget = scenario::link_budget(params);
    const double c = optimizer::p6_variable_scale(params, budget);
    const double corner = sol.status == sdp::SolveStatus::optimal
                              ? sol.y(ch_true.n + 1, ch_true.n + 1).real()
                              : 0.0;
    ImperfectCsiOutcome out;
    out.lifted = optimizer::extract_and_certify(sol, c * corner, params.alpha);

    Eigen::VectorXcd phi(ch_true.n);
    for (int i = 0; i < ch_true.n; ++i) phi[i] = std::polar(params.alpha, out.lifted.theta[i]);
    out.rate = monte_carlo::average_rate(
        [&](rng::Engine& eng) {
            const auto errors = hwi::sample_phase_errors(ch_true.n, eng);
            return monte_carlo::instantaneous_rate_with_phi(phi, ch_true, errors, params);
        },
        trials, stream);
    return out;
}

monte_carlo::TrialAverage evaluate_with_residual_phase_noise(
    const Eigen::VectorXd& theta_opt, const channels::ChannelRealization& ch,
    const scenario::ScenarioParams& params, long trials, const rng::Stream& stream) {
    const int n = ch.n;
    if (theta_opt.size() != n)
        throw std::invalid_argument("evaluate_with_residual_phase_noise: theta length mismatch");
    return monte_carlo::average_rate(
        [&](rng::Engine& eng) {
            const auto errors = hwi::sample_phase_errors(n, eng);
            const auto noise = hwi::sample_phase_errors(n, eng);
            Eigen::VectorXcd phi(n);
            for (int i = 0; i < n; ++i)
                phi[i] = std::polar(params.alpha, theta_opt[i] + noise.theta[i]);
            return monte_carlo::instantaneous_rate_with_phi(phi, ch, errors, params);
        },
        trials, stream);
}

}  // namespace irslab::robustness
