#pragma once

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>

#include "irslab/rng.hpp"
#include "irslab/scenario.hpp"

namespace irslab::channels {

/// One draw of the three channels h_SI, h_IU, h_SU in polar form. Sampled
/// realizations have constant per-element magnitude sqrt(mu); amplitudes only
/// deviate from that after an additive perturbation re-extracts them.
struct ChannelRealization {
    int n = 0;
    double mu_iu = 0.0, mu_si = 0.0, mu_su = 0.0;  // nominal link-budget attenuations
    Eigen::VectorXd phi_iu, phi_si;                // per-element phases, radians
    double phi_su = 0.0;
    Eigen::VectorXd amp_iu, amp_si;                // per-element magnitudes
    double amp_su = 0.0;

    std::complex<double> h_su() const {
        return std::polar(amp_su, phi_su);
    }
    Eigen::VectorXcd h_iu() const;
    Eigen::VectorXcd h_si() const;
};

/// Diagonalized channels used by the optimizer: D_IU = diag(h_IU),
/// D_SI = diag(h_SI), plus the scalar direct link.
struct CascadedDiagonals {
    Eigen::VectorXcd d_iu;
    Eigen::VectorXcd d_si;
    std::complex<double> h_su;
};

/// Draws element phases i.i.d. uniform on [0, 2*pi); magnitudes come from the
/// link budget (deterministic-magnitude model). n_elements >= 1.
ChannelRealization sample_channels(const scenario::ScenarioParams& params, int n_elements,
                                   rng::Engine& eng);

CascadedDiagonals cascaded_diagonals(const ChannelRealization& ch);

/// CSV with columns index,phi_IU,phi_SI for cross-implementation tests.
void dump_csv(const ChannelRealization& ch, std::ostream& out);

/// Rebuilds a realization from dumped phases; magnitudes and the direct link
/// are taken from `params`.
ChannelRealization load_csv(std::istream& in, const scenario::ScenarioParams& params);

}  // namespace irslab::channels
