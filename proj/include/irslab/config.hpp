#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "irslab/scenario.hpp"

namespace irslab::config {

// Key-value text format mirroring the baseline parameter table. One
// `key = value` pair per line; `#` starts a comment; blank lines ignored.
// Keys not present fall back to the defaults; unknown keys are a hard error.
//
//   alpha        reflection amplitude            (unitless, (0,1])
//   P_dBm        transmit signal power           (dBm)
//   sigma_w2_dBm receiver noise power            (dBm)
//   zeta0_dB     path loss at reference distance (dB)
//   d0           reference distance              (m)
//   alpha_IU     path-loss exponent, IRS->UE
//   alpha_SI     path-loss exponent, source->IRS
//   alpha_SU     path-loss exponent, source->UE
//   phi_SU       direct-link phase shift         (rad)
//   kappa_t      transmitter distortion proportionality
//   kappa_r      receiver distortion proportionality
//   delta        oscillator quality
//   d_SI         source-IRS distance             (m)
//   d_IU         IRS-UE distance                 (m)
//   d_SU         source-UE distance (m); derived as hypot(d_SI, d_IU) if absent

/// Applies `key = value` lines from a stream on top of `base`.
scenario::ScenarioParams apply_config(std::istream& in, scenario::ScenarioParams base);

scenario::ScenarioParams load_config(const std::string& path, scenario::ScenarioParams base);

/// Applies `key=value` override strings (CLI flags) on top of `base`.
/// A preexisting d_SU survives unless explicitly overridden.
scenario::ScenarioParams apply_overrides(const std::vector<std::string>& overrides,
                                         scenario::ScenarioParams base);

/// Full CLI resolution: defaults, then the config file (may be empty), then
/// overrides. d_SU re-derives as hypot(d_SI, d_IU) unless either source sets
/// it explicitly.
scenario::ScenarioParams resolve_params(const std::string& config_path,
                                        const std::vector<std::string>& overrides);

/// The resolved parameter set as config-format lines, for CSV audit headers.
std::vector<std::pair<std::string, double>> resolved_entries(const scenario::ScenarioParams& p);

}  // namespace irslab::config
