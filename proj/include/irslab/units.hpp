#pragma once

#include <cmath>
#include <stdexcept>

namespace irslab::units {

/// dBm -> watts. 30 dBm is 1 W by definition.
inline double dbm_to_watts(double x_dbm) {
    if (!std::isfinite(x_dbm)) throw std::invalid_argument("dbm_to_watts: non-finite input");
    return std::pow(10.0, (x_dbm - 30.0) / 10.0);
}

/// watts -> dBm; inverse of dbm_to_watts.
inline double watts_to_dbm(double x_w) {
    if (!std::isfinite(x_w) || x_w <= 0.0)
        throw std::invalid_argument("watts_to_dbm: input must be finite and positive");
    return 10.0 * std::log10(x_w) + 30.0;
}

/// dB -> linear power ratio.
inline double db_to_linear(double x_db) {
    if (!std::isfinite(x_db)) throw std::invalid_argument("db_to_linear: non-finite input");
    return std::pow(10.0, x_db / 10.0);
}

inline double linear_to_db(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::invalid_argument("linear_to_db: input must be finite and positive");
    return 10.0 * std::log10(x);
}

}  // namespace irslab::units
