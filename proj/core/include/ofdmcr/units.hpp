#pragma once

#include <cmath>

namespace ofdmcr {

// The single dB <-> linear conversion point; everything below the CLI is linear.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline constexpr double kEulerGamma = 0.57721566490153286061;

}  // namespace ofdmcr
