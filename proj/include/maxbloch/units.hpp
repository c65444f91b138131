// Unit conventions: all angular frequencies and rates are stored in rad/s,
// times in s, lengths in cm (Gaussian-CGS).  Config files and reports use
// ordinary frequencies in GHz (nu = omega/2pi), times in ns, lengths in cm.
#pragma once

#include <numbers>

namespace maxbloch {

inline constexpr double kSpeedOfLight = 2.99792458e10;  // cm/s
inline constexpr double kHbar = 1.0546e-27;             // erg*s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double ghz_to_angular(double ghz) { return ghz * 1e9 * kTwoPi; }
inline constexpr double angular_to_ghz(double w) { return w / (1e9 * kTwoPi); }

inline constexpr double ns_to_s(double ns) { return ns * 1e-9; }
inline constexpr double s_to_ns(double s) { return s * 1e9; }

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace maxbloch
