#pragma once

namespace spdc {

// Internal unit system: length in micrometers, time in femtoseconds,
// angular frequency in rad/fs, wavenumber in rad/um.
inline constexpr double kSpeedOfLightUmPerFs = 0.299792458;
inline constexpr double kSpeedOfLightNmPerFs = 299.792458;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// omega [rad/fs] <-> lambda [nm]
inline double omega_from_nm(double lambda_nm) {
  return kTwoPi * kSpeedOfLightNmPerFs / lambda_nm;
}
inline double nm_from_omega(double omega) {
  return kTwoPi * kSpeedOfLightNmPerFs / omega;
}
inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace spdc
