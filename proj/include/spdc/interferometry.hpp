#pragma once

#include <string>
#include <vector>

#include "spdc/correlation.hpp"
#include "spdc/spectral.hpp"

namespace spdc {

enum class PatternMode { michelson, hom_closed, hom_general };
enum class HomSign { plus, minus };

// Normalized interference trace, baseline 1/2.
struct InterferencePattern {
  std::vector<double> tau_fs;
  std::vector<double> rate;      // [0, 1]
  std::vector<double> envelope;  // |g1| (michelson) or g1(2 tau) (hom)
  double analyzer_theta1_deg = 0.0;
  double analyzer_theta2_deg = 0.0;
  double carrier_omega = 0.0;  // rad/fs, michelson only
  PatternMode mode = PatternMode::michelson;
};

// Michelson single-count rate R_s = 1/2 {1 + g1(tau) cos(Omega tau)} with
// the carrier taken from T.center_omega.  Throws config_error when the tau
// grid is coarser than one-tenth of the carrier period (aliasing).
InterferencePattern michelson(const SpectralAmplitude& T,
                              const std::vector<double>& tau_fs);

// Closed-form Shih-Alley/Hong-Ou-Mandel rate R_c = 1/2 {1 +/- g1(2 tau)};
// minus = parallel analyzers at 45 deg (dip), plus = crossed (peak).
InterferencePattern hom_closed(const SpectralAmplitude& T,
                               const std::vector<double>& tau_fs,
                               HomSign sign);

// General analyzer angles.  Reduction of the double-time coincidence
// integral (see NOTES in the implementation): with projection weights
// w1 = sin(theta2)cos(theta1), w2 = sin(theta1)cos(theta2),
//   R_c(tau) ∝ (w1^2 + w2^2) ∫|T|^2 dnu
//             - 2 w1 w2 Re ∫ T(nu) T*(-nu) e^{i 2 nu tau} dnu,
// normalized to baseline 1/2.  At theta1 = theta2 = 45 deg this reproduces
// hom_closed(minus); at theta1 = -theta2 = 45 deg, hom_closed(plus).
InterferencePattern hom_general(const SpectralAmplitude& T,
                                const std::vector<double>& tau_fs,
                                double theta1_deg, double theta2_deg);

// V = (max - min) / (max + min) at tau = 0 from a peak and a dip trace
// sharing a tau grid.
double visibility(const InterferencePattern& peak,
                  const InterferencePattern& dip);

// Subtracts a flat accidental level and renormalizes so the far-wing
// baseline (outermost 10% of the tau range) returns to 1/2.
InterferencePattern subtract_accidentals(const InterferencePattern& pattern,
                                         double accidental_level);

// Rescales interference contrast about the 1/2 baseline:
// rate -> 1/2 + V (rate - 1/2).  Models sub-unit visibility as an input
// scale factor (mode mismatch etc. are not predicted).
InterferencePattern scale_visibility(const InterferencePattern& pattern,
                                     double v);

// Mean rate over the outermost 10% of the tau range (both ends).
double baseline(const InterferencePattern& pattern);

// Rate at the sample closest to tau = 0.
double rate_at_zero(const InterferencePattern& pattern);

}  // namespace spdc
