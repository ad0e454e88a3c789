#pragma once

#include <string>
#include <vector>

#include "spdc/spectral.hpp"

namespace spdc {

enum class TraceKind { g1_envelope, g2 };

// Real-valued function of delay with provenance metadata.
struct CorrelationTrace {
  std::vector<double> tau_fs;
  std::vector<double> values;  // [0, 1]
  TraceKind kind = TraceKind::g1_envelope;
  std::string source;
  double normalization = 0.0;  // pre-normalization peak / G1(0)
};

// Result of a width measurement.
struct FwhmResult {
  double width_fs = 0.0;
  bool multimodal = false;  // more than one contiguous above-half region
};

// Normalized first-order envelope
//   g1(tau) = |int |T(nu)|^2 e^{-i nu tau} dnu| / int |T(nu)|^2 dnu
// by trapezoidal quadrature; the carrier e^{-i Omega tau} is excluded.
// Throws numeric_error when |tau| exceeds the grid's resolvable delay
// (pi / dnu).
CorrelationTrace g1_envelope(const SpectralAmplitude& T,
                             const std::vector<double>& tau_fs);

// G2(tau) = |int T(nu) e^{-i nu tau} dnu|^2, normalized to unit peak over
// the requested delays.  The spectral phase of T participates.
CorrelationTrace g2(const SpectralAmplitude& T,
                    const std::vector<double>& tau_fs);

// Full width at half of the peak value with linear interpolation between
// bracketing samples; outermost half-crossings for multimodal traces.
// Throws numeric_error when the peak touches the array boundary.
FwhmResult fwhm(const CorrelationTrace& trace);

// int |T|^2 dnu by the same trapezoid rule (Parseval cross-check).
double spectral_power(const SpectralAmplitude& T);

// Oscillatory sums shared with the interferometry module: trapezoid
// quadrature of f(nu) e^{-i nu tau} over the grid, fixed summation order.
std::vector<std::complex<double>> fourier_sum(
    const DetuningGrid& grid, const std::vector<std::complex<double>>& f,
    const std::vector<double>& tau_fs);

}  // namespace spdc
