#pragma once

#include <complex>
#include <string>
#include <vector>

namespace spdc {

// Uniform detuning grid, symmetric about nu = 0 (odd point count so the
// +/-nu mirror of every sample is on the grid).
struct DetuningGrid {
  std::vector<double> nu;  // rad/fs
  double dnu = 0.0;

  std::size_t size() const { return nu.size(); }
  // Index of the sample at -nu[k].
  std::size_t mirror(std::size_t k) const { return nu.size() - 1 - k; }

  // Symmetric grid spanning [-half_span, +half_span] with 2*n_half+1 points.
  static DetuningGrid symmetric(double half_span, std::size_t n_half);
};

enum class AmplitudeKind { type1, type2, custom };

// Complex biphoton spectral amplitude T(nu) = S(nu) P(nu) on a grid,
// peak-normalized to |T| <= 1.
struct SpectralAmplitude {
  DetuningGrid grid;
  std::vector<std::complex<double>> values;
  double center_omega = 0.0;  // Omega = Omega_p / 2, rad/fs
  AmplitudeKind kind = AmplitudeKind::custom;

  void normalize_peak();
};

enum class FilterShape { gaussian, rectangular };

// Spectral filter.  fwhm_nm is the full width at half maximum of the
// amplitude transmission (gaussian) or the full width of the passband
// (rectangular); see apply_filters for the convention.
struct FilterSpec {
  double center_nm = 0.0;
  double fwhm_nm = 0.0;
  FilterShape shape = FilterShape::gaussian;

  // Amplitude transmission at lambda [nm].
  double amplitude(double lambda_nm) const;
  // Intensity transmission = amplitude^2.
  double intensity(double lambda_nm) const;
};

// Type-II amplitude: S(nu) = sinc(nu D L / 2), with the phase-matching
// phase exp(-i Delta L / 2) = exp(-i nu D L / 2) folded in.
// Requires the grid to cover at least the first 8 zeros of S.
SpectralAmplitude build_type2(double D_fs_per_um, double L_um,
                              const DetuningGrid& grid, double center_omega);

// Type-I amplitude: S(nu) = sinc(nu^2 D'' L / 2), phase exp(-i nu^2 D'' L / 2).
SpectralAmplitude build_type1(double Dpp_fs2_per_um, double L_um,
                              const DetuningGrid& grid, double center_omega);

// Default grids: half-span = span_zeros first-zero spacings of S,
// 2*n_half+1 points.  Defaults match N = 16384-class resolution with a
// 16-zero half-span.
DetuningGrid default_grid_type2(double D_fs_per_um, double L_um,
                                double span_zeros = 16.0,
                                std::size_t n_half = 8192);
DetuningGrid default_grid_type1(double Dpp_fs2_per_um, double L_um,
                                double span_zeros = 8.0,
                                std::size_t n_half = 8192);

// Multiplies T by the signal-arm amplitude transmission at Omega+nu and the
// idler-arm one at Omega-nu, then re-normalizes to unit peak.
SpectralAmplitude apply_filters(const SpectralAmplitude& T,
                                const FilterSpec& f_signal,
                                const FilterSpec& f_idler);

// Multiplies by exp(-i beta nu^2); |T| is unchanged pointwise.
SpectralAmplitude apply_quadratic_phase(const SpectralAmplitude& T,
                                        double beta_fs2);

// Replaces values by their magnitudes (phase-free amplitude for the
// Fourier-pair oracles).
SpectralAmplitude magnitude_only(const SpectralAmplitude& T);

// lambda^2 / (c delta_lambda) [fs].
double filter_coherence_time(double center_nm, double delta_lambda_nm);

// sinc(x) = sin(x)/x with sinc(0) = 1.
double sinc(double x);

}  // namespace spdc
