#include "spdc/interferometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "spdc/constants.hpp"
#include "spdc/errors.hpp"

// NOTES on hom_general.
//
// The two-photon detection amplitude behind the beamsplitter, with
// analyzers at theta1, theta2 and the pair state ∫ dnu T(nu) a_s+(Ω+nu)
// a_i+(Ω-nu) |0>, contains two interfering terms.  Writing u = t2 - t1,
// the carrier e^{-iΩ(t1+t2+tau)} is common to both and drops from |A|^2:
//   A(u) = ∫ dnu T(nu) [ w1 e^{i nu (tau - u)} - w2 e^{i nu (tau + u)} ],
//   w1 = sin(theta2) cos(theta1),  w2 = sin(theta1) cos(theta2).
// Integrating |A(u)|^2 over u collapses the direct terms onto
// (w1^2 + w2^2) ∫ |T|^2 dnu and the cross term onto the
// conjugate-frequency overlap ∫ T(nu) T*(-nu) e^{i 2 nu tau} dnu.
// For amplitudes whose spectral phase is even in nu (type-I, any
// quadratic dispersion phase) the overlap reduces to ∫ |S|^2 e^{i 2 nu
// tau} = G1(2 tau), recovering the closed form.  The type-II linear
// phase e^{-i nu D L / 2} shifts the envelope center to tau = D L / 2,
// which is the birth-order delay the experiment compensates before the
// beamsplitter; compensate with apply_quadratic_phase-style stripping
// (magnitude_only) or shift tau when comparing with hom_closed.

namespace spdc {

namespace {

std::vector<double> doubled(const std::vector<double>& tau_fs) {
  std::vector<double> t2(tau_fs.size());
  for (std::size_t j = 0; j < tau_fs.size(); ++j) t2[j] = 2.0 * tau_fs[j];
  return t2;
}

}  // namespace

InterferencePattern michelson(const SpectralAmplitude& T,
                              const std::vector<double>& tau_fs) {
  if (!(T.center_omega > 0.0)) {
    throw config_error("michelson needs a positive carrier frequency");
  }
  const double period = kTwoPi / T.center_omega;
  for (std::size_t j = 1; j < tau_fs.size(); ++j) {
    if (tau_fs[j] - tau_fs[j - 1] > period / 10.0) {
      throw config_error(
          "tau grid coarser than one-tenth of the carrier period (" +
          std::to_string(period) + " fs): fringes would alias");
    }
  }
  const CorrelationTrace g1 = g1_envelope(T, tau_fs);
  InterferencePattern p;
  p.tau_fs = tau_fs;
  p.mode = PatternMode::michelson;
  p.carrier_omega = T.center_omega;
  p.envelope = g1.values;
  p.rate.resize(tau_fs.size());
  for (std::size_t j = 0; j < tau_fs.size(); ++j) {
    p.rate[j] =
        0.5 * (1.0 + g1.values[j] * std::cos(T.center_omega * tau_fs[j]));
  }
  return p;
}

InterferencePattern hom_closed(const SpectralAmplitude& T,
                               const std::vector<double>& tau_fs,
                               HomSign sign) {
  const CorrelationTrace g1 = g1_envelope(T, doubled(tau_fs));
  InterferencePattern p;
  p.tau_fs = tau_fs;
  p.mode = PatternMode::hom_closed;
  p.analyzer_theta1_deg = 45.0;
  p.analyzer_theta2_deg = sign == HomSign::minus ? 45.0 : -45.0;
  p.envelope = g1.values;
  p.rate.resize(tau_fs.size());
  const double s = sign == HomSign::minus ? -1.0 : 1.0;
  for (std::size_t j = 0; j < tau_fs.size(); ++j) {
    p.rate[j] = 0.5 * (1.0 + s * g1.values[j]);
  }
  return p;
}

InterferencePattern hom_general(const SpectralAmplitude& T,
                                const std::vector<double>& tau_fs,
                                double theta1_deg, double theta2_deg) {
  const double t1 = deg_to_rad(theta1_deg), t2 = deg_to_rad(theta2_deg);
  const double w1 = std::sin(t2) * std::cos(t1);
  const double w2 = std::sin(t1) * std::cos(t2);
  const double direct = w1 * w1 + w2 * w2;
  if (!(direct > 1e-15)) {
    throw config_error(
        "analyzer settings block both two-photon amplitudes (no coincidences)");
  }
  // conjugate-frequency overlap f(nu) = T(nu) T*(-nu)
  std::vector<std::complex<double>> overlap(T.grid.size());
  for (std::size_t k = 0; k < T.grid.size(); ++k) {
    overlap[k] = T.values[k] * std::conj(T.values[T.grid.mirror(k)]);
  }
  // e^{i 2 nu tau} = e^{-i nu (-2 tau)}
  std::vector<double> minus2tau(tau_fs.size());
  for (std::size_t j = 0; j < tau_fs.size(); ++j) minus2tau[j] = -2.0 * tau_fs[j];
  const auto cross = fourier_sum(T.grid, overlap, minus2tau);
  const double norm = spectral_power(T);

  InterferencePattern p;
  p.tau_fs = tau_fs;
  p.mode = PatternMode::hom_general;
  p.analyzer_theta1_deg = theta1_deg;
  p.analyzer_theta2_deg = theta2_deg;
  p.rate.resize(tau_fs.size());
  p.envelope.resize(tau_fs.size());
  for (std::size_t j = 0; j < tau_fs.size(); ++j) {
    const double c = cross[j].real() / norm;
    p.rate[j] = 0.5 * (direct - 2.0 * w1 * w2 * c) / direct;
    p.envelope[j] = std::abs(cross[j]) / norm;
  }
  return p;
}

double visibility(const InterferencePattern& peak,
                  const InterferencePattern& dip) {
  if (peak.tau_fs != dip.tau_fs) {
    throw config_error("visibility: traces do not share a tau grid");
  }
  const double mx = rate_at_zero(peak);
  const double mn = rate_at_zero(dip);
  if (!(mx + mn > 0.0)) {
    throw numeric_error("visibility undefined: max + min = 0");
  }
  return (mx - mn) / (mx + mn);
}

double baseline(const InterferencePattern& pattern) {
  const std::size_t n = pattern.rate.size();
  if (n < 10) {
    throw config_error("trace too short for a baseline estimate");
  }
  const std::size_t wing = std::max<std::size_t>(1, n / 20);  // 5% per side
  double acc = 0.0;
  for (std::size_t j = 0; j < wing; ++j) {
    acc += pattern.rate[j] + pattern.rate[n - 1 - j];
  }
  return acc / static_cast<double>(2 * wing);
}

double rate_at_zero(const InterferencePattern& pattern) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < pattern.tau_fs.size(); ++j) {
    if (std::fabs(pattern.tau_fs[j]) < std::fabs(pattern.tau_fs[best])) {
      best = j;
    }
  }
  return pattern.rate[best];
}

InterferencePattern subtract_accidentals(const InterferencePattern& pattern,
                                         double accidental_level) {
  if (accidental_level < 0.0) {
    throw config_error("accidental level must be non-negative");
  }
  const double b = baseline(pattern);
  if (accidental_level >= b) {
    throw config_error("accidental level >= baseline: over-subtraction");
  }
  InterferencePattern out = pattern;
  const double scale = 0.5 / (b - accidental_level);
  for (auto& r : out.rate) {
    r = (r - accidental_level) * scale;
  }
  return out;
}

InterferencePattern scale_visibility(const InterferencePattern& pattern,
                                     double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw config_error("visibility scale factor must be in [0, 1]");
  }
  InterferencePattern out = pattern;
  for (auto& r : out.rate) r = 0.5 + v * (r - 0.5);
  for (auto& e : out.envelope) e *= v;
  return out;
}

}  // namespace spdc
