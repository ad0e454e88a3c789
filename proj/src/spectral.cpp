#include "spdc/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "spdc/constants.hpp"
#include "spdc/errors.hpp"

namespace spdc {

double sinc(double x) {
  if (std::fabs(x) < 1e-8) {
    return 1.0 - x * x / 6.0;
  }
  return std::sin(x) / x;
}

DetuningGrid DetuningGrid::symmetric(double half_span, std::size_t n_half) {
  if (!(half_span > 0.0)) {
    throw config_error("detuning grid half-span must be positive");
  }
  if (2 * n_half + 1 < 1024) {
    throw config_error("detuning grid needs at least 1024 points");
  }
  DetuningGrid g;
  g.dnu = half_span / static_cast<double>(n_half);
  g.nu.resize(2 * n_half + 1);
  const std::ptrdiff_t nh = static_cast<std::ptrdiff_t>(n_half);
  for (std::ptrdiff_t k = -nh; k <= nh; ++k) {
    g.nu[static_cast<std::size_t>(k + nh)] = static_cast<double>(k) * g.dnu;
  }
  return g;
}

void SpectralAmplitude::normalize_peak() {
  double peak = 0.0;
  for (const auto& v : values) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0)) {
    throw numeric_error("spectral amplitude is identically zero");
  }
  for (auto& v : values) v /= peak;
}

double FilterSpec::amplitude(double lambda_nm) const {
  if (!(fwhm_nm > 0.0)) {
    throw config_error("filter FWHM must be positive");
  }
  if (!(lambda_nm > 0.0)) return 0.0;
  const double d = lambda_nm - center_nm;
  if (shape == FilterShape::rectangular) {
    return std::fabs(d) <= 0.5 * fwhm_nm ? 1.0 : 0.0;
  }
  const double ln2x4 = 4.0 * std::log(2.0);
  return std::exp(-ln2x4 * d * d / (fwhm_nm * fwhm_nm));
}

double FilterSpec::intensity(double lambda_nm) const {
  const double a = amplitude(lambda_nm);
  return a * a;
}

namespace {

void require_span(const DetuningGrid& grid, double first_zero,
                  const char* which) {
  if (grid.nu.empty() || grid.nu.back() < 8.0 * first_zero) {
    throw config_error(std::string("detuning grid too narrow for ") + which +
                       ": must cover at least the first 8 zeros of S(nu)");
  }
}

}  // namespace

SpectralAmplitude build_type2(double D_fs_per_um, double L_um,
                              const DetuningGrid& grid, double center_omega) {
  if (D_fs_per_um == 0.0 || !(L_um > 0.0)) {
    throw config_error("build_type2 requires D != 0 and L > 0");
  }
  const double DL = std::fabs(D_fs_per_um) * L_um;
  require_span(grid, kTwoPi / DL, "type-II S(nu)");
  SpectralAmplitude T;
  T.grid = grid;
  T.center_omega = center_omega;
  T.kind = AmplitudeKind::type2;
  T.values.resize(grid.size());
  const double half = D_fs_per_um * L_um / 2.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.nu[k] * half;
    T.values[k] = sinc(x) * std::polar(1.0, -x);
  }
  T.normalize_peak();
  return T;
}

SpectralAmplitude build_type1(double Dpp_fs2_per_um, double L_um,
                              const DetuningGrid& grid, double center_omega) {
  if (Dpp_fs2_per_um == 0.0 || !(L_um > 0.0)) {
    throw config_error("build_type1 requires D'' != 0 and L > 0");
  }
  const double a = std::fabs(Dpp_fs2_per_um) * L_um / 2.0;
  require_span(grid, std::sqrt(kPi / a), "type-I S(nu)");
  SpectralAmplitude T;
  T.grid = grid;
  T.center_omega = center_omega;
  T.kind = AmplitudeKind::type1;
  T.values.resize(grid.size());
  const double half = Dpp_fs2_per_um * L_um / 2.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.nu[k] * grid.nu[k] * half;
    T.values[k] = sinc(x) * std::polar(1.0, -x);
  }
  T.normalize_peak();
  return T;
}

DetuningGrid default_grid_type2(double D_fs_per_um, double L_um,
                                double span_zeros, std::size_t n_half) {
  const double nu0 = kTwoPi / (std::fabs(D_fs_per_um) * L_um);
  return DetuningGrid::symmetric(span_zeros * nu0, n_half);
}

DetuningGrid default_grid_type1(double Dpp_fs2_per_um, double L_um,
                                double span_zeros, std::size_t n_half) {
  const double nu0 = std::sqrt(kTwoPi / (std::fabs(Dpp_fs2_per_um) * L_um));
  return DetuningGrid::symmetric(span_zeros * nu0, n_half);
}

SpectralAmplitude apply_filters(const SpectralAmplitude& T,
                                const FilterSpec& f_signal,
                                const FilterSpec& f_idler) {
  SpectralAmplitude out = T;
  double max_trans = 0.0;
  for (std::size_t k = 0; k < out.grid.size(); ++k) {
    const double ws = T.center_omega + out.grid.nu[k];
    const double wi = T.center_omega - out.grid.nu[k];
    const double a_s =
        ws > 0.0 ? f_signal.amplitude(nm_from_omega(ws)) : 0.0;
    const double a_i = wi > 0.0 ? f_idler.amplitude(nm_from_omega(wi)) : 0.0;
    max_trans = std::max(max_trans, a_s * a_i);
    out.values[k] *= a_s * a_i;
  }
  if (!(max_trans > 1e-12)) {
    throw config_error("filter passband lies entirely outside the grid");
  }
  out.normalize_peak();
  return out;
}

SpectralAmplitude apply_quadratic_phase(const SpectralAmplitude& T,
                                        double beta_fs2) {
  SpectralAmplitude out = T;
  for (std::size_t k = 0; k < out.grid.size(); ++k) {
    const double nu = out.grid.nu[k];
    out.values[k] *= std::polar(1.0, -beta_fs2 * nu * nu);
  }
  return out;
}

SpectralAmplitude magnitude_only(const SpectralAmplitude& T) {
  SpectralAmplitude out = T;
  for (auto& v : out.values) v = std::abs(v);
  return out;
}

double filter_coherence_time(double center_nm, double delta_lambda_nm) {
  if (!(delta_lambda_nm > 0.0)) {
    throw domain_error("filter bandwidth must be positive");
  }
  return center_nm * center_nm / (kSpeedOfLightNmPerFs * delta_lambda_nm);
}

}  // namespace spdc
