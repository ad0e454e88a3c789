#include "spdc/tuning.hpp"

#include <algorithm>
#include <cmath>

#include "spdc/constants.hpp"
#include "spdc/errors.hpp"
#include "spdc/root_find.hpp"

namespace spdc {

namespace {

// Internal-to-external refraction at the flat exit face (normal along the
// pump axis): sin(theta_ext) = n sin(theta_int).
double refract_out_deg(double alpha_int_rad, double n) {
  const double s = n * std::sin(alpha_int_rad);
  if (s >= 1.0) {
    throw numeric_error("total internal reflection at the exit face");
  }
  return rad_to_deg(std::asin(s));
}

// Angle (magnitude) of the photon at lambda_nm in its pair, both internal
// and external; shared by both tuning-curve branches.
struct OneAngle {
  double alpha_int_rad;
  double theta_ext_deg;
  double partner_alpha_int_rad;
  double residual;
};

OneAngle solve_pair_angle(double lambda_s_nm, double pump_lambda_nm,
                          const CrystalConfig& cfg,
                          double pump_angle_to_axis_deg) {
  const double lambda_i_nm = conjugate_wavelength(lambda_s_nm, pump_lambda_nm);
  cfg.sellmeier_o.check_range(lambda_s_nm);
  cfg.sellmeier_o.check_range(lambda_i_nm);
  const double ws = omega_from_nm(lambda_s_nm);
  const double wi = omega_from_nm(lambda_i_nm);
  const double wp = omega_from_nm(pump_lambda_nm);
  const double ks = wavenumber(ws, Polarization::ordinary, 0.0, cfg);
  const double ki = wavenumber(wi, Polarization::ordinary, 0.0, cfg);
  const double kp =
      wavenumber(wp, Polarization::extraordinary, pump_angle_to_axis_deg, cfg);

  // Longitudinal balance at transverse-matched idler angle:
  //   f(a) = k_s cos a + sqrt(k_i^2 - (k_s sin a)^2) - k_p,
  // monotonically decreasing on [0, a_max].
  auto f = [&](double a) {
    const double t = ks * std::sin(a);
    const double rad = ki * ki - t * t;
    if (rad <= 0.0) return -kp;  // past the transverse limit
    return ks * std::cos(a) + std::sqrt(rad) - kp;
  };
  if (f(0.0) < 0.0) {
    throw numeric_error("outside tuning range: pair cannot conserve momentum");
  }
  const double a_max = std::min(0.5 * kPi, std::asin(std::min(1.0, ki / ks)));
  double hi = a_max;
  if (f(hi) > 0.0) {
    throw numeric_error("outside tuning range: no transverse-matched solution");
  }
  const double a = brent(f, 0.0, hi);
  const double ai = std::asin(ks * std::sin(a) / ki);
  const double n_s = index_ordinary(lambda_s_nm, cfg.sellmeier_o);
  return OneAngle{a, refract_out_deg(a, n_s), ai, f(a)};
}

double interp_sorted(const std::vector<double>& x, const std::vector<double>& y,
                     double q, const char* what) {
  if (x.size() < 2 || q < x.front() || q > x.back()) {
    throw domain_error(std::string(what) + ": wavelength " + std::to_string(q) +
                       " nm outside the sampled tuning range");
  }
  const auto it = std::upper_bound(x.begin(), x.end(), q);
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  const std::size_t i = j == x.size() ? j - 2 : j - 1;
  const double t = (q - x[i]) / (x[i + 1] - x[i]);
  return y[i] + t * (y[i + 1] - y[i]);
}

}  // namespace

double TuningCurve::theta_at(double lambda_nm_query) const {
  return interp_sorted(lambda_nm, theta_ext_deg, lambda_nm_query,
                       "tuning curve");
}

double ApertureGeometry::half_acceptance_deg() const {
  return rad_to_deg(std::atan(0.5 * diameter_mm / distance_mm));
}

bool ApertureGeometry::accepts(double theta_ext_deg) const {
  return std::fabs(theta_ext_deg - center_angle_deg) <= half_acceptance_deg();
}

void ApertureGeometry::validate() const {
  if (!(distance_mm > 0.0) || !(diameter_mm > 0.0)) {
    throw config_error("aperture distance and diameter must be positive");
  }
}

double conjugate_wavelength(double lambda_s_nm, double lambda_p_nm) {
  if (!(lambda_p_nm > 0.0) || !(lambda_s_nm > lambda_p_nm)) {
    throw domain_error(
        "conjugate wavelength undefined: need lambda_s > lambda_p > 0");
  }
  return 1.0 / (1.0 / lambda_p_nm - 1.0 / lambda_s_nm);
}

EmissionAngles emission_angles(double lambda_s_nm, double pump_lambda_nm,
                               const CrystalConfig& cfg,
                               double pump_angle_to_axis_deg) {
  const OneAngle s =
      solve_pair_angle(lambda_s_nm, pump_lambda_nm, cfg, pump_angle_to_axis_deg);
  const double lambda_i_nm = conjugate_wavelength(lambda_s_nm, pump_lambda_nm);
  const double n_i = index_ordinary(lambda_i_nm, cfg.sellmeier_o);
  EmissionAngles out;
  out.theta_s_ext_deg = s.theta_ext_deg;
  out.theta_i_ext_deg = -refract_out_deg(s.partner_alpha_int_rad, n_i);
  out.residual_per_um = s.residual;
  return out;
}

double calibrate_pump_angle(double target_external_deg, double pump_lambda_nm,
                            const CrystalConfig& cfg) {
  const double lambda_deg_nm = 2.0 * pump_lambda_nm;
  const double theta_collinear =
      solve_collinear_pm_angle(pump_lambda_nm, lambda_deg_nm, PmType::type1, cfg);
  auto g = [&](double theta_p) {
    return emission_angles(lambda_deg_nm, pump_lambda_nm, cfg, theta_p)
               .theta_s_ext_deg -
           target_external_deg;
  };
  const double lo = theta_collinear + 1e-7;
  const double hi = theta_collinear + rad_to_deg(0.2);
  return brent(g, lo, hi);
}

std::pair<TuningCurve, TuningCurve> compute_tuning_curve(
    double lambda_min_nm, double lambda_max_nm, std::size_t n_points,
    double pump_lambda_nm, const CrystalConfig& cfg,
    double pump_angle_to_axis_deg) {
  if (!(lambda_max_nm > lambda_min_nm) || n_points < 2) {
    throw config_error("tuning curve needs lambda_max > lambda_min and >= 2 points");
  }
  TuningCurve sig{{}, {}, Branch::signal};
  TuningCurve idl{{}, {}, Branch::idler};
  const double step = (lambda_max_nm - lambda_min_nm) /
                      static_cast<double>(n_points - 1);
  for (std::size_t j = 0; j < n_points; ++j) {
    const double lam = lambda_min_nm + step * static_cast<double>(j);
    double theta;
    try {
      theta = solve_pair_angle(lam, pump_lambda_nm, cfg, pump_angle_to_axis_deg)
                  .theta_ext_deg;
    } catch (const domain_error&) {
      continue;  // partner outside the dispersion data's validity range
    } catch (const numeric_error&) {
      continue;  // no phase-matched pair at this wavelength
    }
    sig.lambda_nm.push_back(lam);
    sig.theta_ext_deg.push_back(theta);
    idl.lambda_nm.push_back(lam);
    idl.theta_ext_deg.push_back(-theta);
  }
  if (sig.lambda_nm.size() < 2) {
    throw numeric_error("tuning curve empty over the requested range");
  }
  return {sig, idl};
}

PairWindow pair_window(const TuningCurve& curve_s, const TuningCurve& curve_i,
                       const ApertureGeometry& ap_s,
                       const ApertureGeometry& ap_i, const FilterSpec& f_s,
                       const FilterSpec& f_i, const SpectralAmplitude& T) {
  ap_s.validate();
  ap_i.validate();
  const std::size_t n = T.grid.size();
  PairWindow pw;
  pw.nu = T.grid.nu;
  pw.center_omega = T.center_omega;
  pw.weight.assign(n, 0.0);

  auto branch_accept = [](const TuningCurve& c, const ApertureGeometry& ap,
                          double lam) {
    try {
      return ap.accepts(c.theta_at(lam)) ? 1.0 : 0.0;
    } catch (const domain_error&) {
      return 0.0;  // off the sampled curve: never reaches the aperture
    }
  };

  std::vector<double> a_signal(n, 0.0);  // signal-arm acceptance alone
  for (std::size_t k = 0; k < n; ++k) {
    const double nu = T.grid.nu[k];
    const double om_s = T.center_omega + nu;
    const double om_i = T.center_omega - nu;
    if (om_s <= 0.0 || om_i <= 0.0) continue;
    const double lam_s = nm_from_omega(om_s);
    const double lam_i = nm_from_omega(om_i);
    const double as = branch_accept(curve_s, ap_s, lam_s) * f_s.intensity(lam_s);
    const double ai = branch_accept(curve_i, ap_i, lam_i) * f_i.intensity(lam_i);
    a_signal[k] = as;
    pw.weight[k] = as * ai;
  }

  // pair_fraction: probability that the partner of an accepted signal
  // photon is also accepted, weighted by the spectral density |T|^2.
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    const double p = std::norm(T.values[k]);
    num += w * pw.weight[k] * p;
    den += w * a_signal[k] * p;
  }
  if (!(den > 0.0)) {
    throw numeric_error("no signal photons pass the aperture and filter");
  }
  pw.pair_fraction = num / den;

  // Effective pair bandwidth: outermost half-maximum crossings of
  // w(nu) |T(nu)|^2, converted to signal wavelength.
  std::vector<double> y(n);
  double peak = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = pw.weight[k] * std::norm(T.values[k]);
    peak = std::max(peak, y[k]);
  }
  if (peak > 0.0) {
    const double half = 0.5 * peak;
    std::size_t lo = 0;
    while (lo < n && y[lo] < half) ++lo;
    std::size_t hi = n - 1;
    while (hi > 0 && y[hi] < half) --hi;
    auto cross_nu = [&](std::size_t below, std::size_t above) {
      if (std::fabs(y[above] - y[below]) < 1e-300) return T.grid.nu[above];
      return T.grid.nu[below] + (half - y[below]) *
                                    (T.grid.nu[above] - T.grid.nu[below]) /
                                    (y[above] - y[below]);
    };
    const double nu_lo = lo == 0 ? T.grid.nu.front() : cross_nu(lo - 1, lo);
    const double nu_hi = hi == n - 1 ? T.grid.nu.back() : cross_nu(hi + 1, hi);
    const double lam_lo = nm_from_omega(T.center_omega + nu_lo);
    const double lam_hi = nm_from_omega(T.center_omega + nu_hi);
    pw.effective_pair_fwhm_nm = std::fabs(lam_lo - lam_hi);
  }
  return pw;
}

CorrelationTrace predict_two_photon_envelope(const PairWindow& pw,
                                             const SpectralAmplitude& T,
                                             const std::vector<double>& tau_fs) {
  if (pw.nu.size() != T.grid.size()) {
    throw config_error("pair window and amplitude grids differ");
  }
  SpectralAmplitude post = T;
  for (std::size_t k = 0; k < post.values.size(); ++k) {
    post.values[k] = std::abs(post.values[k]) * std::sqrt(pw.weight[k]);
  }
  post.normalize_peak();
  std::vector<double> doubled(tau_fs.size());
  for (std::size_t j = 0; j < tau_fs.size(); ++j) doubled[j] = 2.0 * tau_fs[j];
  CorrelationTrace tr = g1_envelope(post, doubled);
  tr.tau_fs = tau_fs;
  tr.source = "post-selected two-photon envelope";
  return tr;
}

}  // namespace spdc
