#pragma once

#include <string>
#include <vector>

#include "spdc/correlation.hpp"
#include "spdc/crystal.hpp"
#include "spdc/spectral.hpp"

namespace spdc {

enum class Branch { signal, idler };

// Wavelength -> external emission angle map for one branch of the
// non-collinear type-I geometry (angles w.r.t. the pump axis, after Snell
// refraction at a flat exit face normal to the pump).
struct TuningCurve {
  std::vector<double> lambda_nm;
  std::vector<double> theta_ext_deg;  // signal branch >= 0, idler <= 0
  Branch branch = Branch::signal;

  // Linear interpolation; throws domain_error outside the sampled range.
  double theta_at(double lambda_nm_query) const;
};

// Collection aperture: hard top-hat in external angle.
struct ApertureGeometry {
  double center_angle_deg = 3.0;
  double distance_mm = 2800.0;
  double diameter_mm = 3.0;

  double half_acceptance_deg() const;
  bool accepts(double theta_ext_deg) const;
  void validate() const;
};

// Pair solution of the non-collinear momentum balance.
struct EmissionAngles {
  double theta_s_ext_deg = 0.0;  // photon at lambda_s, positive side
  double theta_i_ext_deg = 0.0;  // conjugate photon, negative side
  double residual_per_um = 0.0;  // transverse balance residual
};

// Detuning-resolved pair acceptance and the resulting post-selection
// summary.
struct PairWindow {
  std::vector<double> nu;      // rad/fs (signal-side detuning)
  std::vector<double> weight;  // w(nu) in [0, 1]
  double effective_pair_fwhm_nm = 0.0;
  double pair_fraction = 0.0;  // P(partner detectable | signal detected)
  double center_omega = 0.0;
};

// Energy-conserving partner wavelength 1 / (1/lambda_p - 1/lambda_s).
double conjugate_wavelength(double lambda_s_nm, double lambda_p_nm);

// Solves the non-collinear type-I momentum system
//   k_p = k_s cos(a_s) + k_i cos(a_i),   k_s sin(a_s) = k_i sin(a_i)
// (pump e-ray at pump_angle_to_axis, daughters o-rays) for the internal
// angles, then refracts to external angles.  Throws numeric_error when no
// real solution exists ("outside tuning range").
EmissionAngles emission_angles(double lambda_s_nm, double pump_lambda_nm,
                               const CrystalConfig& cfg,
                               double pump_angle_to_axis_deg);

// Pump-to-axis angle such that degenerate emission appears at
// +/-target_external_deg.
double calibrate_pump_angle(double target_external_deg, double pump_lambda_nm,
                            const CrystalConfig& cfg);

// Samples both branches over [lambda_min, lambda_max].
std::pair<TuningCurve, TuningCurve> compute_tuning_curve(
    double lambda_min_nm, double lambda_max_nm, std::size_t n_points,
    double pump_lambda_nm, const CrystalConfig& cfg,
    double pump_angle_to_axis_deg);

// w(nu) = A_s(theta_s(Omega+nu)) A_i(theta_i(Omega-nu)) T_s(nu) T_i(-nu)
// with top-hat angular acceptances and filter intensity transmissions;
// pair_fraction = ∫ w p_s / ∫ A_s T_s p_s with p_s = |S(nu)|^2 restricted
// to the signal aperture.  T supplies both the grid and |S|.
PairWindow pair_window(const TuningCurve& curve_s, const TuningCurve& curve_i,
                       const ApertureGeometry& ap_s,
                       const ApertureGeometry& ap_i, const FilterSpec& f_s,
                       const FilterSpec& f_i, const SpectralAmplitude& T);

// Applies sqrt(w) to |T|, renormalizes, and returns the post-selected
// two-photon dip envelope g1(2 tau).
CorrelationTrace predict_two_photon_envelope(const PairWindow& pw,
                                             const SpectralAmplitude& T,
                                             const std::vector<double>& tau_fs);

}  // namespace spdc
