#pragma once

#include <string>

#include "spdc/sellmeier.hpp"

namespace spdc {

enum class Polarization { ordinary, extraordinary };
enum class PmType { type1, type2 };

// Uniaxial nonlinear crystal: thickness, cut, and the two dispersion sets.
struct CrystalConfig {
  double length_um = 2000.0;
  double cut_angle_deg = 0.0;  // optic axis vs surface normal
  SellmeierSet sellmeier_o;
  SellmeierSet sellmeier_e;

  void validate() const;
};

// Group-velocity parameters of a degenerate pair, evaluated at one
// wavelength / propagation angle.
struct GroupParams {
  double D_fs_per_um = 0.0;    // group-velocity difference (type-II)
  double Dpp_fs2_per_um = 0.0; // group-velocity dispersion (type-I)
  double evaluated_at_nm = 0.0;
  double evaluated_at_deg = 0.0;
};

// In-crystal wavenumber K(omega) [rad/um] for the given ray.  The e-ray
// index is evaluated at fixed theta (collinear approximation, no
// dtheta/domega term).
double wavenumber(double omega, Polarization pol, double theta_deg,
                  const CrystalConfig& cfg);

// dK/dOmega [fs/um] (group index over c), analytic.
double wavenumber_d1(double omega, Polarization pol, double theta_deg,
                     const CrystalConfig& cfg);

// d2K/dOmega2 [fs^2/um], analytic.
double wavenumber_d2(double omega, Polarization pol, double theta_deg,
                     const CrystalConfig& cfg);

// Type-II group-velocity difference D = dK_i/dOmega - dK_s/dOmega at the
// degenerate wavelength, signal = e-ray at theta_pm, idler = o-ray.
// Positive for BBO near 702.2 nm.
GroupParams group_delay_mismatch(const CrystalConfig& cfg,
                                 double lambda_degenerate_nm,
                                 double theta_pm_deg);

// Group-velocity dispersion D'' = d2K/dOmega2 for one ray.
GroupParams gvd(const CrystalConfig& cfg, double lambda_nm, Polarization pol,
                double theta_deg);

// Collinear degenerate phase-matching angle.  Solves Delta_k(theta) = 0 by
// bracketed root finding on theta in (0, 90) deg; the residual at the
// returned angle is below 1e-8 rad/um.
//   type-I :  K_e(theta, omega_p) - 2 K_o(omega_p / 2)
//   type-II:  K_e(theta, omega_p) - K_o(omega) - K_e(theta, omega)
double solve_collinear_pm_angle(double pump_lambda_nm,
                                double degenerate_lambda_nm, PmType pm_type,
                                const CrystalConfig& cfg);

// Collinear phase mismatch [rad/um] at a candidate angle (used to verify
// the fixed-point property of the solver).
double collinear_mismatch(double theta_deg, double pump_lambda_nm,
                          PmType pm_type, const CrystalConfig& cfg);

// Loads the shipped BBO configuration with the given thickness.
CrystalConfig bbo_crystal(double length_um = 2000.0,
                          const std::string& data_dir = default_data_dir());

}  // namespace spdc
