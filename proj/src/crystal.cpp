#include "spdc/crystal.hpp"

#include <cmath>
#include <string>

#include "spdc/constants.hpp"
#include "spdc/errors.hpp"
#include "spdc/root_find.hpp"

namespace spdc {

void CrystalConfig::validate() const {
  if (!(length_um > 0.0)) {
    throw config_error("crystal length must be positive");
  }
  if (!(cut_angle_deg >= 0.0 && cut_angle_deg <= 90.0)) {
    throw config_error("cut angle must be in [0, 90] degrees");
  }
}

namespace {

struct IndexDerivs {
  double n, np, npp;  // n, dn/dlambda, d2n/dlambda2 (lambda in um)
};

IndexDerivs ray_index(double lambda_nm, Polarization pol, double theta_deg,
                      const CrystalConfig& cfg) {
  if (pol == Polarization::ordinary) {
    return {cfg.sellmeier_o.index(lambda_nm),
            cfg.sellmeier_o.dn_dlambda_um(lambda_nm),
            cfg.sellmeier_o.d2n_dlambda2_um(lambda_nm)};
  }
  // Index ellipse n(theta) = u^{-1/2}, u = cos^2/n_o^2 + sin^2/n_e^2.
  const double th = deg_to_rad(theta_deg);
  const double c2 = std::cos(th) * std::cos(th);
  const double s2 = std::sin(th) * std::sin(th);
  const IndexDerivs o = {cfg.sellmeier_o.index(lambda_nm),
                         cfg.sellmeier_o.dn_dlambda_um(lambda_nm),
                         cfg.sellmeier_o.d2n_dlambda2_um(lambda_nm)};
  const IndexDerivs e = {cfg.sellmeier_e.index(lambda_nm),
                         cfg.sellmeier_e.dn_dlambda_um(lambda_nm),
                         cfg.sellmeier_e.d2n_dlambda2_um(lambda_nm)};
  const double u = c2 / (o.n * o.n) + s2 / (e.n * e.n);
  const double up = -2.0 * c2 * o.np / (o.n * o.n * o.n) -
                    2.0 * s2 * e.np / (e.n * e.n * e.n);
  const double upp =
      -2.0 * c2 * (o.npp / (o.n * o.n * o.n) -
                   3.0 * o.np * o.np / (o.n * o.n * o.n * o.n)) -
      2.0 * s2 * (e.npp / (e.n * e.n * e.n) -
                  3.0 * e.np * e.np / (e.n * e.n * e.n * e.n));
  const double n = 1.0 / std::sqrt(u);
  const double n3 = n * n * n;
  const double n5 = n3 * n * n;
  const double np = -0.5 * n3 * up;
  const double npp = 0.75 * n5 * up * up - 0.5 * n3 * upp;
  return {n, np, npp};
}

}  // namespace

double wavenumber(double omega, Polarization pol, double theta_deg,
                  const CrystalConfig& cfg) {
  const double lambda_nm = nm_from_omega(omega);
  return ray_index(lambda_nm, pol, theta_deg, cfg).n * omega /
         kSpeedOfLightUmPerFs;
}

double wavenumber_d1(double omega, Polarization pol, double theta_deg,
                     const CrystalConfig& cfg) {
  const double lambda_nm = nm_from_omega(omega);
  const double lambda_um = lambda_nm * 1e-3;
  const IndexDerivs d = ray_index(lambda_nm, pol, theta_deg, cfg);
  // group index n_g = n - lambda dn/dlambda
  return (d.n - lambda_um * d.np) / kSpeedOfLightUmPerFs;
}

double wavenumber_d2(double omega, Polarization pol, double theta_deg,
                     const CrystalConfig& cfg) {
  const double lambda_nm = nm_from_omega(omega);
  const double lambda_um = lambda_nm * 1e-3;
  const IndexDerivs d = ray_index(lambda_nm, pol, theta_deg, cfg);
  const double c = kSpeedOfLightUmPerFs;
  return lambda_um * lambda_um * lambda_um * d.npp / (kTwoPi * c * c);
}

GroupParams group_delay_mismatch(const CrystalConfig& cfg,
                                 double lambda_degenerate_nm,
                                 double theta_pm_deg) {
  cfg.validate();
  const double omega = omega_from_nm(lambda_degenerate_nm);
  const double d_o = wavenumber_d1(omega, Polarization::ordinary, 0.0, cfg);
  const double d_e =
      wavenumber_d1(omega, Polarization::extraordinary, theta_pm_deg, cfg);
  GroupParams gp;
  gp.D_fs_per_um = d_o - d_e;  // idler = o-ray, signal = e-ray
  gp.evaluated_at_nm = lambda_degenerate_nm;
  gp.evaluated_at_deg = theta_pm_deg;
  if (!std::isfinite(gp.D_fs_per_um)) {
    throw numeric_error("non-finite group-velocity difference");
  }
  return gp;
}

GroupParams gvd(const CrystalConfig& cfg, double lambda_nm, Polarization pol,
                double theta_deg) {
  cfg.validate();
  const double omega = omega_from_nm(lambda_nm);
  GroupParams gp;
  gp.Dpp_fs2_per_um = wavenumber_d2(omega, pol, theta_deg, cfg);
  gp.evaluated_at_nm = lambda_nm;
  gp.evaluated_at_deg = theta_deg;
  if (!std::isfinite(gp.Dpp_fs2_per_um)) {
    throw numeric_error("non-finite group-velocity dispersion");
  }
  return gp;
}

double collinear_mismatch(double theta_deg, double pump_lambda_nm,
                          PmType pm_type, const CrystalConfig& cfg) {
  const double omega_p = omega_from_nm(pump_lambda_nm);
  const double omega = 0.5 * omega_p;
  const double kp =
      wavenumber(omega_p, Polarization::extraordinary, theta_deg, cfg);
  if (pm_type == PmType::type1) {
    return kp - 2.0 * wavenumber(omega, Polarization::ordinary, 0.0, cfg);
  }
  return kp - wavenumber(omega, Polarization::ordinary, 0.0, cfg) -
         wavenumber(omega, Polarization::extraordinary, theta_deg, cfg);
}

double solve_collinear_pm_angle(double pump_lambda_nm,
                                double degenerate_lambda_nm, PmType pm_type,
                                const CrystalConfig& cfg) {
  cfg.validate();
  if (std::fabs(degenerate_lambda_nm - 2.0 * pump_lambda_nm) >
      1e-6 * pump_lambda_nm) {
    throw config_error(
        "solve_collinear_pm_angle assumes degenerate operation "
        "(degenerate wavelength = 2 x pump wavelength)");
  }
  auto f = [&](double th) {
    return collinear_mismatch(th, pump_lambda_nm, pm_type, cfg);
  };
  const double lo = 1e-6, hi = 90.0 - 1e-6;
  if ((f(lo) > 0.0) == (f(hi) > 0.0)) {
    throw numeric_error(
        "no phase-matching solution: mismatch has no sign change on (0, 90) "
        "degrees");
  }
  const double th = brent(f, lo, hi, 1e-12);
  if (std::fabs(f(th)) >= 1e-8) {
    throw numeric_error("phase-matching residual above tolerance");
  }
  return th;
}

CrystalConfig bbo_crystal(double length_um, const std::string& data_dir) {
  CrystalConfig cfg;
  cfg.length_um = length_um;
  auto sets = load_crystal_file(data_dir + "/bbo.json");
  cfg.sellmeier_o = sets.first;
  cfg.sellmeier_e = sets.second;
  cfg.validate();
  return cfg;
}

}  // namespace spdc
