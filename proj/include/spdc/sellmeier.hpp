#pragma once

#include <string>
#include <utility>
#include <vector>

namespace spdc {

// One dispersion-formula coefficient set.  The only variant currently
// shipped is "sellmeier_offset_quadratic":
//   n^2(lambda) = A + B / (lambda^2 - C) + D * lambda^2,   lambda in um
// the form used by the Kato and Eimerl BBO fits.
struct SellmeierSet {
  std::string name;
  std::string formula_variant;
  std::vector<double> coefficients;
  std::pair<double, double> valid_range_nm{0.0, 0.0};

  // Refractive index at lambda [nm].  Throws domain_error outside
  // valid_range_nm and config_error for an unknown formula variant.
  double index(double lambda_nm) const;

  // Analytic dn/dlambda and d2n/dlambda2, lambda in um.
  double dn_dlambda_um(double lambda_nm) const;
  double d2n_dlambda2_um(double lambda_nm) const;

  void check_range(double lambda_nm) const;
};

// Parses {"name", "formula_variant", "coefficients", "valid_range_nm"}.
SellmeierSet load_sellmeier_json(const std::string& json_text);

// Reads a crystal data file holding {"ordinary": {...}, "extraordinary": {...}}.
std::pair<SellmeierSet, SellmeierSet> load_crystal_file(const std::string& path);

// Default data directory: $SPDC_DATA_DIR if set, else the shipped data/ dir.
std::string default_data_dir();

// n_o(lambda) for the ordinary ray.
double index_ordinary(double lambda_nm, const SellmeierSet& s);

// Angle-dependent extraordinary index from the uniaxial index ellipse,
//   1/n^2(theta) = cos^2(theta)/n_o^2 + sin^2(theta)/n_e^2,
// theta in degrees between wavevector and optic axis.
double index_extraordinary(double lambda_nm, double theta_deg,
                           const SellmeierSet& s_o, const SellmeierSet& s_e);

}  // namespace spdc
