#include "spdc/sellmeier.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spdc/constants.hpp"
#include "spdc/errors.hpp"

namespace spdc {

namespace {

constexpr const char* kOffsetQuadratic = "sellmeier_offset_quadratic";

double lambda_um_checked(const SellmeierSet& s, double lambda_nm) {
  s.check_range(lambda_nm);
  return lambda_nm * 1e-3;
}

}  // namespace

void SellmeierSet::check_range(double lambda_nm) const {
  if (!(lambda_nm >= valid_range_nm.first &&
        lambda_nm <= valid_range_nm.second)) {
    std::ostringstream os;
    os << "wavelength " << lambda_nm << " nm outside valid range ["
       << valid_range_nm.first << ", " << valid_range_nm.second
       << "] nm of Sellmeier set '" << name << "'";
    throw domain_error(os.str());
  }
}

double SellmeierSet::index(double lambda_nm) const {
  if (formula_variant != kOffsetQuadratic) {
    throw config_error("unknown dispersion formula variant '" +
                       formula_variant + "'");
  }
  if (coefficients.size() != 4) {
    throw config_error("formula '" + formula_variant +
                       "' needs 4 coefficients, got " +
                       std::to_string(coefficients.size()));
  }
  const double l = lambda_um_checked(*this, lambda_nm);
  const double l2 = l * l;
  const double n2 = coefficients[0] + coefficients[1] / (l2 - coefficients[2]) +
                    coefficients[3] * l2;
  if (!(n2 > 1.0) || !std::isfinite(n2)) {
    throw numeric_error("n^2 <= 1 or non-finite at " +
                        std::to_string(lambda_nm) + " nm in set '" + name + "'");
  }
  return std::sqrt(n2);
}

double SellmeierSet::dn_dlambda_um(double lambda_nm) const {
  const double n = index(lambda_nm);
  const double l = lambda_nm * 1e-3;
  const double den = l * l - coefficients[2];
  const double dn2 = -2.0 * coefficients[1] * l / (den * den) +
                     2.0 * coefficients[3] * l;
  return dn2 / (2.0 * n);
}

double SellmeierSet::d2n_dlambda2_um(double lambda_nm) const {
  const double n = index(lambda_nm);
  const double np = dn_dlambda_um(lambda_nm);
  const double l = lambda_nm * 1e-3;
  const double den = l * l - coefficients[2];
  const double d2n2 = -2.0 * coefficients[1] / (den * den) +
                      8.0 * coefficients[1] * l * l / (den * den * den) +
                      2.0 * coefficients[3];
  // n'' = ((n^2)'' - 2 n'^2) / (2 n)
  return (d2n2 - 2.0 * np * np) / (2.0 * n);
}

SellmeierSet load_sellmeier_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("bad Sellmeier JSON: ") + e.what());
  }
  SellmeierSet s;
  try {
    s.name = j.at("name").get<std::string>();
    s.formula_variant = j.at("formula_variant").get<std::string>();
    s.coefficients = j.at("coefficients").get<std::vector<double>>();
    auto r = j.at("valid_range_nm").get<std::vector<double>>();
    if (r.size() != 2 || !(r[0] < r[1])) {
      throw config_error("valid_range_nm must be [min, max] with min < max");
    }
    s.valid_range_nm = {r[0], r[1]};
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("bad Sellmeier JSON: ") + e.what());
  }
  return s;
}

std::pair<SellmeierSet, SellmeierSet> load_crystal_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open Sellmeier data file: " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw config_error("bad crystal data file " + path + ": " + e.what());
  }
  if (!j.contains("ordinary") || !j.contains("extraordinary")) {
    throw config_error("crystal data file " + path +
                       " must contain 'ordinary' and 'extraordinary' sets");
  }
  return {load_sellmeier_json(j["ordinary"].dump()),
          load_sellmeier_json(j["extraordinary"].dump())};
}

std::string default_data_dir() {
  if (const char* env = std::getenv("SPDC_DATA_DIR")) {
    return env;
  }
#ifdef SPDC_DATA_DIR_DEFAULT
  return SPDC_DATA_DIR_DEFAULT;
#else
  return "data";
#endif
}

double index_ordinary(double lambda_nm, const SellmeierSet& s) {
  return s.index(lambda_nm);
}

double index_extraordinary(double lambda_nm, double theta_deg,
                           const SellmeierSet& s_o, const SellmeierSet& s_e) {
  if (!(theta_deg >= 0.0 && theta_deg <= 90.0)) {
    throw domain_error("propagation angle must be in [0, 90] degrees, got " +
                       std::to_string(theta_deg));
  }
  const double no = s_o.index(lambda_nm);
  const double ne = s_e.index(lambda_nm);
  const double th = deg_to_rad(theta_deg);
  const double c = std::cos(th), s = std::sin(th);
  return 1.0 / std::sqrt(c * c / (no * no) + s * s / (ne * ne));
}

}  // namespace spdc
