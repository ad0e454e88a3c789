#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spdc/constants.hpp"
#include "spdc/crystal.hpp"
#include "spdc/errors.hpp"
#include "spdc/sellmeier.hpp"

using namespace spdc;

namespace {

const CrystalConfig& bbo() {
  static const CrystalConfig cfg = bbo_crystal(2000.0);
  return cfg;
}

// Frozen regression values for the shipped BBO data set.
constexpr double kNo702 = 1.6639626578376507;
constexpr double kNo351 = 1.7067515525152526;
constexpr double kTheta2 = 49.20527329445598;   // deg
constexpr double kTheta1 = 33.53270451052338;   // deg
constexpr double kD = 0.24749446076657924;      // fs/um
constexpr double kDpp = 0.09117042345311027;    // fs^2/um

}  // namespace

TEST_CASE("ordinary index regression values") {
  CHECK(index_ordinary(702.2, bbo().sellmeier_o) ==
        doctest::Approx(kNo702).epsilon(1e-12));
  CHECK(index_ordinary(351.1, bbo().sellmeier_o) ==
        doctest::Approx(kNo351).epsilon(1e-12));
}

TEST_CASE("index outside validity range throws") {
  CHECK_THROWS_AS(index_ordinary(2000.0, bbo().sellmeier_o), domain_error);
  CHECK_THROWS_AS(index_ordinary(100.0, bbo().sellmeier_o), domain_error);
}

TEST_CASE("extraordinary index interpolates between principal values") {
  const auto& c = bbo();
  const double no = index_ordinary(702.2, c.sellmeier_o);
  const double ne90 =
      index_extraordinary(702.2, 90.0, c.sellmeier_o, c.sellmeier_e);
  const double ne45 =
      index_extraordinary(702.2, 45.0, c.sellmeier_o, c.sellmeier_e);
  CHECK(index_extraordinary(702.2, 0.0, c.sellmeier_o, c.sellmeier_e) ==
        doctest::Approx(no).epsilon(1e-12));
  CHECK(ne90 == doctest::Approx(c.sellmeier_e.index(702.2)).epsilon(1e-12));
  CHECK(ne90 < ne45);
  CHECK(ne45 < no);  // negative uniaxial
  CHECK_THROWS_AS(
      index_extraordinary(702.2, 91.0, c.sellmeier_o, c.sellmeier_e),
      domain_error);
}

TEST_CASE("collinear phase-matching angles and fixed-point residuals") {
  const double t2 = solve_collinear_pm_angle(351.1, 702.2, PmType::type2, bbo());
  const double t1 = solve_collinear_pm_angle(351.1, 702.2, PmType::type1, bbo());
  CHECK(t2 == doctest::Approx(kTheta2).epsilon(1e-9));
  CHECK(t1 == doctest::Approx(kTheta1).epsilon(1e-9));
  CHECK(std::fabs(collinear_mismatch(t2, 351.1, PmType::type2, bbo())) < 1e-8);
  CHECK(std::fabs(collinear_mismatch(t1, 351.1, PmType::type1, bbo())) < 1e-8);
  CHECK(t1 < t2);
}

TEST_CASE("non-degenerate request is rejected") {
  CHECK_THROWS_AS(solve_collinear_pm_angle(351.1, 700.0, PmType::type2, bbo()),
                  config_error);
}

TEST_CASE("group-velocity difference anchor") {
  const double t2 = solve_collinear_pm_angle(351.1, 702.2, PmType::type2, bbo());
  const GroupParams gp = group_delay_mismatch(bbo(), 702.2, t2);
  CHECK(gp.D_fs_per_um == doctest::Approx(kD).epsilon(1e-10));
  CHECK(gp.D_fs_per_um > 0.0);
  CHECK(0.5 * gp.D_fs_per_um * bbo().length_um ==
        doctest::Approx(247.494).epsilon(1e-4));
}

TEST_CASE("group-velocity dispersion regression value") {
  const GroupParams gp = gvd(bbo(), 702.2, Polarization::ordinary, 0.0);
  CHECK(gp.Dpp_fs2_per_um == doctest::Approx(kDpp).epsilon(1e-10));
}

TEST_CASE("analytic wavenumber derivatives match finite differences") {
  const double omega = omega_from_nm(702.2);
  const double h = 1e-3;
  for (const auto pol : {Polarization::ordinary, Polarization::extraordinary}) {
    const double theta = pol == Polarization::ordinary ? 0.0 : kTheta2;
    auto K = [&](double w) { return wavenumber(w, pol, theta, bbo()); };
    // Richardson-extrapolated central differences.
    const double d1h = (K(omega + h) - K(omega - h)) / (2.0 * h);
    const double d1h2 =
        (K(omega + 0.5 * h) - K(omega - 0.5 * h)) / h;
    const double d1 = (4.0 * d1h2 - d1h) / 3.0;
    CHECK(wavenumber_d1(omega, pol, theta, bbo()) ==
          doctest::Approx(d1).epsilon(1e-8));
    const double d2h =
        (K(omega + h) - 2.0 * K(omega) + K(omega - h)) / (h * h);
    const double d2h2 = (K(omega + 0.5 * h) - 2.0 * K(omega) +
                         K(omega - 0.5 * h)) /
                        (0.25 * h * h);
    const double d2 = (4.0 * d2h2 - d2h) / 3.0;
    CHECK(wavenumber_d2(omega, pol, theta, bbo()) ==
          doctest::Approx(d2).epsilon(1e-6));
  }
}

TEST_CASE("missing data file names the path") {
  try {
    bbo_crystal(2000.0, "/nonexistent/dir");
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir") != std::string::npos);
  }
}

TEST_CASE("malformed dispersion data is rejected") {
  CHECK_THROWS_AS(load_sellmeier_json("not json"), config_error);
  CHECK_THROWS_AS(load_sellmeier_json(R"({"name":"x"})"), config_error);
  SellmeierSet s = bbo().sellmeier_o;
  s.formula_variant = "unknown";
  CHECK_THROWS_AS(s.index(702.2), config_error);
}

TEST_CASE("invalid crystal configuration is rejected") {
  CrystalConfig c = bbo();
  c.length_um = -1.0;
  CHECK_THROWS_AS(c.validate(), config_error);
}
