#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "spdc/constants.hpp"
#include "spdc/crystal.hpp"
#include "spdc/errors.hpp"
#include "spdc/spectral.hpp"

using namespace spdc;

namespace {

constexpr double kD = 0.24749446076657924;   // fs/um
constexpr double kDpp = 0.09117042345311027; // fs^2/um
constexpr double kL = 2000.0;                // um
const double kOmega0 = omega_from_nm(702.2);

// Full width at half maximum of |T|^2, measured in signal wavelength.
double intensity_fwhm_nm(const SpectralAmplitude& T) {
  const std::size_t n = T.grid.size();
  double peak = 0.0;
  for (const auto& v : T.values) peak = std::max(peak, std::norm(v));
  const double half = 0.5 * peak;
  std::size_t lo = 0;
  while (lo < n && std::norm(T.values[lo]) < half) ++lo;
  std::size_t hi = n - 1;
  while (hi > 0 && std::norm(T.values[hi]) < half) --hi;
  REQUIRE(lo > 0);
  REQUIRE(hi < n - 1);
  auto cross = [&](std::size_t below, std::size_t above) {
    const double yb = std::norm(T.values[below]);
    const double ya = std::norm(T.values[above]);
    return T.grid.nu[below] +
           (half - yb) * (T.grid.nu[above] - T.grid.nu[below]) / (ya - yb);
  };
  const double nu_lo = cross(lo - 1, lo);
  const double nu_hi = cross(hi + 1, hi);
  return nm_from_omega(T.center_omega + nu_lo) -
         nm_from_omega(T.center_omega + nu_hi);
}

}  // namespace

TEST_CASE("symmetric grid has odd size and exact mirrors") {
  const DetuningGrid g = DetuningGrid::symmetric(0.5, 1000);
  CHECK(g.size() == 2001);
  CHECK(g.nu[1000] == 0.0);
  for (std::size_t k : {0u, 17u, 999u, 1500u}) {
    CHECK(g.nu[g.mirror(k)] == doctest::Approx(-g.nu[k]).epsilon(1e-15));
  }
  CHECK_THROWS_AS(DetuningGrid::symmetric(0.5, 100), config_error);
  CHECK_THROWS_AS(DetuningGrid::symmetric(-1.0, 4096), config_error);
}

TEST_CASE("sinc limit and zeros") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::fabs(sinc(kPi)) < 1e-12);
  CHECK(sinc(1e-10) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orthogonal-pair amplitude: shape, zeros, and phase") {
  const SpectralAmplitude T =
      build_type2(kD, kL, default_grid_type2(kD, kL), kOmega0);
  const std::size_t mid = T.grid.size() / 2;
  CHECK(std::abs(T.values[mid]) == doctest::Approx(1.0).epsilon(1e-12));
  // first zero at nu = 2 pi / (D L)
  const double nu1 = kTwoPi / (kD * kL);
  const auto k1 = static_cast<std::size_t>(
      std::llround(nu1 / T.grid.dnu)) + mid;
  CHECK(std::abs(T.values[k1]) < 1e-3);
  // |T| is even in nu
  for (std::size_t k : {mid / 2, mid / 3, mid + mid / 4}) {
    CHECK(std::abs(T.values[k]) ==
          doctest::Approx(std::abs(T.values[T.grid.mirror(k)])).epsilon(1e-12));
  }
  // phase is -nu D L / 2 where the amplitude is positive
  const double nu = T.grid.nu[mid + 40];
  const double expected_phase = -nu * kD * kL / 2.0;
  CHECK(std::arg(T.values[mid + 40]) ==
        doctest::Approx(expected_phase).epsilon(1e-9));
}

TEST_CASE("parallel-pair amplitude is even with quadratic phase") {
  const SpectralAmplitude T =
      build_type1(kDpp, kL, default_grid_type1(kDpp, kL), kOmega0);
  const std::size_t mid = T.grid.size() / 2;
  CHECK(std::abs(T.values[mid]) == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t k : {mid / 2, mid / 5, mid + mid / 3}) {
    CHECK(std::abs(T.values[k] - T.values[T.grid.mirror(k)]) < 1e-12);
  }
  const double nu = T.grid.nu[mid + 60];
  CHECK(std::arg(T.values[mid + 60]) ==
        doctest::Approx(-nu * nu * kDpp * kL / 2.0).epsilon(1e-9));
}

TEST_CASE("grid narrower than eight spectral zeros is rejected") {
  const DetuningGrid g = default_grid_type2(kD, kL, 4.0, 2048);
  CHECK_THROWS_AS(build_type2(kD, kL, g, kOmega0), config_error);
  const DetuningGrid g1 = default_grid_type1(kDpp, kL, 4.0, 2048);
  CHECK_THROWS_AS(build_type1(kDpp, kL, g1, kOmega0), config_error);
}

TEST_CASE("spectral bandwidths: narrow orthogonal, broad parallel") {
  const double w2 = intensity_fwhm_nm(
      build_type2(kD, kL, default_grid_type2(kD, kL), kOmega0));
  CHECK(w2 > 2.7);
  CHECK(w2 < 3.1);
  const double w1 = intensity_fwhm_nm(
      build_type1(kDpp, kL, default_grid_type1(kDpp, kL), kOmega0));
  CHECK(w1 > 62.0);
  CHECK(w1 < 67.0);
  CHECK(w1 / w2 > 20.0);
}

TEST_CASE("filter transmission conventions") {
  const FilterSpec g{702.2, 3.0, FilterShape::gaussian};
  CHECK(g.amplitude(702.2) == doctest::Approx(1.0));
  CHECK(g.amplitude(702.2 + 1.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g.intensity(702.2 + 1.5) == doctest::Approx(0.25).epsilon(1e-12));
  const FilterSpec r{702.2, 80.0, FilterShape::rectangular};
  CHECK(r.amplitude(702.2 + 39.9) == 1.0);
  CHECK(r.amplitude(702.2 + 40.1) == 0.0);
  CHECK(r.amplitude(702.2 - 40.1) == 0.0);
  const FilterSpec bad{702.2, -1.0, FilterShape::gaussian};
  CHECK_THROWS_AS(bad.amplitude(702.2), config_error);
}

TEST_CASE("filtering narrows the spectrum and renormalizes the peak") {
  const SpectralAmplitude T =
      build_type1(kDpp, kL, default_grid_type1(kDpp, kL), kOmega0);
  const FilterSpec f{702.2, 3.0, FilterShape::gaussian};
  const SpectralAmplitude Tf = apply_filters(T, f, f);
  double peak = 0.0;
  for (const auto& v : Tf.values) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(intensity_fwhm_nm(Tf) < intensity_fwhm_nm(T));
  const FilterSpec off{500.0, 1.0, FilterShape::rectangular};
  CHECK_THROWS_AS(apply_filters(T, off, off), config_error);
}

TEST_CASE("quadratic phase leaves the magnitude untouched") {
  const SpectralAmplitude T =
      build_type1(kDpp, kL, default_grid_type1(kDpp, kL), kOmega0);
  const SpectralAmplitude Tb = apply_quadratic_phase(T, 3000.0);
  for (std::size_t k = 0; k < T.grid.size(); k += 97) {
    CHECK(std::abs(Tb.values[k]) ==
          doctest::Approx(std::abs(T.values[k])).epsilon(1e-12));
  }
  const std::size_t k = T.grid.size() / 2 + 33;
  const double nu = T.grid.nu[k];
  CHECK(std::arg(Tb.values[k] / T.values[k]) ==
        doctest::Approx(std::remainder(-3000.0 * nu * nu, kTwoPi))
            .epsilon(1e-9));
}

TEST_CASE("filter coherence time") {
  CHECK(filter_coherence_time(702.2, 3.0) ==
        doctest::Approx(548.25).epsilon(1e-3));
  CHECK_THROWS_AS(filter_coherence_time(702.2, 0.0), domain_error);
}
