#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "spdc/constants.hpp"
#include "spdc/correlation.hpp"
#include "spdc/errors.hpp"
#include "spdc/interferometry.hpp"
#include "spdc/spectral.hpp"

using namespace spdc;

namespace {

SpectralAmplitude gaussian_amplitude(double sigma) {
  SpectralAmplitude T;
  T.grid = DetuningGrid::symmetric(10.0 * sigma, 4096);
  T.center_omega = omega_from_nm(702.2);
  T.values.resize(T.grid.size());
  for (std::size_t k = 0; k < T.grid.size(); ++k) {
    const double nu = T.grid.nu[k];
    T.values[k] = std::exp(-nu * nu / (2.0 * sigma * sigma));
  }
  return T;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] = a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1);
  }
  return v;
}

}  // namespace

TEST_CASE("michelson: unit rate at zero delay, fringes under the envelope") {
  const SpectralAmplitude T = gaussian_amplitude(0.05);
  const auto taus = linspace(-100.0, 100.0, 2001);  // 0.1 fs step
  const InterferencePattern p = michelson(T, taus);
  CHECK(p.rate[1000] == doctest::Approx(1.0).epsilon(1e-9));
  const CorrelationTrace g1t = g1_envelope(T, taus);
  for (std::size_t j = 0; j < taus.size(); ++j) {
    CHECK(p.envelope[j] == doctest::Approx(g1t.values[j]).epsilon(1e-12));
    CHECK(p.rate[j] <= 0.5 * (1.0 + p.envelope[j]) + 1e-12);
    CHECK(p.rate[j] >= 0.5 * (1.0 - p.envelope[j]) - 1e-12);
  }
  // half a carrier period from the center the fringe is near its minimum
  const double half_period = kPi / p.carrier_omega;
  const InterferencePattern q = michelson(T, {half_period});
  CHECK(q.rate[0] < 0.01);
}

TEST_CASE("michelson rejects a tau grid that aliases the carrier") {
  const SpectralAmplitude T = gaussian_amplitude(0.05);
  CHECK_THROWS_AS(michelson(T, linspace(-100.0, 100.0, 101)), config_error);
}

TEST_CASE("closed-form dip and peak") {
  const SpectralAmplitude T = gaussian_amplitude(0.05);
  const auto taus = linspace(-100.0, 100.0, 401);
  const InterferencePattern dip = hom_closed(T, taus, HomSign::minus);
  const InterferencePattern peak = hom_closed(T, taus, HomSign::plus);
  const CorrelationTrace g1x2 = g1_envelope(T, linspace(-200.0, 200.0, 401));
  for (std::size_t j = 0; j < taus.size(); ++j) {
    CHECK(dip.rate[j] ==
          doctest::Approx(0.5 * (1.0 - g1x2.values[j])).epsilon(1e-10));
    CHECK(peak.rate[j] + dip.rate[j] == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(rate_at_zero(dip) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rate_at_zero(peak) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(visibility(peak, dip) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("general analyzers reduce to the closed forms at 45 degrees") {
  const SpectralAmplitude T = gaussian_amplitude(0.05);
  const auto taus = linspace(-100.0, 100.0, 201);
  const InterferencePattern dip = hom_closed(T, taus, HomSign::minus);
  const InterferencePattern gen = hom_general(T, taus, 45.0, 45.0);
  const InterferencePattern peak = hom_closed(T, taus, HomSign::plus);
  const InterferencePattern genx = hom_general(T, taus, 45.0, -45.0);
  for (std::size_t j = 0; j < taus.size(); ++j) {
    CHECK(gen.rate[j] == doctest::Approx(dip.rate[j]).epsilon(1e-10));
    CHECK(genx.rate[j] == doctest::Approx(peak.rate[j]).epsilon(1e-10));
  }
}

TEST_CASE("one closed analyzer removes the interference") {
  const SpectralAmplitude T = gaussian_amplitude(0.05);
  const auto taus = linspace(-50.0, 50.0, 101);
  const InterferencePattern p = hom_general(T, taus, 0.0, 45.0);
  for (double r : p.rate) {
    CHECK(r == doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK_THROWS_AS(hom_general(T, taus, 0.0, 0.0), config_error);
  CHECK_THROWS_AS(hom_general(T, taus, 90.0, 90.0), config_error);
}

TEST_CASE("accidental subtraction restores the normalized trace") {
  const SpectralAmplitude T = gaussian_amplitude(0.05);
  const auto taus = linspace(-150.0, 150.0, 301);
  const InterferencePattern clean = hom_closed(T, taus, HomSign::minus);
  InterferencePattern noisy = clean;
  for (auto& r : noisy.rate) r = 0.3 + 0.8 * r;  // flat floor + lost contrast
  const InterferencePattern rec = subtract_accidentals(noisy, 0.3);
  for (std::size_t j = 0; j < taus.size(); ++j) {
    CHECK(rec.rate[j] == doctest::Approx(clean.rate[j]).epsilon(1e-9));
  }
  CHECK_THROWS_AS(subtract_accidentals(noisy, 0.8), config_error);
  CHECK_THROWS_AS(subtract_accidentals(noisy, -0.1), config_error);
}

TEST_CASE("visibility scaling about the baseline") {
  const SpectralAmplitude T = gaussian_amplitude(0.05);
  const auto taus = linspace(-150.0, 150.0, 301);
  const InterferencePattern dip = hom_closed(T, taus, HomSign::minus);
  const InterferencePattern v = scale_visibility(dip, 0.86);
  CHECK(rate_at_zero(v) == doctest::Approx(0.5 * (1.0 - 0.86)).epsilon(1e-9));
  CHECK(baseline(v) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK_THROWS_AS(scale_visibility(dip, 1.5), config_error);
}

TEST_CASE("visibility requires a shared tau grid") {
  const SpectralAmplitude T = gaussian_amplitude(0.05);
  const InterferencePattern a =
      hom_closed(T, linspace(-50.0, 50.0, 101), HomSign::plus);
  const InterferencePattern b =
      hom_closed(T, linspace(-40.0, 40.0, 81), HomSign::minus);
  CHECK_THROWS_AS(visibility(a, b), config_error);
}
