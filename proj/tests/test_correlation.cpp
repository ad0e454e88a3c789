#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "spdc/constants.hpp"
#include "spdc/correlation.hpp"
#include "spdc/errors.hpp"
#include "spdc/spectral.hpp"

using namespace spdc;

namespace {

// Gaussian amplitude |T| = exp(-nu^2 / (2 sigma^2)): every transform in
// this suite then has a closed form.
SpectralAmplitude gaussian_amplitude(double sigma, double span_sigmas = 10.0,
                                     std::size_t n_half = 4096) {
  SpectralAmplitude T;
  T.grid = DetuningGrid::symmetric(span_sigmas * sigma, n_half);
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

TEST_CASE("gaussian closed forms for g1 and g2") {
  const double sigma = 0.05;
  const SpectralAmplitude T = gaussian_amplitude(sigma);
  const auto taus = linspace(-80.0, 80.0, 161);
  // |T|^2 = exp(-nu^2/sigma^2)  ->  g1(tau) = exp(-sigma^2 tau^2 / 4)
  const CorrelationTrace g1t = g1_envelope(T, taus);
  // |FT of T|^2 normalized  ->  exp(-sigma^2 tau^2)
  const CorrelationTrace g2t = g2(T, taus);
  for (std::size_t j = 0; j < taus.size(); ++j) {
    const double t = taus[j];
    CHECK(g1t.values[j] ==
          doctest::Approx(std::exp(-sigma * sigma * t * t / 4.0))
              .epsilon(1e-6));
    CHECK(g2t.values[j] ==
          doctest::Approx(std::exp(-sigma * sigma * t * t)).epsilon(1e-6));
  }
}

TEST_CASE("g1 is even, bounded, and unity at zero delay") {
  const SpectralAmplitude T = gaussian_amplitude(0.03);
  const auto taus = linspace(-200.0, 200.0, 401);
  const CorrelationTrace tr = g1_envelope(T, taus);
  const std::size_t n = taus.size();
  for (std::size_t j = 0; j < n; ++j) {
    CHECK(tr.values[j] >= 0.0);
    CHECK(tr.values[j] <= 1.0);
    CHECK(tr.values[j] == doctest::Approx(tr.values[n - 1 - j]).epsilon(1e-9));
  }
  CHECK(tr.values[n / 2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("spectral power matches the analytic gaussian integral") {
  const double sigma = 0.04;
  const SpectralAmplitude T = gaussian_amplitude(sigma, 12.0);
  // int exp(-nu^2/sigma^2) dnu = sigma sqrt(pi)
  CHECK(spectral_power(T) ==
        doctest::Approx(sigma * std::sqrt(kPi)).epsilon(1e-10));
}

TEST_CASE("delays beyond the grid's resolvable range are rejected") {
  const SpectralAmplitude T = gaussian_amplitude(0.05);
  const double tau_max = kPi / T.grid.dnu;
  CHECK_THROWS_AS(g1_envelope(T, {2.0 * tau_max}), numeric_error);
  CHECK_THROWS_AS(g2(T, {-2.0 * tau_max}), numeric_error);
  CHECK_THROWS_AS(g1_envelope(T, {}), config_error);
}

TEST_CASE("fwhm of an analytic triangle") {
  const auto taus = linspace(-150.0, 150.0, 301);
  CorrelationTrace tr;
  tr.tau_fs = taus;
  tr.values.resize(taus.size());
  for (std::size_t j = 0; j < taus.size(); ++j) {
    tr.values[j] = std::max(0.0, 1.0 - std::fabs(taus[j]) / 100.0);
  }
  const FwhmResult w = fwhm(tr);
  CHECK(w.width_fs == doctest::Approx(100.0).epsilon(1e-9));
  CHECK_FALSE(w.multimodal);
}

TEST_CASE("fwhm flags multimodal traces and measures the outer crossings") {
  const auto taus = linspace(-10.0, 10.0, 2001);
  CorrelationTrace tr;
  tr.tau_fs = taus;
  tr.values.resize(taus.size());
  for (std::size_t j = 0; j < taus.size(); ++j) {
    const double t = taus[j];
    tr.values[j] = std::exp(-(t - 4.0) * (t - 4.0)) +
                   std::exp(-(t + 4.0) * (t + 4.0));
  }
  const FwhmResult w = fwhm(tr);
  CHECK(w.multimodal);
  CHECK(w.width_fs > 8.0);  // spans both lobes
}

TEST_CASE("fwhm rejects peaks cut by the array boundary") {
  const auto taus = linspace(0.0, 10.0, 101);
  CorrelationTrace tr;
  tr.tau_fs = taus;
  tr.values.resize(taus.size());
  for (std::size_t j = 0; j < taus.size(); ++j) {
    tr.values[j] = std::exp(-taus[j] * taus[j]);  // peak at the left edge
  }
  CHECK_THROWS_AS(fwhm(tr), numeric_error);
}

TEST_CASE("g2 peak normalization") {
  const SpectralAmplitude T = gaussian_amplitude(0.05);
  const auto taus = linspace(-60.0, 60.0, 121);
  const CorrelationTrace tr = g2(T, taus);
  double peak = 0.0;
  for (double v : tr.values) peak = std::max(peak, v);
  CHECK(peak == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tr.normalization > 0.0);
}

TEST_CASE("fourier_sum at zero delay equals the plain quadrature") {
  const SpectralAmplitude T = gaussian_amplitude(0.05);
  std::vector<std::complex<double>> power(T.grid.size());
  for (std::size_t k = 0; k < power.size(); ++k) {
    power[k] = std::norm(T.values[k]);
  }
  const auto at0 = fourier_sum(T.grid, power, {0.0});
  CHECK(at0[0].real() == doctest::Approx(spectral_power(T)).epsilon(1e-12));
  CHECK(std::fabs(at0[0].imag()) < 1e-15);
}
