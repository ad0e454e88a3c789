#include "spdc/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "spdc/constants.hpp"
#include "spdc/errors.hpp"

namespace spdc {

namespace {

void check_tau_range(const DetuningGrid& grid,
                     const std::vector<double>& tau_fs) {
  if (tau_fs.empty()) {
    throw config_error("empty delay array");
  }
  const double tau_max = kPi / grid.dnu;
  for (double t : tau_fs) {
    if (std::fabs(t) > tau_max) {
      throw numeric_error("delay " + std::to_string(t) +
                          " fs exceeds the grid's resolvable range (" +
                          std::to_string(tau_max) + " fs)");
    }
  }
}

}  // namespace

std::vector<std::complex<double>> fourier_sum(
    const DetuningGrid& grid, const std::vector<std::complex<double>>& f,
    const std::vector<double>& tau_fs) {
  const std::size_t n = grid.size();
  std::vector<std::complex<double>> out(tau_fs.size());
  for (std::size_t j = 0; j < tau_fs.size(); ++j) {
    const double tau = tau_fs[j];
    // e^{-i nu_k tau} by stable recurrence along the uniform grid,
    // renormalized periodically; summation order is fixed (k ascending).
    const std::complex<double> step = std::polar(1.0, -grid.dnu * tau);
    std::complex<double> phase = std::polar(1.0, -grid.nu[0] * tau);
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
      acc += w * f[k] * phase;
      phase *= step;
      if ((k & 1023u) == 1023u) {
        phase = std::polar(1.0, -(grid.nu[0] + grid.dnu * double(k + 1)) * tau);
      }
    }
    out[j] = acc * grid.dnu;
  }
  return out;
}

double spectral_power(const SpectralAmplitude& T) {
  const std::size_t n = T.grid.size();
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    acc += w * std::norm(T.values[k]);
  }
  return acc * T.grid.dnu;
}

CorrelationTrace g1_envelope(const SpectralAmplitude& T,
                             const std::vector<double>& tau_fs) {
  check_tau_range(T.grid, tau_fs);
  std::vector<std::complex<double>> power(T.grid.size());
  for (std::size_t k = 0; k < power.size(); ++k) {
    power[k] = std::norm(T.values[k]);
  }
  const auto ft = fourier_sum(T.grid, power, tau_fs);
  const double norm = spectral_power(T);
  CorrelationTrace tr;
  tr.tau_fs = tau_fs;
  tr.kind = TraceKind::g1_envelope;
  tr.normalization = norm;
  tr.values.resize(tau_fs.size());
  for (std::size_t j = 0; j < tau_fs.size(); ++j) {
    tr.values[j] = std::min(1.0, std::abs(ft[j]) / norm);
  }
  return tr;
}

CorrelationTrace g2(const SpectralAmplitude& T,
                    const std::vector<double>& tau_fs) {
  check_tau_range(T.grid, tau_fs);
  const auto ft = fourier_sum(T.grid, T.values, tau_fs);
  CorrelationTrace tr;
  tr.tau_fs = tau_fs;
  tr.kind = TraceKind::g2;
  tr.values.resize(tau_fs.size());
  double peak = 0.0;
  for (std::size_t j = 0; j < tau_fs.size(); ++j) {
    tr.values[j] = std::norm(ft[j]);
    peak = std::max(peak, tr.values[j]);
  }
  if (!(peak > 0.0)) {
    throw numeric_error("G2 vanishes on the requested delay range");
  }
  tr.normalization = peak;
  for (auto& v : tr.values) v /= peak;
  return tr;
}

FwhmResult fwhm(const CorrelationTrace& trace) {
  const auto& y = trace.values;
  const auto& x = trace.tau_fs;
  if (y.size() < 3) {
    throw config_error("trace too short for a width measurement");
  }
  const std::size_t ipk =
      static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  if (ipk == 0 || ipk == y.size() - 1) {
    throw numeric_error("unresolved peak: maximum at the array boundary");
  }
  const double half = 0.5 * y[ipk];
  // outermost half-crossings
  std::size_t lo = 0;
  while (lo < y.size() && y[lo] < half) ++lo;
  std::size_t hi = y.size() - 1;
  while (hi > 0 && y[hi] < half) --hi;
  if (lo == 0 || hi == y.size() - 1) {
    throw numeric_error("unresolved peak: half level not reached inside range");
  }
  auto interp = [&](std::size_t below, std::size_t above) {
    return x[below] + (half - y[below]) * (x[above] - x[below]) /
                          (y[above] - y[below]);
  };
  const double xl = interp(lo - 1, lo);
  const double xr = interp(hi + 1, hi);
  // count contiguous above-half regions
  int regions = 0;
  bool in_region = false;
  for (double v : y) {
    const bool above = v >= half;
    if (above && !in_region) ++regions;
    in_region = above;
  }
  return FwhmResult{xr - xl, regions > 1};
}

}  // namespace spdc
