#pragma once

#include <cstdint>
#include <vector>

namespace spdc {

// Photon-counting scenario: correlated pairs plus uncorrelated excess
// singles on two detectors, start-stop interval analysis.
struct CountingConfig {
  double pair_rate_hz = 1e6;           // detected-pair generation rate
  double singles_excess_rate_hz = 0.0; // per detector, uncorrelated
  double window_ns = 3.0;              // coincidence window
  double accidental_offset_ns = 10.0;  // accidental window displacement
  double duration_s = 1e-3;
  double jitter_sigma_ns = 0.3;        // per-detector timing jitter
  double stop_delay_ns = 25.0;         // electronic delay in the stop channel
  double hist_range_ns = 60.0;
  double bin_width_ns = 0.1;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

// Histogram of start-stop time differences (t_stop + delay - t_start).
struct MCAHistogram {
  double bin_width_ns = 0.0;
  double range_ns = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total_starts = 0;  // recorded start-stop intervals

  double bin_center_ns(std::size_t i) const {
    return (static_cast<double>(i) + 0.5) * bin_width_ns;
  }
};

// Window sums around the located coincidence peak.
struct CoincidenceResult {
  double peak_center_ns = 0.0;
  std::uint64_t coincidence_counts = 0;  // peak window
  std::uint64_t accidental_counts = 0;   // displaced window, same width
  double net_counts = 0.0;               // coincidence - accidental
};

// Simulates the two-detector experiment and histograms every stop within
// hist_range_ns of every start (multi-stop).  interference_rate in [0, 1]
// is the normalized coincidence rate at the current delay: a pair splits
// between the detectors with that probability, otherwise both photons
// leave through one port (chosen 50/50) and register as a single count.
// Deterministic for a fixed seed, independent of hardware thread count.
MCAHistogram simulate_mca(const CountingConfig& cfg, double interference_rate);

// Locates the coincidence peak (5-bin moving average) and sums the window
// around it plus an accidental window displaced by offset_ns.  Throws
// config_error when the windows overlap or leave the histogram range.
CoincidenceResult extract_coincidences(const MCAHistogram& h, double window_ns,
                                       double offset_ns);

// Flat-floor expectation R1 * R2 * W * T for the accidental window.
double predicted_accidentals(const CountingConfig& cfg,
                             double interference_rate);

// Per-detector mean count rate implied by the scenario.
double singles_rate_hz(const CountingConfig& cfg, double interference_rate);

}  // namespace spdc
