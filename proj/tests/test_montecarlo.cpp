#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "spdc/errors.hpp"
#include "spdc/montecarlo.hpp"

using namespace spdc;

namespace {

CountingConfig base_config() {
  CountingConfig cfg;
  cfg.pair_rate_hz = 5e6;
  cfg.singles_excess_rate_hz = 0.0;
  cfg.duration_s = 2e-3;
  cfg.rng_seed = 12345;
  return cfg;
}

double window_counts(const MCAHistogram& h, double lo_ns, double hi_ns) {
  double s = 0.0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double c = h.bin_center_ns(i);
    if (c >= lo_ns && c < hi_ns) s += static_cast<double>(h.counts[i]);
  }
  return s;
}

}  // namespace

TEST_CASE("identical seeds give bit-identical histograms") {
  CountingConfig cfg = base_config();
  cfg.singles_excess_rate_hz = 2e6;
  const MCAHistogram a = simulate_mca(cfg, 0.5);
  const MCAHistogram b = simulate_mca(cfg, 0.5);
  CHECK(a.counts == b.counts);
  CHECK(a.total_starts == b.total_starts);
  cfg.rng_seed = 54321;
  const MCAHistogram c = simulate_mca(cfg, 0.5);
  CHECK(a.counts != c.counts);
}

TEST_CASE("histogram counts are consistent with total_starts") {
  const CountingConfig cfg = base_config();
  const MCAHistogram h = simulate_mca(cfg, 1.0);
  const auto sum = std::accumulate(h.counts.begin(), h.counts.end(),
                                   std::uint64_t{0});
  CHECK(sum == h.total_starts);
}

TEST_CASE("nothing to detect leaves the histogram empty") {
  CountingConfig cfg = base_config();
  cfg.pair_rate_hz = 1e5;
  cfg.duration_s = 1e-3;
  // interference rate 0: pairs never split, so no correlated stops and a
  // negligibly small accidental floor at these rates
  const MCAHistogram h = simulate_mca(cfg, 0.0);
  const auto sum = std::accumulate(h.counts.begin(), h.counts.end(),
                                   std::uint64_t{0});
  CHECK(sum <= 3);
}

TEST_CASE("split pairs all land in the coincidence peak near the stop delay") {
  const CountingConfig cfg = base_config();
  const MCAHistogram h = simulate_mca(cfg, 1.0);
  const CoincidenceResult res = extract_coincidences(h, 3.0, 10.0);
  CHECK(res.peak_center_ns == doctest::Approx(25.0).epsilon(0.02));
  const double expected =
      cfg.pair_rate_hz * cfg.duration_s + predicted_accidentals(cfg, 1.0);
  CHECK(std::fabs(static_cast<double>(res.coincidence_counts) - expected) <
        5.0 * std::sqrt(expected));
  CHECK(res.accidental_counts < res.coincidence_counts / 10);
}

TEST_CASE("accidental floor matches R1 R2 W T over seeded repeats") {
  CountingConfig cfg;
  cfg.pair_rate_hz = 0.0;
  cfg.singles_excess_rate_hz = 2e6;
  cfg.duration_s = 5e-3;
  const double expected = predicted_accidentals(cfg, 0.0);
  CHECK(expected == doctest::Approx(2e6 * 2e6 * 3e-9 * 5e-3));
  double total = 0.0;
  const int runs = 20;
  for (int s = 0; s < runs; ++s) {
    cfg.rng_seed = 1000 + static_cast<std::uint64_t>(s);
    const MCAHistogram h = simulate_mca(cfg, 0.0);
    total += window_counts(h, 33.5, 36.5);  // 3 ns window away from the peak
  }
  const double mean = total / runs;
  const double sigma_of_mean = std::sqrt(expected / runs);
  CHECK(std::fabs(mean - expected) < 3.0 * sigma_of_mean);
}

TEST_CASE("flat floor with a delta peak integrates exactly") {
  MCAHistogram h;
  h.bin_width_ns = 0.1;
  h.range_ns = 60.0;
  h.counts.assign(600, 7);  // flat floor, 7 per bin
  h.counts[250] += 5000;    // spike at 25 ns
  h.total_starts = 0;
  for (auto c : h.counts) h.total_starts += c;
  const CoincidenceResult res = extract_coincidences(h, 3.0, 10.0);
  CHECK(res.peak_center_ns == doctest::Approx(25.05).epsilon(1e-9));
  CHECK(res.accidental_counts == 7 * 30);
  CHECK(res.coincidence_counts == 7 * 30 + 5000);
  CHECK(res.net_counts == doctest::Approx(5000.0));
}

TEST_CASE("window geometry errors") {
  MCAHistogram h;
  h.bin_width_ns = 0.1;
  h.range_ns = 60.0;
  h.counts.assign(600, 1);
  h.counts[580] += 100;  // peak at 58 ns: offset window would leave range
  CHECK_THROWS_AS(extract_coincidences(h, 3.0, 10.0), config_error);
  CHECK_THROWS_AS(extract_coincidences(h, 3.0, 2.0), config_error);
  MCAHistogram empty;
  CHECK_THROWS_AS(extract_coincidences(empty, 3.0, 10.0), config_error);
}

TEST_CASE("configuration validation") {
  CountingConfig cfg = base_config();
  cfg.pair_rate_hz = -1.0;
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = base_config();
  cfg.duration_s = 0.0;
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = base_config();
  cfg.pair_rate_hz = 1e12;  // > 1e9 expected events
  CHECK_THROWS_AS(cfg.validate(), config_error);
  cfg = base_config();
  CHECK_THROWS_AS(simulate_mca(cfg, 1.5), config_error);
  cfg = base_config();
  cfg.stop_delay_ns = 55.0;  // windows no longer fit in the range
  CHECK_THROWS_AS(cfg.validate(), config_error);
}

TEST_CASE("mean detector rate reflects pair splitting") {
  const CountingConfig cfg = base_config();
  CHECK(singles_rate_hz(cfg, 1.0) == doctest::Approx(cfg.pair_rate_hz));
  CHECK(singles_rate_hz(cfg, 0.0) == doctest::Approx(0.5 * cfg.pair_rate_hz));
}
