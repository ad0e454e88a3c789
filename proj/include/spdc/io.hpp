#pragma once

#include <string>
#include <vector>

#include "spdc/correlation.hpp"
#include "spdc/interferometry.hpp"
#include "spdc/montecarlo.hpp"
#include "spdc/spectral.hpp"
#include "spdc/tuning.hpp"

namespace spdc::io {

inline constexpr int kSchemaVersion = 1;

// All writers are atomic: the payload goes to "<path>.tmp" and is renamed
// into place, so a crash never leaves a truncated file.  Failures throw
// config_error.

void write_text(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

void write_spectrum_csv(const std::string& path, const SpectralAmplitude& T);
void write_trace_csv(const std::string& path, const CorrelationTrace& tr);
void write_pattern_csv(const std::string& path, const InterferencePattern& p);
void write_tuning_csv(const std::string& path, const TuningCurve& sig,
                      const TuningCurve& idl);
void write_pair_window_csv(const std::string& path, const PairWindow& pw);
void write_histogram_csv(const std::string& path, const MCAHistogram& h);

// Simple polyline plot; y is auto-scaled, x/y labels go in the margins.
void write_svg(const std::string& path, const std::vector<double>& x,
               const std::vector<double>& y, const std::string& title,
               const std::string& x_label, const std::string& y_label);

}  // namespace spdc::io
