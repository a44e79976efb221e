#pragma once

// PROPI trace analysis: tail-offset estimation, signal-area integration and
// initialization correction yielding transferred spin-flip quanta.

#include <span>
#include <string>
#include <vector>

#include "dnp/protocols.hpp"

namespace dnp {

struct OffsetEstimate {
  double offset = 0.0;
  double sigma = 0.0;  // tail standard deviation, saturation diagnostic
  int tail_points = 0;
};

OffsetEstimate estimate_offset(std::span<const double> trace, int tail_points);

struct AreaResult {
  double raw_area = 0.0;  // signal * cycles
  double quanta = 0.0;    // spin-flip quanta (signed)
};

// quanta_per_signal_unit = 1 under the calibrated normalized signal, where a
// full NV flip in one readout contributes exactly one quantum
AreaResult signal_area(std::span<const double> trace, double offset,
                       double quanta_per_signal_unit = 1.0);

double initialization_correction(double quanta, const ResetModel& reset,
                                 double nuclear_register_factor = 1.0);

struct OscillationEstimate {
  double frequency_hz = 0.0;
  double peak_power = 0.0;
  double median_floor = 0.0;
  bool significant = false;  // peak power >= 3x the median spectral floor
};

// dominant nonzero frequency of a uniformly sampled series: mean removal,
// discrete Fourier transform, parabolic peak interpolation
OscillationEstimate extract_oscillation_frequency(std::span<const double> values,
                                                  double dt_seconds);

struct PropiResult {
  double offset = 0.0;
  double raw_area = 0.0;
  double quanta = 0.0;
  double corrected_quanta = 0.0;
  double tail_sigma = 0.0;
  int tail_points_used = 0;
  std::vector<std::string> flags;

  std::string to_json() const;
};

// offset + area + correction applied to the M (readout) phase of one run;
// tail sigma/mean > 0.05 flags the run "unsaturated"
PropiResult analyze_propi(const PropiRecord& record, int tail_points,
                          const ResetModel& reset, double nuclear_register_factor = 1.0);

}  // namespace dnp
