#include "dnp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace dnp {

OffsetEstimate estimate_offset(std::span<const double> trace, int tail_points) {
  if (tail_points < 1 || tail_points >= static_cast<int>(trace.size()))
    throw std::invalid_argument("estimate_offset: tail_points must lie in [1, len)");
  const auto tail = trace.subspan(trace.size() - tail_points);
  const double mean = std::accumulate(tail.begin(), tail.end(), 0.0) / tail_points;
  double var = 0.0;
  for (double v : tail) var += (v - mean) * (v - mean);
  OffsetEstimate out;
  out.offset = mean;
  out.sigma = std::sqrt(var / tail_points);
  out.tail_points = tail_points;
  return out;
}

AreaResult signal_area(std::span<const double> trace, double offset,
                       double quanta_per_signal_unit) {
  if (!std::isfinite(offset)) throw std::invalid_argument("signal_area: offset must be finite");
  AreaResult out;
  for (double v : trace) out.raw_area += v - offset;
  out.quanta = out.raw_area * quanta_per_signal_unit;
  return out;
}

double initialization_correction(double quanta, const ResetModel& reset,
                                 double nuclear_register_factor) {
  reset.validate();
  const double factor = reset.p_eff() * nuclear_register_factor;
  if (!(factor > 0 && nuclear_register_factor <= 1.0 && nuclear_register_factor > 0))
    throw std::invalid_argument("initialization_correction: factors must lie in (0,1]");
  return quanta / factor;
}

OscillationEstimate extract_oscillation_frequency(std::span<const double> values,
                                                  double dt_seconds) {
  const int n = static_cast<int>(values.size());
  if (n < 4 || dt_seconds <= 0)
    throw std::invalid_argument("extract_oscillation_frequency: need >= 4 samples");
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;

  const int n_bins = n / 2;
  std::vector<double> power(n_bins + 1, 0.0);
  for (int k = 1; k <= n_bins; ++k) {
    std::complex<double> acc = 0.0;
    for (int m = 0; m < n; ++m)
      acc += (values[m] - mean) * std::exp(std::complex<double>(0, -kTwoPi * k * m / n));
    power[k] = std::norm(acc);
  }

  int k_peak = 1;
  for (int k = 2; k <= n_bins; ++k)
    if (power[k] > power[k_peak]) k_peak = k;

  std::vector<double> sorted(power.begin() + 1, power.end());
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];

  OscillationEstimate out;
  out.peak_power = power[k_peak];
  out.median_floor = median;
  out.significant = power[k_peak] > 0 && power[k_peak] >= 3.0 * median;

  // parabolic interpolation on log-power around the peak bin
  double shift = 0.0;
  if (k_peak > 1 && k_peak < n_bins && power[k_peak - 1] > 0 && power[k_peak + 1] > 0) {
    const double la = std::log(power[k_peak - 1]);
    const double lb = std::log(power[k_peak]);
    const double lc = std::log(power[k_peak + 1]);
    const double denom = la - 2 * lb + lc;
    if (denom < 0) shift = 0.5 * (la - lc) / denom;
  }
  out.frequency_hz = (k_peak + shift) / (n * dt_seconds);
  return out;
}

std::string PropiResult::to_json() const {
  nlohmann::json j;
  j["offset"] = offset;
  j["raw_area"] = raw_area;
  j["quanta"] = quanta;
  j["corrected_quanta"] = corrected_quanta;
  j["tail_sigma"] = tail_sigma;
  j["tail_points_used"] = tail_points_used;
  j["flags"] = flags;
  return j.dump();
}

PropiResult analyze_propi(const PropiRecord& record, int tail_points,
                          const ResetModel& reset, double nuclear_register_factor) {
  const std::vector<double> trace = record.phase_signal('M');
  if (static_cast<int>(trace.size()) <= tail_points)
    throw std::invalid_argument("analyze_propi: readout trace shorter than the tail");

  const OffsetEstimate off = estimate_offset(trace, tail_points);
  const AreaResult area = signal_area(trace, off.offset);

  PropiResult out;
  out.offset = off.offset;
  out.tail_sigma = off.sigma;
  out.tail_points_used = off.tail_points;
  out.raw_area = area.raw_area;
  out.quanta = area.quanta;
  out.corrected_quanta = initialization_correction(area.quanta, reset, nuclear_register_factor);

  // saturation gate; the reference scale keeps the diagnostic meaningful for
  // both zero and nonzero tail offsets
  double amplitude = std::abs(off.offset);
  for (double v : trace) amplitude = std::max(amplitude, std::abs(v - off.offset));
  if (amplitude > 0 && off.sigma / amplitude > 0.05) out.flags.push_back("unsaturated");
  return out;
}

}  // namespace dnp
