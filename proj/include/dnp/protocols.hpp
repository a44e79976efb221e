#pragma once

// Polarization-cycle builders (NOVEL, ISE, DQT-NOVEL, DQT-ISE) and the PROPI
// experiment: N polarize cycles followed by M inverted readout cycles.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dnp/evolution.hpp"

namespace dnp {

enum class Direction { Up, Down };
enum class CenterOn { ExactResonance, Manual };

// default rectangular-pulse drive: Omega/2pi = 10 MHz
inline constexpr double kDefaultPulseOmega = kTwoPi * 10e6;
inline constexpr double kDefaultPiHalfDuration = (kPi / 2) / kDefaultPulseOmega;
inline constexpr double kDefaultPiDuration = kPi / kDefaultPulseOmega;

struct NovelParams {
  double rabi = 0.0;                // spin-lock Rabi frequency Omega_1 [rad/s]
  double lock_duration = 10e-6;     // [s]
  Direction polarize_direction = Direction::Up;
  double pi_half_duration = kDefaultPiHalfDuration;  // 0 selects ideal pulses
  Transition transition = Transition::ZeroToMinusOne;
};

struct IseParams {
  double f_range_hz = 10e6;  // swept MW frequency range [Hz]
  double duration = 30e-6;   // chirp duration [s]; fixes v = f_range / duration
  double rabi = 0.0;         // MW drive strength Omega_M [rad/s]
  CenterOn center_on = CenterOn::ExactResonance;
  double center_offset = 0.0;  // [rad/s], used with CenterOn::Manual
  Direction direction = Direction::Up;  // Down reverses the sweep
  Transition transition = Transition::ZeroToMinusOne;

  double sweep_rate_hz_per_s() const { return f_range_hz / duration; }
};

struct DqtCycleParams {
  std::variant<NovelParams, IseParams> base;  // lock or chirp parameters
  double omega_sqt = kTwoPi * 10e6;  // per-tone amplitude Omega_1 = Omega_-1 [rad/s]
  double Delta = kTwoPi * 40e6;      // common detuning from |0> [rad/s]
  double alpha = 1.0;                // amplitude factor
  double pi_pulse_duration = kDefaultPiDuration;  // framing |0><->|-1> pi pulses
  bool use_effective_model = false;  // evolve under the eliminated two-level frame

  // alpha that puts the effective DQ Rabi frequency on the Hartmann-Hahn match
  static double hh_alpha(const SpinSystem& system, double omega_sqt, double Delta);
};

using CycleParams = std::variant<NovelParams, IseParams, DqtCycleParams>;

struct Sequence {
  std::vector<ControlSegment> segments;
  std::vector<std::string> warnings;

  double total_duration() const;
};

Sequence build_novel_cycle(const NovelParams& params, const SpinSystem& system);
Sequence build_ise_cycle(const IseParams& params, const SpinSystem& system);
Sequence build_dqt_novel_cycle(const DqtCycleParams& params, const SpinSystem& system);
Sequence build_dqt_ise_cycle(const DqtCycleParams& params, const SpinSystem& system);
Sequence build_cycle(const CycleParams& params, const SpinSystem& system);

// applies every segment in order; readout markers are no-ops here
DensityState run_sequence(const DensityState& state, const Sequence& sequence,
                          const EvolutionContext& context);

struct PropiPlan {
  int n_polarize = 50;
  int m_readout = 200;
  CycleParams polarize_cycle;
  NovelParams readout_cycle;  // conventionally direction Down
  int tail_points = 30;
  // repetitions of the full N+M block executed (without recording) before the
  // recorded pass, bringing the bath to the periodic steady state of the
  // experiment's many-repetition average
  int warmup_reps = 0;
  // MW power fluctuations: per-cycle multiplicative amplitude jitter
  bool amplitude_jitter = false;
  double jitter_fraction = 0.05;
  std::uint64_t jitter_seed = 0;

  void validate() const;
};

struct PropiRow {
  int cycle_index = 0;  // 1-based within its phase
  char phase = 'N';     // 'N' polarize, 'M' readout
  double fluorescence = 0.0;
  double p0 = 0.0;
  double bath_total = 0.0;
  std::vector<double> per_nucleus;
};

struct PropiRecord {
  std::vector<PropiRow> rows;
  std::vector<double> initial_polarization;  // per nucleus, before any cycle
  double initial_total = 0.0;
  std::vector<std::string> warnings;
  DensityState final_state;

  std::vector<double> phase_signal(char phase) const;
  std::vector<double> phase_bath_total(char phase) const;
  std::string to_csv() const;
};

PropiRecord run_propi(const SpinSystem& system, const PropiPlan& plan,
                      const ResetModel& reset,
                      const std::optional<DensityState>& initial_bath = {});

struct BathPolarization {
  std::vector<double> per_nucleus;  // <I_z'> in [-1/2, +1/2]
  double total = 0.0;
};

BathPolarization bath_polarization(const DensityState& state);

}  // namespace dnp
