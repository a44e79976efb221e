#include "dnp/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dnp {

namespace {

double max_a_perp(const SpinSystem& system) {
  double m = 0.0;
  for (const auto& n : system.nuclei) m = std::max(m, std::abs(n.a_perp));
  return m;
}

DriveSpec sqt_drive(Transition transition, double omega, double phase) {
  DriveSpec d;
  d.frame = DriveFrame::SqtRotating;
  d.sqt.which_transition = transition;
  d.sqt.Omega = omega;
  d.sqt.Delta = 0.0;
  d.sqt_phase = phase;
  return d;
}

DriveSpec dqt_drive(const DqtCycleParams& params, double effective_phase) {
  DriveSpec d;
  d.frame = params.use_effective_model ? DriveFrame::DqtEffective : DriveFrame::DqtInteraction;
  d.dqt.Omega_p1 = params.omega_sqt;
  d.dqt.Omega_m1 = params.omega_sqt;
  d.dqt.Delta = params.Delta;
  d.dqt.alpha = params.alpha;
  d.dqt.phase_p1 = effective_phase / 2;
  d.dqt.phase_m1 = effective_phase / 2;
  return d;
}

void append_sqt_pulse(Sequence& seq, Transition transition, double angle, double phase,
                      double duration) {
  if (duration <= 0) {
    seq.segments.push_back(
        ControlSegment::ideal_pulse(angle, sqt_drive(transition, 0.0, phase)));
  } else {
    // rectangular pulse: rotation angle = Omega * duration
    const double omega = angle / duration;
    seq.segments.push_back(
        ControlSegment::constant_drive(duration, sqt_drive(transition, omega, phase)));
  }
}

void append_dqt_pulse(Sequence& seq, const DqtCycleParams& params, double angle,
                      double effective_phase) {
  const double omega_eff =
      dqt_effective_rabi(params.omega_sqt, params.Delta, params.alpha);
  if (omega_eff <= 0)
    throw std::invalid_argument("dqt pulse: zero effective Rabi frequency");
  const double duration = angle / omega_eff;
  seq.segments.push_back(
      ControlSegment::constant_drive(duration, dqt_drive(params, effective_phase)));
}

void check_dqt_validity(const DqtCycleParams& params, Sequence& seq) {
  const double amp = std::sqrt(params.alpha) * params.omega_sqt;
  if (params.Delta > amp) return;
  if (params.use_effective_model)
    throw std::domain_error(
        "DqtCycleParams: Delta must exceed the drive amplitude in effective mode");
  seq.warnings.push_back("DQT effective-model validity violated (Delta <= drive amplitude)");
}

// one uniform jitter factor per cycle; MW amplitude fluctuation model
Sequence scaled_cycle(const Sequence& seq, double factor) {
  Sequence out = seq;
  for (auto& seg : out.segments) {
    if (seg.kind == SegmentKind::ConstantDrive || seg.kind == SegmentKind::Chirp ||
        seg.kind == SegmentKind::Wait)
      seg.drive = seg.drive.with_amplitude_scale(factor);
  }
  return out;
}

struct CompiledCycle {
  struct Step {
    enum class Kind { Unitary, Reset, Record } kind;
    Eigen::MatrixXcd u;
  };
  std::vector<Step> steps;
};

CompiledCycle compile_cycle(const Sequence& seq, const EvolutionContext& context) {
  CompiledCycle out;
  Eigen::MatrixXcd pending;
  bool have_pending = false;
  auto flush = [&] {
    if (have_pending) {
      out.steps.push_back({CompiledCycle::Step::Kind::Unitary, pending});
      have_pending = false;
    }
  };
  for (const auto& seg : seq.segments) {
    switch (seg.kind) {
      case SegmentKind::LaserReset:
        flush();
        out.steps.push_back({CompiledCycle::Step::Kind::Reset, {}});
        break;
      case SegmentKind::ReadoutMarker:
        flush();
        out.steps.push_back({CompiledCycle::Step::Kind::Record, {}});
        break;
      default: {
        if (seg.duration == 0 && seg.kind != SegmentKind::IdealPulse) break;
        const Eigen::MatrixXcd u = segment_unitary(*context.system, seg, context.chirp);
        if (have_pending)
          pending = u * pending;
        else {
          pending = u;
          have_pending = true;
        }
        break;
      }
    }
  }
  flush();
  return out;
}

}  // namespace

double DqtCycleParams::hh_alpha(const SpinSystem& system, double omega_sqt, double Delta) {
  return alpha_for_effective_rabi(system.nuclear_larmor(), omega_sqt, Delta);
}

double Sequence::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

Sequence build_novel_cycle(const NovelParams& params, const SpinSystem& system) {
  if (params.rabi < 0 || params.lock_duration <= 0 || params.pi_half_duration < 0)
    throw std::invalid_argument("NovelParams: invalid durations or drive");
  system.validate();

  Sequence seq;
  // lock axis fixed along y; a 180 degree phase change of both pi/2 pulses
  // inverts the pumping direction. Phase pi prepares the upper dressed state,
  // which exchanges with spin-down nuclei (pumping the bath up).
  const double phi0 = params.polarize_direction == Direction::Up ? kPi : 0.0;
  seq.segments.push_back(ControlSegment::laser_reset());
  append_sqt_pulse(seq, params.transition, kPi / 2, phi0, params.pi_half_duration);
  seq.segments.push_back(ControlSegment::constant_drive(
      params.lock_duration, sqt_drive(params.transition, params.rabi, kPi / 2)));
  append_sqt_pulse(seq, params.transition, kPi / 2, phi0, params.pi_half_duration);
  seq.segments.push_back(ControlSegment::readout_marker());

  const double a_perp = max_a_perp(system);
  if (a_perp > 0 && std::abs(params.rabi - system.nuclear_larmor()) > 10 * a_perp)
    seq.warnings.push_back("Hartmann-Hahn mismatch exceeds 10x the strongest a_perp");
  return seq;
}

Sequence build_ise_cycle(const IseParams& params, const SpinSystem& system) {
  if (params.f_range_hz <= 0 || params.duration <= 0)
    throw std::invalid_argument("IseParams: f_range and duration must be > 0");
  system.validate();

  Sequence seq;
  seq.segments.push_back(ControlSegment::laser_reset());

  // effective on-transition Rabi frequency of the drive: Omega = Omega_M / sqrt(2)
  const double omega = params.rabi / std::sqrt(2.0);
  const double center = params.center_on == CenterOn::Manual ? params.center_offset : 0.0;
  const double half = kPi * params.f_range_hz;  // 2pi * f_range / 2
  // sweeping from above to below the resonance pumps the bath up
  const double sign = params.direction == Direction::Up ? -1.0 : 1.0;
  seq.segments.push_back(ControlSegment::chirp(
      params.duration, sqt_drive(params.transition, omega, 0.0), center - sign * half,
      center + sign * half));
  seq.segments.push_back(ControlSegment::readout_marker());

  const double rate = kTwoPi * params.f_range_hz / params.duration;  // [rad/s^2]
  if (omega > 0 && adiabaticity_factor(omega, rate) < 0.1)
    seq.warnings.push_back("adiabaticity factor < 0.1: transfer will be negligible");
  const double a_perp = max_a_perp(system);
  if (a_perp > 0 && adiabaticity_factor(a_perp, rate) >= 1.0)
    seq.warnings.push_back("flip-flop transition is fully adiabatic at this sweep rate");
  return seq;
}

Sequence build_dqt_novel_cycle(const DqtCycleParams& params, const SpinSystem& system) {
  const auto* novel = std::get_if<NovelParams>(&params.base);
  if (novel == nullptr)
    throw std::invalid_argument("build_dqt_novel_cycle: base parameters must be NovelParams");
  if (novel->lock_duration < 0) throw std::invalid_argument("DqtCycleParams: bad lock duration");
  system.validate();

  Sequence seq;
  check_dqt_validity(params, seq);
  const double phi0 = novel->polarize_direction == Direction::Up ? kPi : 0.0;

  seq.segments.push_back(ControlSegment::laser_reset());
  append_sqt_pulse(seq, Transition::ZeroToMinusOne, kPi, 0.0, params.pi_pulse_duration);
  append_dqt_pulse(seq, params, kPi / 2, phi0);
  if (novel->lock_duration > 0)
    seq.segments.push_back(ControlSegment::constant_drive(
        novel->lock_duration, dqt_drive(params, kPi / 2)));
  append_dqt_pulse(seq, params, kPi / 2, phi0);
  append_sqt_pulse(seq, Transition::ZeroToMinusOne, kPi, 0.0, params.pi_pulse_duration);
  seq.segments.push_back(ControlSegment::readout_marker());
  return seq;
}

Sequence build_dqt_ise_cycle(const DqtCycleParams& params, const SpinSystem& system) {
  const auto* ise = std::get_if<IseParams>(&params.base);
  if (ise == nullptr)
    throw std::invalid_argument("build_dqt_ise_cycle: base parameters must be IseParams");
  if (ise->f_range_hz <= 0 || ise->duration <= 0)
    throw std::invalid_argument("IseParams: f_range and duration must be > 0");
  system.validate();

  Sequence seq;
  check_dqt_validity(params, seq);
  seq.segments.push_back(ControlSegment::laser_reset());
  append_sqt_pulse(seq, Transition::ZeroToMinusOne, kPi, 0.0, params.pi_pulse_duration);

  // Both tones sweep the stated per-tone range with Delta held fixed, so the
  // two-photon detuning delta covers twice that range.
  const double center = ise->center_on == CenterOn::Manual ? ise->center_offset : 0.0;
  const double half = kTwoPi * ise->f_range_hz;
  const double sign = ise->direction == Direction::Up ? 1.0 : -1.0;
  seq.segments.push_back(ControlSegment::chirp(ise->duration, dqt_drive(params, 0.0),
                                               center - sign * half, center + sign * half));

  append_sqt_pulse(seq, Transition::ZeroToMinusOne, kPi, 0.0, params.pi_pulse_duration);
  seq.segments.push_back(ControlSegment::readout_marker());
  return seq;
}

Sequence build_cycle(const CycleParams& params, const SpinSystem& system) {
  if (const auto* novel = std::get_if<NovelParams>(&params))
    return build_novel_cycle(*novel, system);
  if (const auto* ise = std::get_if<IseParams>(&params))
    return build_ise_cycle(*ise, system);
  const auto& dqt = std::get<DqtCycleParams>(params);
  if (std::holds_alternative<NovelParams>(dqt.base)) return build_dqt_novel_cycle(dqt, system);
  return build_dqt_ise_cycle(dqt, system);
}

DensityState run_sequence(const DensityState& state, const Sequence& sequence,
                          const EvolutionContext& context) {
  DensityState s = state;
  for (const auto& seg : sequence.segments) s = evolve_segment(s, seg, context);
  return s;
}

void PropiPlan::validate() const {
  if (n_polarize < 0) throw std::invalid_argument("PropiPlan: N must be >= 0");
  if (m_readout < 1) throw std::invalid_argument("PropiPlan: M must be >= 1");
  if (tail_points < 1 || tail_points >= m_readout)
    throw std::invalid_argument("PropiPlan: tail_points must lie in [1, M)");
  if (warmup_reps < 0) throw std::invalid_argument("PropiPlan: warmup_reps must be >= 0");
}

std::vector<double> PropiRecord::phase_signal(char phase) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.phase == phase) out.push_back(r.fluorescence);
  return out;
}

std::vector<double> PropiRecord::phase_bath_total(char phase) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.phase == phase) out.push_back(r.bath_total);
  return out;
}

std::string PropiRecord::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "cycle_index,phase,fluorescence,p0,bath_total_Iz";
  const std::size_t n = rows.empty() ? 0 : rows.front().per_nucleus.size();
  for (std::size_t j = 0; j < n; ++j) os << ",Iz_" << j;
  os << "\n";
  for (const auto& r : rows) {
    os << r.cycle_index << "," << r.phase << "," << r.fluorescence << "," << r.p0 << ","
       << r.bath_total;
    for (double v : r.per_nucleus) os << "," << v;
    os << "\n";
  }
  return os.str();
}

PropiRecord run_propi(const SpinSystem& system, const PropiPlan& plan,
                      const ResetModel& reset,
                      const std::optional<DensityState>& initial_bath) {
  plan.validate();
  system.validate();
  reset.validate();

  EvolutionContext context;
  context.system = &system;
  context.reset = reset;

  const Sequence polarize = build_cycle(plan.polarize_cycle, system);
  const Sequence readout = build_novel_cycle(plan.readout_cycle, system);

  DensityState state =
      initial_bath ? *initial_bath : DensityState::nv0_with_mixed_bath(system.n_nuclei());
  if (state.dim() != system.dim())
    throw std::invalid_argument("run_propi: initial state dimension mismatch");

  PropiRecord record;
  record.warnings = polarize.warnings;
  record.warnings.insert(record.warnings.end(), readout.warnings.begin(),
                         readout.warnings.end());
  {
    const BathPolarization p0 = bath_polarization(state);
    record.initial_polarization = p0.per_nucleus;
    record.initial_total = p0.total;
  }

  std::mt19937_64 jitter_rng(mix_seed(plan.jitter_seed, 0x6a69747465ULL));
  auto cycle_factor = [&]() {
    if (!plan.amplitude_jitter) return 1.0;
    const double u = static_cast<double>(jitter_rng() >> 11) * 0x1.0p-53;
    return 1.0 + plan.jitter_fraction * (2.0 * u - 1.0);
  };

  // cache the compiled propagators; with jitter on every cycle is rebuilt
  std::optional<CompiledCycle> polarize_cached, readout_cached;
  if (!plan.amplitude_jitter) {
    polarize_cached = compile_cycle(polarize, context);
    readout_cached = compile_cycle(readout, context);
  }

  auto apply = [&](const Sequence& seq, const std::optional<CompiledCycle>& cached,
                   char phase, int index, bool record_rows) {
    const CompiledCycle cycle =
        cached ? *cached : compile_cycle(scaled_cycle(seq, cycle_factor()), context);
    for (const auto& step : cycle.steps) {
      switch (step.kind) {
        case CompiledCycle::Step::Kind::Reset:
          state = laser_reset(state, reset);
          break;
        case CompiledCycle::Step::Kind::Unitary:
          state.rho = (step.u * state.rho * step.u.adjoint()).eval();
          break;
        case CompiledCycle::Step::Kind::Record: {
          if (!record_rows) break;
          PropiRow row;
          row.cycle_index = index;
          row.phase = phase;
          const NvPopulations pops = measure_nv(state);
          row.fluorescence = fluorescence(pops, 0.3, system.theta);
          row.p0 = pops.p_zero;
          const BathPolarization bp = bath_polarization(state);
          row.bath_total = bp.total;
          row.per_nucleus = bp.per_nucleus;
          record.rows.push_back(std::move(row));
          break;
        }
      }
    }
  };

  for (int w = 0; w < plan.warmup_reps; ++w) {
    for (int k = 1; k <= plan.n_polarize; ++k) apply(polarize, polarize_cached, 'N', k, false);
    for (int m = 1; m <= plan.m_readout; ++m) apply(readout, readout_cached, 'M', m, false);
  }
  for (int k = 1; k <= plan.n_polarize; ++k) apply(polarize, polarize_cached, 'N', k, true);
  for (int m = 1; m <= plan.m_readout; ++m) apply(readout, readout_cached, 'M', m, true);
  record.final_state = std::move(state);
  return record;
}

BathPolarization bath_polarization(const DensityState& state) {
  const int n = state.n_nuclei;
  const Eigen::Index bath = state.dim() / 3;
  BathPolarization out;
  out.per_nucleus.assign(n, 0.0);
  for (Eigen::Index idx = 0; idx < state.dim(); ++idx) {
    const double p = state.rho(idx, idx).real();
    const Eigen::Index b = idx % bath;
    for (int j = 0; j < n; ++j) {
      const bool down = (b >> (n - 1 - j)) & 1;
      out.per_nucleus[j] += p * (down ? -0.5 : 0.5);
    }
  }
  for (double v : out.per_nucleus) out.total += v;
  return out;
}

}  // namespace dnp
