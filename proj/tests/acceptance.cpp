// Acceptance suite: one pass/fail line per criterion.
//
// Usage: acceptance [criterion ...]   (no arguments runs all ten)

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dnp/analysis.hpp"
#include "dnp/protocols.hpp"
#include "oracles.hpp"

using namespace dnp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

SpinSystem single_nucleus(double a_par, double a_perp, double field = 0.175) {
  SpinSystem s;
  s.field_tesla = field;
  BathNucleus n;
  n.a_par = a_par;
  n.a_perp = a_perp;
  s.nuclei.push_back(n);
  return s;
}

SpinSystem bath_from_tables(const double* a_perp_khz, const double* a_par_khz, int n) {
  SpinSystem s;
  s.field_tesla = 0.175;
  for (int i = 0; i < n; ++i) {
    BathNucleus nuc;
    nuc.a_perp = kTwoPi * a_perp_khz[i] * 1e3;
    nuc.a_par = kTwoPi * a_par_khz[i] * 1e3;
    s.nuclei.push_back(nuc);
  }
  return s;
}

// single polarize cycle from a maximally mixed bath; returns the net transfer
double cycle_transfer(const SpinSystem& system, const Sequence& seq, int cycles = 1) {
  EvolutionContext ctx;
  ctx.system = &system;
  DensityState state = DensityState::nv0_with_mixed_bath(system.n_nuclei());
  const double before = bath_polarization(state).total;
  for (int c = 0; c < cycles; ++c) state = run_sequence(state, seq, ctx);
  return bath_polarization(state).total - before;
}

int count_local_maxima(const std::vector<double>& y, double eps) {
  int n = 0;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] + eps && y[i] > y[i + 1] + eps) ++n;
  return n;
}

// Rabi sweep of criterion 1/2: transfer vs spin-lock Rabi frequency
void hartmann_hahn_sweep(std::vector<double>& rabi_hz, std::vector<double>& transfer) {
  const SpinSystem s = single_nucleus(0.0, kTwoPi * 50e3);
  for (double f = 1.0e6; f <= 2.8e6 + 1.0; f += 20e3) {
    NovelParams pol;
    pol.rabi = kTwoPi * f;
    pol.lock_duration = 10e-6;
    rabi_hz.push_back(f);
    transfer.push_back(cycle_transfer(s, build_novel_cycle(pol, s)));
  }
}

Outcome criterion1() {
  std::vector<double> rabi, transfer;
  hartmann_hahn_sweep(rabi, transfer);
  std::size_t imax = 0;
  for (std::size_t i = 1; i < transfer.size(); ++i)
    if (transfer[i] > transfer[imax]) imax = i;
  const double hh = PhysicalConstants{}.nuclear_larmor(0.175) / kTwoPi;
  const double err = std::abs(rabi[imax] - hh);
  Outcome out;
  out.pass = err <= 20e3 + 1.0;
  std::ostringstream os;
  os << "peak at " << rabi[imax] / 1e6 << " MHz, gamma_C*B/2pi = " << hh / 1e6
     << " MHz, |error| = " << err / 1e3 << " kHz (allowed 20 kHz)";
  out.detail = os.str();
  return out;
}

Outcome criterion2() {
  std::vector<double> rabi, transfer;
  hartmann_hahn_sweep(rabi, transfer);
  std::size_t imax = 0;
  for (std::size_t i = 1; i < transfer.size(); ++i)
    if (transfer[i] > transfer[imax]) imax = i;
  const double half = transfer[imax] / 2;
  std::size_t lo = imax, hi = imax;
  while (lo > 0 && transfer[lo] > half) --lo;
  while (hi + 1 < transfer.size() && transfer[hi] > half) ++hi;
  // linear interpolation of the half crossings
  auto cross = [&](std::size_t a, std::size_t b) {
    return rabi[a] + (rabi[b] - rabi[a]) * (half - transfer[a]) / (transfer[b] - transfer[a]);
  };
  const double fwhm = cross(hi - 1, hi) - cross(lo + 1, lo);
  Outcome out;
  out.pass = fwhm >= 50e3 && fwhm <= 300e3;
  std::ostringstream os;
  os << "FWHM = " << fwhm / 1e3 << " kHz (allowed 50-300 kHz)";
  out.detail = os.str();
  return out;
}

Outcome criterion3() {
  const double a_perp = kTwoPi * 30e3;
  const SpinSystem s = single_nucleus(0.0, a_perp);
  EvolutionContext ctx;
  ctx.system = &s;
  const double w0 = s.nuclear_larmor();
  const double dt = 2e-6;
  const int npts = 512;

  std::vector<double> sqt_trace, dqt_trace;
  for (int k = 0; k < npts; ++k) {
    const double lock = (k + 1) * dt;
    NovelParams pol;
    pol.rabi = std::hypot(w0, a_perp / 2);  // matched to the primed-frame Larmor
    pol.lock_duration = lock;
    DensityState st = DensityState::nv0_with_polarized_bath(1, false);
    st = run_sequence(st, build_novel_cycle(pol, s), ctx);
    sqt_trace.push_back(bath_polarization(st).total);

    DqtCycleParams d;
    NovelParams base;
    base.lock_duration = lock;
    d.base = base;
    d.alpha = alpha_for_effective_rabi(w0, d.omega_sqt, d.Delta);
    DensityState st2 = DensityState::nv0_with_polarized_bath(1, false);
    st2 = run_sequence(st2, build_dqt_novel_cycle(d, s), ctx);
    dqt_trace.push_back(bath_polarization(st2).total);
  }
  const auto f_sqt = extract_oscillation_frequency(sqt_trace, dt);
  const auto f_dqt = extract_oscillation_frequency(dqt_trace, dt);
  const double ratio = f_dqt.frequency_hz / f_sqt.frequency_hz;
  Outcome out;
  out.pass = f_sqt.significant && f_dqt.significant && ratio >= 1.90 && ratio <= 2.10;
  std::ostringstream os;
  os << "SQT " << f_sqt.frequency_hz / 1e3 << " kHz, DQT " << f_dqt.frequency_hz / 1e3
     << " kHz, ratio = " << ratio << " (allowed 2.00 +- 5%)";
  out.detail = os.str();
  return out;
}

Outcome criterion4() {
  const double a_perp[4] = {60, 45, 30, 20};
  const double a_par[4] = {24, -16, 10, -6};
  const SpinSystem s = bath_from_tables(a_perp, a_par, 4);

  NovelParams pol;
  pol.rabi = s.nuclear_larmor();
  pol.lock_duration = 13e-6;
  PropiPlan plan;
  plan.polarize_cycle = pol;
  plan.readout_cycle = pol;
  plan.readout_cycle.polarize_direction = Direction::Down;
  plan.n_polarize = 100;
  plan.m_readout = 100;
  plan.tail_points = 30;
  plan.warmup_reps = 1;  // periodic steady state of the repeated experiment

  const PropiRecord ideal = run_propi(s, plan, ResetModel::ideal());
  const auto sig_n = ideal.phase_signal('N');
  const auto sig_m = ideal.phase_signal('M');
  const auto area_n = signal_area(sig_n, estimate_offset(sig_n, 30).offset);
  const auto area_m = signal_area(sig_m, estimate_offset(sig_m, 30).offset);
  const double balance = std::abs(1.0 - area_n.quanta / area_m.quanta);

  const ResetModel defaults{};
  const PropiRecord imperfect = run_propi(s, plan, defaults);
  const double q_ideal = analyze_propi(ideal, 30, ResetModel::ideal()).corrected_quanta;
  const double q_corr = analyze_propi(imperfect, 30, defaults).corrected_quanta;
  const double recovery = std::abs(1.0 - q_corr / q_ideal);

  Outcome out;
  out.pass = balance <= 0.02 && recovery <= 0.05;
  std::ostringstream os;
  os << "N-area " << area_n.quanta << ", M-area " << area_m.quanta << " (|1-ratio| = "
     << balance << ", allowed 0.02); corrected " << q_corr << " vs ideal " << q_ideal
     << " (|1-ratio| = " << recovery << ", allowed 0.05)";
  out.detail = os.str();
  return out;
}

Outcome criterion5() {
  const double a_perp[5] = {85, 64, 48, 36, 27};
  const double a_par[5] = {40, -28, 19, -13, 9};
  const SpinSystem s = bath_from_tables(a_perp, a_par, 5);
  // every coupling magnitude >= 2 pi 10 kHz
  for (const auto& n : s.nuclei)
    if (n.coupling_magnitude() < kTwoPi * 10e3) return {false, "bath violates coupling floor"};

  NovelParams pol;
  pol.rabi = s.nuclear_larmor();
  pol.lock_duration = 13e-6;
  EvolutionContext ctx;
  ctx.system = &s;
  const Sequence seq = build_novel_cycle(pol, s);
  DensityState st = DensityState::nv0_with_mixed_bath(5);
  double p50 = 0, p199 = 0, p200 = 0;
  for (int c = 1; c <= 200; ++c) {
    st = run_sequence(st, seq, ctx);
    const double t = bath_polarization(st).total;
    if (c == 50) p50 = t;
    if (c == 199) p199 = t;
    if (c == 200) p200 = t;
  }
  const double ratio = p50 / p200;
  const double last_transfer = p200 - p199;
  Outcome out;
  out.pass = ratio >= 0.95 && last_transfer <= 1e-3;
  std::ostringstream os;
  os << "<I_z> at N=50: " << p50 << ", at N=200: " << p200 << " (ratio " << ratio
     << ", allowed >= 0.95); final per-cycle transfer " << last_transfer
     << " (allowed <= 1e-3)";
  out.detail = os.str();
  return out;
}

Outcome criterion6() {
  const double a_perp[3] = {60, 35, 20};
  const double a_par[3] = {14, -8, 5};
  const SpinSystem s = bath_from_tables(a_perp, a_par, 3);
  const double hh_drive = std::sqrt(2.0) * s.nuclear_larmor();

  // transfer vs inverse sweep rate over one decade, 20 cycles
  std::vector<double> vs_rate;
  for (int i = 0; i < 21; ++i) {
    const double duration = 1.5e-6 * std::pow(10.0, i / 20.0);
    IseParams p;
    p.f_range_hz = 10e6;
    p.duration = duration;
    p.rabi = hh_drive;
    vs_rate.push_back(cycle_transfer(s, build_ise_cycle(p, s), 20));
  }
  const int maxima_rate = count_local_maxima(vs_rate, 1e-3);

  // transfer vs drive amplitude below the dressed-gap cutoff
  std::vector<double> vs_amp;
  for (int i = 0; i < 25; ++i) {
    const double scale = 0.15 + 0.8 * i / 24.0;
    IseParams p;
    p.f_range_hz = 10e6;
    p.duration = 10e-6;
    p.rabi = scale * hh_drive;
    vs_amp.push_back(cycle_transfer(s, build_ise_cycle(p, s), 20));
  }
  const int maxima_amp = count_local_maxima(vs_amp, 1e-3);

  Outcome out;
  out.pass = maxima_rate >= 2 && maxima_amp >= 2;
  std::ostringstream os;
  os << maxima_rate << " local maxima vs 1/|v| and " << maxima_amp
     << " vs amplitude (allowed >= 2 each)";
  out.detail = os.str();
  return out;
}

// criterion 7 helper: 20 jittered ISE cycles, transfer from a mixed bath
double ise_transfer_jittered(const SpinSystem& s, double range_hz, double v_hz_per_s,
                             double drive_fraction, unsigned seed, bool dqt) {
  EvolutionContext ctx;
  ctx.system = &s;
  std::mt19937_64 rng(seed);
  DensityState st = DensityState::nv0_with_mixed_bath(s.n_nuclei());
  const double w0 = s.nuclear_larmor();
  for (int c = 0; c < 20; ++c) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double jitter = 1.0 + 0.05 * (2.0 * u - 1.0);
    Sequence seq;
    if (!dqt) {
      IseParams p;
      p.f_range_hz = range_hz;
      p.duration = range_hz / v_hz_per_s;
      p.rabi = std::sqrt(2.0) * drive_fraction * w0 * jitter;
      seq = build_ise_cycle(p, s);
    } else {
      DqtCycleParams d;
      IseParams base;
      base.f_range_hz = range_hz;
      base.duration = range_hz / v_hz_per_s;
      d.base = base;
      d.alpha = alpha_for_effective_rabi(drive_fraction * w0, d.omega_sqt, d.Delta);
      d.omega_sqt *= jitter;
      seq = build_dqt_ise_cycle(d, s);
    }
    st = run_sequence(st, seq, ctx);
  }
  return bath_polarization(st).total;
}

Outcome criterion7() {
  const double baths_perp[3][2] = {{50, 25}, {60, 30}, {40, 22}};
  const double baths_par[3][2] = {{10, -6}, {-14, 8}, {12, -5}};
  const double drive_fraction = 0.6;

  const std::vector<double> sqt_ranges = {1e6, 2e6,  3e6,  4e6,  5e6,  6e6, 7e6,
                                          8e6, 10e6, 12e6, 16e6, 20e6};
  const std::vector<double> dqt_ranges = {0.5e6,  0.75e6, 1e6,   1.25e6, 1.5e6, 1.75e6,
                                          2e6,    2.5e6,  3e6,   4e6,    5e6,   7e6,
                                          10e6};
  std::vector<double> sqt(sqt_ranges.size(), 0.0), dqt(dqt_ranges.size(), 0.0);
  for (int b = 0; b < 3; ++b) {
    const SpinSystem s = bath_from_tables(baths_perp[b], baths_par[b], 2);
    for (std::size_t i = 0; i < sqt_ranges.size(); ++i)
      sqt[i] += ise_transfer_jittered(s, sqt_ranges[i], 1e12, drive_fraction, 11 + b, false) / 3;
    for (std::size_t i = 0; i < dqt_ranges.size(); ++i)
      dqt[i] += ise_transfer_jittered(s, dqt_ranges[i], 0.5e12, drive_fraction, 31 + b, true) / 3;
  }

  const double sqt_at_10 = sqt[8], sqt_at_20 = sqt.back();
  double r90_sqt = 0, r90_dqt = 0;
  for (std::size_t i = 0; i < sqt_ranges.size(); ++i)
    if (sqt[i] >= 0.9 * sqt.back()) {
      r90_sqt = sqt_ranges[i];
      break;
    }
  for (std::size_t i = 0; i < dqt_ranges.size(); ++i)
    if (dqt[i] >= 0.9 * dqt.back()) {
      r90_dqt = dqt_ranges[i];
      break;
    }

  Outcome out;
  out.pass = sqt_at_10 >= 0.9 * sqt_at_20 && r90_dqt <= 0.6 * r90_sqt;
  std::ostringstream os;
  os << "SQT t(10 MHz)/t(20 MHz) = " << sqt_at_10 / sqt_at_20
     << " (allowed >= 0.9); 90% threshold SQT " << r90_sqt / 1e6 << " MHz vs DQT "
     << r90_dqt / 1e6 << " MHz per tone (ratio " << r90_dqt / r90_sqt
     << ", allowed <= 0.6)";
  out.detail = os.str();
  return out;
}

Outcome criterion8() {
  SpinSystem s;
  s.field_tesla = 0.177;
  const auto aligned_1770 = nv_transition_frequencies(s);
  s.theta = 5.0 * kPi / 180.0;
  const auto tilted_1770 = nv_transition_frequencies(s);
  const double sqt_shift_5deg = std::abs(tilted_1770.f_sqt_minus - aligned_1770.f_sqt_minus);

  SpinSystem t;
  t.field_tesla = 1.0;
  const auto aligned_1t = nv_transition_frequencies(t);
  t.theta = 20.0 * kPi / 180.0;
  const auto tilted_1t = nv_transition_frequencies(t);
  const double dqt_shift = std::abs(tilted_1t.f_dqt - aligned_1t.f_dqt);
  const double sqt_shift_20deg = std::abs(tilted_1t.f_sqt_minus - aligned_1t.f_sqt_minus);

  Outcome out;
  out.pass = sqt_shift_5deg >= 0.85 * 60e6 && sqt_shift_5deg <= 1.15 * 60e6 &&
             dqt_shift < 50e6 && sqt_shift_20deg >= 400e6 && sqt_shift_20deg <= 600e6;
  std::ostringstream os;
  os << "1770 G, 5 deg: SQT shift " << sqt_shift_5deg / 1e6
     << " MHz (allowed 60 +- 15%); 1 T, 20 deg: DQT shift " << dqt_shift / 1e6
     << " MHz (allowed < 50), SQT shift " << sqt_shift_20deg / 1e6
     << " MHz (allowed 400-600)";
  out.detail = os.str();
  return out;
}

Outcome criterion9() {
  const SpinSystem s = single_nucleus(kTwoPi * 10e3, kTwoPi * 50e3);
  DqtParams p;
  p.Omega_p1 = p.Omega_m1 = kTwoPi * 10e6;
  p.Delta = kTwoPi * 40e6;

  const Eigen::MatrixXcd h_full = dqt_interaction_hamiltonian(s, p);
  const Eigen::MatrixXcd h_eff = dqt_effective_hamiltonian(s, p);
  const double dt = 0.25e-6;
  const Eigen::MatrixXcd u_full = propagator(h_full, dt);
  const Eigen::MatrixXcd u_eff = propagator(h_eff, dt);

  const Eigen::Index bath = 2;
  Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(6, 6);
  rho0.block(2 * bath, 2 * bath, bath, bath) =
      Eigen::MatrixXcd::Identity(bath, bath) / 2.0;  // |-1> x mixed nucleus

  auto nv_pm_block = [bath](const Eigen::MatrixXcd& r) {
    Eigen::Matrix2cd b;
    b(0, 0) = r.block(0, 0, bath, bath).trace();
    b(0, 1) = r.block(0, 2 * bath, bath, bath).trace();
    b(1, 0) = r.block(2 * bath, 0, bath, bath).trace();
    b(1, 1) = r.block(2 * bath, 2 * bath, bath, bath).trace();
    return b;
  };

  Eigen::MatrixXcd rf = rho0, re = rho0;
  double max_distance = 0.0;
  for (int k = 0; k < 40; ++k) {  // 10 us sampled every 0.25 us
    rf = (u_full * rf * u_full.adjoint()).eval();
    re = (u_eff * re * u_eff.adjoint()).eval();
    const Eigen::Matrix2cd diff = nv_pm_block(rf) - nv_pm_block(re);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(diff, Eigen::EigenvaluesOnly);
    max_distance = std::max(max_distance, 0.5 * es.eigenvalues().cwiseAbs().sum());
  }

  // Rabi frequency of the full model vs the closed-form effective value
  const double fine = 10e-9;
  const Eigen::MatrixXcd u_fine = propagator(h_full, fine);
  Eigen::MatrixXcd r = rho0;
  std::vector<double> pop_plus;
  for (int k = 0; k < 4000; ++k) {
    r = (u_fine * r * u_fine.adjoint()).eval();
    pop_plus.push_back(r.block(0, 0, bath, bath).trace().real());
  }
  const auto est = extract_oscillation_frequency(pop_plus, fine);
  const double omega_eff = dqt_effective_rabi(p.omega_sqt(), p.Delta, 1.0);
  const double rabi_error = std::abs(est.frequency_hz / (omega_eff / kTwoPi) - 1.0);

  Outcome out;
  out.pass = max_distance <= 0.05 && rabi_error <= 0.02;
  std::ostringstream os;
  os << "max trace distance " << max_distance << " (allowed 0.05); Rabi "
     << est.frequency_hz / 1e6 << " MHz vs formula " << omega_eff / kTwoPi / 1e6
     << " MHz (|1-ratio| = " << rabi_error << ", allowed 0.02)";
  out.detail = os.str();
  return out;
}

Outcome criterion10() {
  std::ostringstream os;

  // unitarity on random instances
  double worst_unitarity = 0.0;
  for (unsigned seed = 0; seed < 20; ++seed) {
    const Eigen::MatrixXcd h = oracles::random_hermitian(24, kTwoPi * 1e6, seed);
    worst_unitarity = std::max(worst_unitarity, unitarity_error(propagator(h, 3e-6)));
  }
  const bool unitary_ok = worst_unitarity < 1e-10;
  os << "unitarity " << worst_unitarity << " (< 1e-10)";

  // propagator vs independent ODE integration
  double worst_ode = 0.0;
  for (unsigned seed = 1; seed <= 3; ++seed) {
    const Eigen::MatrixXcd h = oracles::random_hermitian(24, kTwoPi * 1e6, 100 + seed);
    const double t = 2e-6;
    worst_ode = std::max(worst_ode, (propagator(h, t) - oracles::ode_propagator(h, t)).norm());
  }
  const bool ode_ok = worst_ode < 1e-8;
  os << "; ODE oracle " << worst_ode << " (< 1e-8)";

  // 1e4-segment stress run
  const double a_perp[3] = {60, 35, 20};
  const double a_par[3] = {14, -8, 5};
  const SpinSystem s = bath_from_tables(a_perp, a_par, 3);
  EvolutionContext ctx;
  ctx.system = &s;
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DensityState state = DensityState::nv0_with_mixed_bath(3);
  double worst_herm = 0, worst_trace = 0, worst_eig = 0;
  for (int k = 0; k < 10000; ++k) {
    DriveSpec d;
    d.sqt.Omega = s.nuclear_larmor() * (0.5 + u(rng));
    d.sqt.Delta = kTwoPi * 2e5 * (u(rng) - 0.5);
    d.sqt_phase = kTwoPi * u(rng);
    state = evolve_segment(state, ControlSegment::constant_drive(2e-7 * u(rng), d), ctx);
    if (k % 1000 == 0) state = laser_reset(state, ResetModel{});
    if (k % 250 == 249 || k == 9999) {
      const auto h = state.health();
      worst_herm = std::max(worst_herm, h.hermiticity_error);
      worst_trace = std::max(worst_trace, h.trace_error);
      worst_eig = std::min(worst_eig, h.min_eigenvalue);
    }
  }
  const bool stress_ok = worst_herm < 1e-10 && worst_trace < 1e-10 && worst_eig > -1e-10;
  os << "; stress herm " << worst_herm << " trace " << worst_trace << " min-eig " << worst_eig
     << " (|.| < 1e-10 over 1e4 segments)";

  // chirp self-convergence under substep halving
  const SpinSystem s1 = single_nucleus(0.0, kTwoPi * 50e3);
  EvolutionContext c1;
  c1.system = &s1;
  EvolutionContext c2 = c1;
  c2.chirp.substep_multiplier = 2;
  DriveSpec drive;
  drive.sqt.Omega = s1.nuclear_larmor();
  const auto chirp = ControlSegment::chirp(20e-6, drive, -kPi * 10e6, kPi * 10e6);
  const DensityState init = DensityState::nv0_with_mixed_bath(1);
  const DensityState coarse = evolve_segment(init, chirp, c1);
  const DensityState fine = evolve_segment(init, chirp, c2);
  double chirp_diff = 0.0;
  for (Eigen::Index i = 0; i < coarse.dim(); ++i)
    chirp_diff = std::max(chirp_diff,
                          std::abs(coarse.rho(i, i).real() - fine.rho(i, i).real()));
  const bool chirp_ok = chirp_diff <= 1e-4;
  os << "; chirp halving " << chirp_diff << " (<= 1e-4)";

  Outcome out;
  out.pass = unitary_ok && ode_ok && stress_ok && chirp_ok;
  out.detail = os.str();
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "Hartmann-Hahn location", criterion1},
    {2, "Hartmann-Hahn resonance width", criterion2},
    {3, "DQT hyperfine doubling", criterion3},
    {4, "PROPI quanta balance", criterion4},
    {5, "build-up saturation", criterion5},
    {6, "Landau-Zener-Stueckelberg oscillations", criterion6},
    {7, "ISE range saturation", criterion7},
    {8, "misalignment frequencies", criterion8},
    {9, "effective-model fidelity", criterion9},
    {10, "numerical hygiene", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> requested;
  for (int i = 1; i < argc; ++i) requested.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!requested.empty() &&
        std::find(requested.begin(), requested.end(), c.id) == requested.end())
      continue;
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s — %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures;
}
