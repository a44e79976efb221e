#include "dnp/evolution.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace dnp {

namespace {

const cxd kI(0.0, 1.0);

constexpr double kMisalignmentThreshold = kPi / 180.0;  // 1 degree
constexpr double kMisalignedContrastFactor = 0.1;

// NV two-level drive generator sigma(phase) = sigma_x cos + sigma_y sin on
// the driven pair, lifted to the full space; used for ideal pulses.
Eigen::MatrixXcd ideal_pulse_generator(const SpinSystem& system, const DriveSpec& drive) {
  const SpinOperators ops(system.n_nuclei(), system.max_bath_spins);
  const NvEigenbasis basis = nv_eigenbasis(system);
  Eigen::Vector3cd ka, kb;
  double phase = 0.0;
  if (drive.frame == DriveFrame::SqtRotating) {
    const int m = drive.sqt.which_transition == Transition::ZeroToMinusOne ? -1 : +1;
    ka = basis.vectors.col(nv_index(0));
    kb = basis.vectors.col(nv_index(m));
    phase = drive.sqt_phase;
  } else {
    ka = basis.vectors.col(nv_index(+1));
    kb = basis.vectors.col(nv_index(-1));
    phase = drive.dqt.effective_phase();
  }
  const Eigen::Matrix3cd pab = ka * kb.adjoint();
  const Eigen::Matrix3cd sig_x = 0.5 * (pab + pab.adjoint());
  const Eigen::Matrix3cd sig_y = 0.5 * (-kI * pab + kI * pab.adjoint());
  return ops.nv_op(std::cos(phase) * sig_x + std::sin(phase) * sig_y);
}

}  // namespace

DensityState DensityState::nv0_with_mixed_bath(int n_nuclei) {
  const Eigen::Index bath = Eigen::Index(1) << n_nuclei;
  DensityState s;
  s.n_nuclei = n_nuclei;
  s.rho = Eigen::MatrixXcd::Zero(3 * bath, 3 * bath);
  s.rho.block(bath, bath, bath, bath) =
      Eigen::MatrixXcd::Identity(bath, bath) / static_cast<double>(bath);
  return s;
}

DensityState DensityState::nv0_with_polarized_bath(int n_nuclei, bool up) {
  const Eigen::Index bath = Eigen::Index(1) << n_nuclei;
  DensityState s;
  s.n_nuclei = n_nuclei;
  s.rho = Eigen::MatrixXcd::Zero(3 * bath, 3 * bath);
  // bath basis index with every nucleus up is 0, all down is bath-1
  const Eigen::Index idx = bath + (up ? 0 : bath - 1);
  s.rho(idx, idx) = 1.0;
  return s;
}

DensityState::Health DensityState::health() const {
  Health h;
  h.hermiticity_error = hermiticity_error(rho);
  h.trace_error = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  h.min_eigenvalue = es.eigenvalues().minCoeff();
  return h;
}

void DensityState::check(double tol) const {
  const Health h = health();
  if (h.hermiticity_error > tol || h.trace_error > tol || h.min_eigenvalue < -tol)
    throw std::runtime_error("DensityState: invariants violated");
}

void ResetModel::validate() const {
  if (p_charge < 0 || p_charge > 1 || p_spin < 0 || p_spin > 1)
    throw std::invalid_argument("ResetModel: probabilities must lie in [0,1]");
}

Eigen::MatrixXcd DriveSpec::hamiltonian(const SpinSystem& system,
                                        std::optional<double> detuning_override) const {
  switch (frame) {
    case DriveFrame::SqtRotating: {
      SqtFrameParams p = sqt;
      if (detuning_override) p.Delta = *detuning_override;
      return sqt_rotating_hamiltonian(system, p, sqt_phase);
    }
    case DriveFrame::DqtInteraction: {
      DqtParams p = dqt;
      if (detuning_override) p.delta = *detuning_override;
      return dqt_interaction_hamiltonian(system, p);
    }
    case DriveFrame::DqtEffective: {
      DqtParams p = dqt;
      if (detuning_override) p.delta = *detuning_override;
      return dqt_effective_hamiltonian(system, p);
    }
  }
  throw std::logic_error("DriveSpec: unknown frame");
}

double DriveSpec::amplitude() const {
  if (frame == DriveFrame::SqtRotating) return sqt.Omega;
  // slow gap of the double-quantum drive
  return dqt_effective_rabi(dqt.omega_sqt(), dqt.Delta, dqt.alpha);
}

DriveSpec DriveSpec::with_amplitude_scale(double factor) const {
  DriveSpec out = *this;
  out.sqt.Omega *= factor;
  out.dqt.Omega_p1 *= factor;
  out.dqt.Omega_m1 *= factor;
  return out;
}

ControlSegment ControlSegment::laser_reset() {
  ControlSegment s;
  s.kind = SegmentKind::LaserReset;
  return s;
}

ControlSegment ControlSegment::readout_marker() {
  ControlSegment s;
  s.kind = SegmentKind::ReadoutMarker;
  return s;
}

ControlSegment ControlSegment::wait(double duration, const DriveSpec& frame) {
  ControlSegment s;
  s.kind = SegmentKind::Wait;
  s.duration = duration;
  s.drive = frame.with_amplitude_scale(0.0);
  return s;
}

ControlSegment ControlSegment::constant_drive(double duration, const DriveSpec& drive) {
  ControlSegment s;
  s.kind = SegmentKind::ConstantDrive;
  s.duration = duration;
  s.drive = drive;
  return s;
}

ControlSegment ControlSegment::chirp(double duration, const DriveSpec& drive, double start,
                                     double end) {
  if (!std::isfinite(start) || !std::isfinite(end))
    throw std::invalid_argument("ControlSegment: chirp detuning bounds must be finite");
  ControlSegment s;
  s.kind = SegmentKind::Chirp;
  s.duration = duration;
  s.drive = drive;
  s.chirp_start = start;
  s.chirp_end = end;
  return s;
}

ControlSegment ControlSegment::ideal_pulse(double angle, const DriveSpec& drive) {
  ControlSegment s;
  s.kind = SegmentKind::IdealPulse;
  s.drive = drive;
  s.ideal_angle = angle;
  return s;
}

int ChirpOptions::substep_count(double detuning_range, double duration,
                                double amplitude) const {
  double step_cap = max_detuning_step;
  if (amplitude > 0) step_cap = std::min(step_cap, omega_fraction * amplitude);
  int n = 1;
  if (step_cap > 0)
    n = std::max(n, static_cast<int>(std::ceil(std::abs(detuning_range) / step_cap)));
  if (max_substep_seconds > 0)
    n = std::max(n, static_cast<int>(std::ceil(duration / max_substep_seconds)));
  return n * std::max(1, substep_multiplier);
}

Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& hamiltonian, double t) {
  if (t < 0) throw std::invalid_argument("propagator: negative duration");
  if (!is_hermitian(hamiltonian, 1e-12))
    throw std::invalid_argument("propagator: Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian);
  const Eigen::VectorXd evals = es.eigenvalues();
  Eigen::VectorXcd phases(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k)
    phases(k) = std::exp(-kI * evals(k) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd segment_unitary(const SpinSystem& system, const ControlSegment& segment,
                                 const ChirpOptions& chirp) {
  switch (segment.kind) {
    case SegmentKind::ConstantDrive:
    case SegmentKind::Wait:
      return propagator(segment.drive.hamiltonian(system), segment.duration);
    case SegmentKind::IdealPulse:
      return propagator(ideal_pulse_generator(system, segment.drive), segment.ideal_angle);
    case SegmentKind::Chirp: {
      const double range = segment.chirp_end - segment.chirp_start;
      const int n = chirp.substep_count(range, segment.duration, segment.drive.amplitude());
      const double dt = segment.duration / n;
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(system.dim(), system.dim());
      for (int k = 0; k < n; ++k) {
        // piecewise-constant at the substep midpoint detuning
        const double detuning = segment.chirp_start + range * (k + 0.5) / n;
        u = propagator(segment.drive.hamiltonian(system, detuning), dt) * u;
      }
      return u;
    }
    default:
      throw std::invalid_argument("segment_unitary: segment has no unitary representation");
  }
}

DensityState evolve_segment(const DensityState& state, const ControlSegment& segment,
                            const EvolutionContext& context) {
  if (context.system == nullptr) throw std::invalid_argument("evolve_segment: missing system");
  if (segment.kind == SegmentKind::LaserReset) return laser_reset(state, context.reset);
  if (segment.kind == SegmentKind::ReadoutMarker) return state;
  if (state.dim() != context.system->dim())
    throw std::invalid_argument("evolve_segment: state/system dimension mismatch");
  if (segment.duration == 0 && segment.kind != SegmentKind::IdealPulse) return state;

  const Eigen::MatrixXcd u = segment_unitary(*context.system, segment, context.chirp);
  DensityState out = state;
  out.rho = u * state.rho * u.adjoint();
  return out;
}

DensityState laser_reset(const DensityState& state, const ResetModel& model) {
  model.validate();
  const Eigen::Index bath = state.dim() / 3;
  Eigen::MatrixXcd rho_nuc = Eigen::MatrixXcd::Zero(bath, bath);
  for (int b = 0; b < 3; ++b)
    rho_nuc += state.rho.block(b * bath, b * bath, bath, bath);

  const double residual = 0.5 * (1.0 - model.p_spin);
  DensityState out;
  out.n_nuclei = state.n_nuclei;
  out.charge_weight = model.p_charge;
  out.rho = Eigen::MatrixXcd::Zero(state.dim(), state.dim());
  out.rho.block(0, 0, bath, bath) = residual * rho_nuc;                      // |+1>
  out.rho.block(bath, bath, bath, bath) = model.p_spin * rho_nuc;           // |0>
  out.rho.block(2 * bath, 2 * bath, bath, bath) = residual * rho_nuc;       // |-1>
  return out;
}

NvPopulations measure_nv(const DensityState& state) {
  const Eigen::Index bath = state.dim() / 3;
  NvPopulations p;
  p.p_plus = state.rho.block(0, 0, bath, bath).trace().real();
  p.p_zero = state.rho.block(bath, bath, bath, bath).trace().real();
  p.p_minus = state.rho.block(2 * bath, 2 * bath, bath, bath).trace().real();
  p.charge_weight = state.charge_weight;
  return p;
}

double fluorescence(const NvPopulations& populations, double contrast, double theta) {
  if (!(contrast > 0 && contrast <= 1))
    throw std::invalid_argument("fluorescence: contrast must lie in (0,1]");
  (void)theta;  // contrast and misalignment cancel after calibration
  return 1.0 - populations.charge_weight * (populations.p_plus + populations.p_minus);
}

double fluorescence_raw(const NvPopulations& populations, double contrast, double theta) {
  if (!(contrast > 0 && contrast <= 1))
    throw std::invalid_argument("fluorescence: contrast must lie in (0,1]");
  double c_eff = contrast;
  if (theta > kMisalignmentThreshold) c_eff *= kMisalignedContrastFactor;
  return 1.0 - populations.charge_weight * c_eff * (populations.p_plus + populations.p_minus);
}

void dump_state(const DensityState& state, const std::string& path_prefix) {
  const Eigen::Index d = state.dim();
  std::ofstream bin(path_prefix + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("dump_state: cannot open " + path_prefix + ".bin");
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const double re = state.rho(i, j).real();
      const double im = state.rho(i, j).imag();
      bin.write(reinterpret_cast<const char*>(&re), sizeof(double));
      bin.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }

  nlohmann::json side;
  side["dimension"] = d;
  side["layout"] = "row-major complex128 little-endian (re, im)";
  side["charge_weight"] = state.charge_weight;
  std::vector<std::string> labels;
  const char* nv_names[3] = {"+1", "0", "-1"};
  const Eigen::Index bath = d / 3;
  for (int m = 0; m < 3; ++m)
    for (Eigen::Index b = 0; b < bath; ++b) {
      std::string lab = std::string("ms=") + nv_names[m] + ";bath=";
      for (int j = state.n_nuclei - 1; j >= 0; --j) lab += ((b >> j) & 1) ? 'd' : 'u';
      labels.push_back(lab);
    }
  side["basis_labels"] = labels;
  std::ofstream js(path_prefix + ".json");
  js << side.dump(2) << "\n";
}

}  // namespace dnp
