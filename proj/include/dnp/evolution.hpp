#pragma once

// Density-matrix evolution under piecewise-constant and chirped controls,
// laser reset and optical readout.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "dnp/hamiltonians.hpp"
#include "dnp/lattice.hpp"

namespace dnp {

struct DensityState {
  Eigen::MatrixXcd rho;        // trace-1 state of the NV- sector
  double charge_weight = 1.0;  // probability the NV is in the negative charge state
  int n_nuclei = 0;

  Eigen::Index dim() const { return rho.rows(); }

  // |0><0| (x) maximally mixed bath
  static DensityState nv0_with_mixed_bath(int n_nuclei);
  // |0><0| (x) product state with every nucleus up (+z') or down (-z')
  static DensityState nv0_with_polarized_bath(int n_nuclei, bool up);

  struct Health {
    double hermiticity_error;  // relative Frobenius
    double trace_error;        // |tr - 1|
    double min_eigenvalue;
  };
  Health health() const;
  void check(double tol = 1e-10) const;  // throws when invariants are violated
};

struct ResetModel {
  double p_charge = 0.70;  // probability of NV- after the laser pulse
  double p_spin = 0.92;    // probability of m_s = 0 given NV-

  static ResetModel ideal() { return {1.0, 1.0}; }
  double p_eff() const { return p_charge * p_spin; }
  void validate() const;
};

enum class SegmentKind { ConstantDrive, Chirp, Wait, LaserReset, IdealPulse, ReadoutMarker };
enum class DriveFrame { SqtRotating, DqtInteraction, DqtEffective };

struct DriveSpec {
  DriveFrame frame = DriveFrame::SqtRotating;
  SqtFrameParams sqt;
  double sqt_phase = 0.0;
  DqtParams dqt;

  // Hamiltonian of this drive; detuning_override replaces the swept detuning
  // (Delta for the SQT frame, the two-photon delta for DQT frames).
  Eigen::MatrixXcd hamiltonian(const SpinSystem& system,
                               std::optional<double> detuning_override = {}) const;
  double amplitude() const;  // drive amplitude used for chirp step control
  DriveSpec with_amplitude_scale(double factor) const;
};

struct ControlSegment {
  SegmentKind kind = SegmentKind::Wait;
  double duration = 0.0;  // seconds
  DriveSpec drive;
  double chirp_start = 0.0;  // swept detuning endpoints [rad/s]
  double chirp_end = 0.0;
  double ideal_angle = 0.0;  // rotation angle for IdealPulse [rad]

  static ControlSegment laser_reset();
  static ControlSegment readout_marker();
  static ControlSegment wait(double duration, const DriveSpec& frame);
  static ControlSegment constant_drive(double duration, const DriveSpec& drive);
  static ControlSegment chirp(double duration, const DriveSpec& drive, double start,
                              double end);
  static ControlSegment ideal_pulse(double angle, const DriveSpec& drive);
};

// Chirp discretization: substeps are sized so the detuning change per substep
// stays below min(omega_fraction * Omega, max_detuning_step) and the substep
// duration below max_substep_seconds. substep_multiplier refines uniformly
// (used by the self-convergence checks).
struct ChirpOptions {
  double max_detuning_step = kTwoPi * 100e3;  // [rad/s]
  double omega_fraction = 0.1;
  double max_substep_seconds = 20e-9;
  int substep_multiplier = 1;

  int substep_count(double detuning_range, double duration, double amplitude) const;
};

struct EvolutionContext {
  const SpinSystem* system = nullptr;
  ResetModel reset = ResetModel::ideal();
  ChirpOptions chirp;
};

// U = exp(-i H t) via eigendecomposition; rejects non-Hermitian input.
Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& hamiltonian, double t);

// Unitary implementing one ConstantDrive / Wait / Chirp / IdealPulse segment.
Eigen::MatrixXcd segment_unitary(const SpinSystem& system, const ControlSegment& segment,
                                 const ChirpOptions& chirp = {});

DensityState evolve_segment(const DensityState& state, const ControlSegment& segment,
                            const EvolutionContext& context);

// NV factor replaced by the reset mixture; bath state and intra-block nuclear
// coherences kept, NV-nucleus coherences erased. The residual spin weight is
// split evenly over |+1> and |-1>; the charge branch is tracked as a scalar
// weight that affects fluorescence only.
DensityState laser_reset(const DensityState& state, const ResetModel& model);

struct NvPopulations {
  double p_plus = 0.0;
  double p_zero = 0.0;
  double p_minus = 0.0;
  double charge_weight = 1.0;
};

NvPopulations measure_nv(const DensityState& state);

// Normalized optical signal with ideal pi-pulse calibration anchors: a fresh
// ideal reset maps to 1 and a full population inversion to 0. `contrast` and
// the misalignment factor cancel in this normalized signal; they shape only
// the raw (uncalibrated) value.
double fluorescence(const NvPopulations& populations, double contrast, double theta);
double fluorescence_raw(const NvPopulations& populations, double contrast, double theta);

// Debug dump: row-major complex128, little-endian, JSON sidecar with the
// dimension and basis labels.
void dump_state(const DensityState& state, const std::string& path_prefix);

}  // namespace dnp
