#pragma once

// Hamiltonian builders on the composite NV (x) 13C-bath space.
//
// Four frames are provided:
//   * lab frame (zero-field splitting + Zeeman + hyperfine)
//   * SQT rotating frame on one driven transition, rotating-wave approximation
//   * DQT interaction picture (two tones, full three NV levels)
//   * DQT effective two-level frame after adiabatic elimination of |0>
//
// Hyperfine constants (a_par, a_perp) are taken as inputs already expressed
// in each nucleus's primed frame; the nuclear operators I_z', I_x' are the
// plain I_z, I_x of that tensor factor. Electron two-level operators sigma
// are half-Paulis (eigenvalues +-1/2) throughout.

#include <Eigen/Dense>

#include "dnp/lattice.hpp"
#include "dnp/operators.hpp"

namespace dnp {

enum class Transition { ZeroToMinusOne, ZeroToPlusOne };

struct SqtFrameParams {
  double Omega = 0.0;  // on-transition Rabi frequency [rad/s]
  double Delta = 0.0;  // detuning from the driven transition [rad/s]
  // Base nuclear field [rad/s]; < 0 selects gammaC*B. Each nucleus's primed
  // frame tilts along the vector sum of this field and its m_s-averaged
  // secular field, so the Hamiltonian carries per-nucleus effective Larmor
  // frequencies |B_eff + s_mean a_par, s_mean a_perp|.
  double B_eff = -1.0;
  Transition which_transition = Transition::ZeroToMinusOne;
};

struct DqtParams {
  double Omega_p1 = 0.0;  // drive amplitude on |0> <-> |+1> [rad/s]
  double Omega_m1 = 0.0;  // drive amplitude on |0> <-> |-1> [rad/s]
  double Delta = 0.0;     // common detuning from |0> [rad/s]
  double delta = 0.0;     // two-photon detuning [rad/s]
  double alpha = 1.0;     // amplitude scale factor (scales both tones as sqrt(alpha))
  double phase_p1 = 0.0;  // tone phases [rad]; the effective DQ drive phase is their sum
  double phase_m1 = 0.0;

  double omega_sqt() const { return std::sqrt(Omega_p1 * Omega_m1); }
  double effective_phase() const { return phase_p1 + phase_m1; }
};

// NV-only diagonalization results, eigenstates labeled by maximal overlap
// with the m_s basis states.
struct NvEigenbasis {
  double energy_p1, energy_0, energy_m1;  // [rad/s]
  Eigen::Matrix3cd vectors;                // columns in (|+1>,|0>,|-1>) label order
  double min_overlap;                      // smallest |<m|label m>|^2
  bool labeling_ok;                        // false near a level anti-crossing
};

struct NvTransitionFrequencies {
  double f_sqt_minus;  // |0> <-> |-1> [Hz]
  double f_sqt_plus;   // |0> <-> |+1> [Hz]
  double f_dqt;        // |-1> <-> |+1> [Hz]
  bool labeling_ok;
};

NvEigenbasis nv_eigenbasis(const SpinSystem& system);
NvTransitionFrequencies nv_transition_frequencies(const SpinSystem& system);

Eigen::MatrixXcd lab_hamiltonian(const SpinSystem& system);
Eigen::MatrixXcd sqt_rotating_hamiltonian(const SpinSystem& system,
                                          const SqtFrameParams& params, double phase);
Eigen::MatrixXcd dqt_interaction_hamiltonian(const SpinSystem& system,
                                             const DqtParams& params);
Eigen::MatrixXcd dqt_effective_hamiltonian(const SpinSystem& system,
                                           const DqtParams& params);

// Omega_eff = 1/2 (sqrt(2 alpha Omega_sqt^2 + Delta^2) - Delta)
double dqt_effective_rabi(double omega_sqt, double Delta, double alpha);
// inverse of the above in alpha
double alpha_for_effective_rabi(double omega_eff, double omega_sqt, double Delta);

// Omega^2 / |v|, both arguments angular. >> 1 means adiabatic.
double adiabaticity_factor(double omega, double sweep_rate);

// second-order drive shift delta_so = alpha (Omega_1^2 - Omega_-1^2) / (4 Delta)
double dqt_stark_shift(const DqtParams& params);

// Diagonal placeholder energy for the undriven NV level in two-level frames;
// the level is uncoupled and never populated.
inline constexpr double kSpectatorShift = kTwoPi * 5.0e8;

}  // namespace dnp
