#include "dnp/hamiltonians.hpp"

#include <cmath>
#include <stdexcept>

namespace dnp {

namespace {

const cxd kI(0.0, 1.0);

// 3x3 NV part of the lab Hamiltonian
Eigen::Matrix3cd nv_lab_matrix(const SpinSystem& system) {
  const double gamma_e = system.constants.gamma_e();
  const double bx = system.field_tesla * std::sin(system.theta);
  const double bz = system.field_tesla * std::cos(system.theta);
  const Eigen::Matrix3cd sz = nv_sz();
  return system.constants.D * sz * sz + gamma_e * (bx * nv_sx() + bz * sz);
}

// per-nucleus hyperfine operator a_par I_z + a_perp I_x summed over the bath,
// lifted to the full space
Eigen::MatrixXcd bath_hyperfine_sum(const SpinOperators& ops,
                                    const std::vector<BathNucleus>& nuclei) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(ops.dim(), ops.dim());
  for (int j = 0; j < static_cast<int>(nuclei.size()); ++j)
    h += nuclei[j].a_par * ops.I_z(j) + nuclei[j].a_perp * ops.I_x(j);
  return h;
}

Eigen::MatrixXcd bath_zeeman(const SpinOperators& ops, int n, double omega0) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(ops.dim(), ops.dim());
  for (int j = 0; j < n; ++j) h += omega0 * ops.I_z(j);
  return h;
}

// <label m| S_z |label m> in the NV eigenbasis; equals m when aligned
double sz_expectation(const NvEigenbasis& basis, int m) {
  const Eigen::Vector3cd v = basis.vectors.col(nv_index(m));
  return (v.adjoint() * nv_sz() * v)(0, 0).real();
}

}  // namespace

NvEigenbasis nv_eigenbasis(const SpinSystem& system) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(nv_lab_matrix(system));
  const Eigen::Vector3d evals = es.eigenvalues();
  const Eigen::Matrix3cd evecs = es.eigenvectors();

  // label eigenstates by maximal overlap with the m_s basis states
  NvEigenbasis out;
  out.min_overlap = 1.0;
  bool used[3] = {false, false, false};
  double energy[3];
  for (int basis_idx = 0; basis_idx < 3; ++basis_idx) {
    int best = -1;
    double best_overlap = -1.0;
    for (int k = 0; k < 3; ++k) {
      if (used[k]) continue;
      const double ov = std::norm(evecs(basis_idx, k));
      if (ov > best_overlap) {
        best_overlap = ov;
        best = k;
      }
    }
    used[best] = true;
    energy[basis_idx] = evals(best);
    // fix the gauge so the dominant component is real and positive
    const cxd lead = evecs(basis_idx, best);
    const cxd phase = std::abs(lead) > 0 ? lead / std::abs(lead) : cxd(1, 0);
    out.vectors.col(basis_idx) = evecs.col(best) / phase;
    out.min_overlap = std::min(out.min_overlap, best_overlap);
  }
  out.energy_p1 = energy[nv_index(+1)];
  out.energy_0 = energy[nv_index(0)];
  out.energy_m1 = energy[nv_index(-1)];
  out.labeling_ok = out.min_overlap >= 0.6;
  return out;
}

NvTransitionFrequencies nv_transition_frequencies(const SpinSystem& system) {
  const NvEigenbasis basis = nv_eigenbasis(system);
  NvTransitionFrequencies out;
  out.f_sqt_minus = std::abs(basis.energy_m1 - basis.energy_0) / kTwoPi;
  out.f_sqt_plus = std::abs(basis.energy_p1 - basis.energy_0) / kTwoPi;
  out.f_dqt = std::abs(basis.energy_p1 - basis.energy_m1) / kTwoPi;
  out.labeling_ok = basis.labeling_ok;
  return out;
}

Eigen::MatrixXcd lab_hamiltonian(const SpinSystem& system) {
  system.validate();
  const SpinOperators ops(system.n_nuclei(), system.max_bath_spins);
  const Eigen::MatrixXcd sz = ops.S_z();

  Eigen::MatrixXcd h = ops.nv_op(nv_lab_matrix(system));
  h += bath_zeeman(ops, system.n_nuclei(), system.nuclear_larmor());
  for (int j = 0; j < system.n_nuclei(); ++j)
    h += sz * (system.nuclei[j].a_par * ops.I_z(j) + system.nuclei[j].a_perp * ops.I_x(j));
  return h;
}

Eigen::MatrixXcd sqt_rotating_hamiltonian(const SpinSystem& system,
                                          const SqtFrameParams& params, double phase) {
  system.validate();
  if (params.Omega < 0) throw std::invalid_argument("SqtFrameParams: Omega must be >= 0");
  const SpinOperators ops(system.n_nuclei(), system.max_bath_spins);
  const int m_driven = params.which_transition == Transition::ZeroToMinusOne ? -1 : +1;
  const int m_spectator = -m_driven;

  // NV eigenbasis handles misalignment; aligned it is the identity
  const NvEigenbasis basis = nv_eigenbasis(system);
  const Eigen::Vector3cd e0 = basis.vectors.col(nv_index(0));
  const Eigen::Vector3cd ed = basis.vectors.col(nv_index(m_driven));
  const Eigen::Vector3cd es = basis.vectors.col(nv_index(m_spectator));

  // half-Pauli operators on the driven {|0>, |d>} subspace
  const Eigen::Matrix3cd p00 = e0 * e0.adjoint();
  const Eigen::Matrix3cd pdd = ed * ed.adjoint();
  const Eigen::Matrix3cd p0d = e0 * ed.adjoint();
  const Eigen::Matrix3cd sig_z = 0.5 * (p00 - pdd);
  const Eigen::Matrix3cd sig_x = 0.5 * (p0d + p0d.adjoint());
  const Eigen::Matrix3cd sig_y = 0.5 * (-kI * p0d + kI * p0d.adjoint());

  const double omega0 = params.B_eff >= 0 ? params.B_eff : system.nuclear_larmor();
  // hyperfine S_z projected on the subspace (rotating-wave approximation keeps
  // the eigenbasis-diagonal part); the m_s-averaged piece tilts each nucleus's
  // primed frame, leaving a per-nucleus effective Larmor frequency
  const double s0 = sz_expectation(basis, 0);
  const double sd = sz_expectation(basis, m_driven);
  const double kappa = s0 - sd;
  const double s_mean = 0.5 * (s0 + sd);

  Eigen::MatrixXcd h =
      ops.nv_op(params.Omega * (std::cos(phase) * sig_x + std::sin(phase) * sig_y) +
                params.Delta * sig_z + kSpectatorShift * (es * es.adjoint()));
  for (int j = 0; j < system.n_nuclei(); ++j) {
    const double w_j = std::hypot(omega0 + s_mean * system.nuclei[j].a_par,
                                  s_mean * system.nuclei[j].a_perp);
    h += w_j * ops.I_z(j);
  }
  h += ops.nv_op(kappa * sig_z) * bath_hyperfine_sum(ops, system.nuclei);
  return h;
}

Eigen::MatrixXcd dqt_interaction_hamiltonian(const SpinSystem& system,
                                             const DqtParams& params) {
  system.validate();
  if (params.Omega_p1 < 0 || params.Omega_m1 < 0 || params.alpha < 0)
    throw std::invalid_argument("DqtParams: amplitudes and alpha must be >= 0");
  const SpinOperators ops(system.n_nuclei(), system.max_bath_spins);
  const NvEigenbasis basis = nv_eigenbasis(system);
  const Eigen::Vector3cd e0 = basis.vectors.col(nv_index(0));
  const Eigen::Vector3cd ep = basis.vectors.col(nv_index(+1));
  const Eigen::Vector3cd em = basis.vectors.col(nv_index(-1));

  const double amp_scale = std::sqrt(params.alpha);
  const cxd drive_p = 0.5 * amp_scale * params.Omega_p1 * std::exp(-kI * params.phase_p1);
  const cxd drive_m = 0.5 * amp_scale * params.Omega_m1 * std::exp(-kI * params.phase_m1);

  Eigen::Matrix3cd nv = (params.delta / 2.0) * (ep * ep.adjoint() - em * em.adjoint());
  nv += params.Delta * (ep * ep.adjoint() + em * em.adjoint());
  nv += drive_p * (ep * e0.adjoint());
  nv += std::conj(drive_p) * (e0 * ep.adjoint());
  nv += drive_m * (em * e0.adjoint());
  nv += std::conj(drive_m) * (e0 * em.adjoint());

  // full-strength hyperfine; S_z reduced to its eigenbasis diagonal (RWA)
  Eigen::Matrix3cd sz_eff = sz_expectation(basis, +1) * (ep * ep.adjoint()) +
                            sz_expectation(basis, 0) * (e0 * e0.adjoint()) +
                            sz_expectation(basis, -1) * (em * em.adjoint());

  Eigen::MatrixXcd h = ops.nv_op(nv);
  h += bath_zeeman(ops, system.n_nuclei(), system.nuclear_larmor());
  h += ops.nv_op(sz_eff) * bath_hyperfine_sum(ops, system.nuclei);
  return h;
}

Eigen::MatrixXcd dqt_effective_hamiltonian(const SpinSystem& system,
                                           const DqtParams& params) {
  system.validate();
  const double amp_scale = std::sqrt(params.alpha);
  if (!(params.Delta > amp_scale * std::max(params.Omega_p1, params.Omega_m1)))
    throw std::domain_error(
        "dqt_effective_hamiltonian: requires Delta > max drive amplitude "
        "(validity of the adiabatic elimination)");
  const SpinOperators ops(system.n_nuclei(), system.max_bath_spins);
  const NvEigenbasis basis = nv_eigenbasis(system);
  const Eigen::Vector3cd e0 = basis.vectors.col(nv_index(0));
  const Eigen::Vector3cd ep = basis.vectors.col(nv_index(+1));
  const Eigen::Vector3cd em = basis.vectors.col(nv_index(-1));

  const Eigen::Matrix3cd sig_z = 0.5 * (ep * ep.adjoint() - em * em.adjoint());
  const cxd dq_phase = std::exp(-kI * params.effective_phase());
  const Eigen::Matrix3cd sig_plus = ep * em.adjoint();
  const Eigen::Matrix3cd sig_x_phased =
      0.5 * (dq_phase * sig_plus + std::conj(dq_phase) * sig_plus.adjoint());

  const double omega_eff = dqt_effective_rabi(params.omega_sqt(), params.Delta, params.alpha);
  const double delta_so = dqt_stark_shift(params);

  // factor (s_+1 - s_-1) on the hyperfine term: exactly 2 when aligned
  const double kappa = sz_expectation(basis, +1) - sz_expectation(basis, -1);

  Eigen::MatrixXcd h = ops.nv_op((params.delta + delta_so) * sig_z +
                                 omega_eff * sig_x_phased +
                                 kSpectatorShift * (e0 * e0.adjoint()));
  h += bath_zeeman(ops, system.n_nuclei(), system.nuclear_larmor());
  h += ops.nv_op(kappa * sig_z) * bath_hyperfine_sum(ops, system.nuclei);
  return h;
}

double dqt_effective_rabi(double omega_sqt, double Delta, double alpha) {
  if (Delta < 0 || alpha < 0)
    throw std::invalid_argument("dqt_effective_rabi: Delta and alpha must be >= 0");
  return 0.5 * (std::sqrt(2.0 * alpha * omega_sqt * omega_sqt + Delta * Delta) - Delta);
}

double alpha_for_effective_rabi(double omega_eff, double omega_sqt, double Delta) {
  if (omega_sqt <= 0) throw std::invalid_argument("alpha_for_effective_rabi: omega_sqt must be > 0");
  const double root = 2.0 * omega_eff + Delta;
  return (root * root - Delta * Delta) / (2.0 * omega_sqt * omega_sqt);
}

double adiabaticity_factor(double omega, double sweep_rate) {
  if (sweep_rate == 0) throw std::invalid_argument("adiabaticity_factor: zero sweep rate");
  return omega * omega / std::abs(sweep_rate);
}

double dqt_stark_shift(const DqtParams& params) {
  return params.alpha * (params.Omega_p1 * params.Omega_p1 - params.Omega_m1 * params.Omega_m1) /
         (4.0 * params.Delta);
}

}  // namespace dnp
