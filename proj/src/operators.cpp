#include "dnp/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace dnp {

namespace {
const cxd kI(0.0, 1.0);
}

Eigen::Matrix3cd nv_sx() {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  m(0, 1) = s;
  m(1, 0) = s;
  m(1, 2) = s;
  m(2, 1) = s;
  return m;
}

Eigen::Matrix3cd nv_sy() {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  m(0, 1) = -kI * s;
  m(1, 0) = kI * s;
  m(1, 2) = -kI * s;
  m(2, 1) = kI * s;
  return m;
}

Eigen::Matrix3cd nv_sz() {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 0) = 1.0;   // |+1>
  m(2, 2) = -1.0;  // |-1>
  return m;
}

Eigen::Matrix2cd spin_half_x() {
  Eigen::Matrix2cd m;
  m << 0.0, 0.5, 0.5, 0.0;
  return m;
}

Eigen::Matrix2cd spin_half_y() {
  Eigen::Matrix2cd m;
  m << cxd(0, 0), cxd(0, -0.5), cxd(0, 0.5), cxd(0, 0);
  return m;
}

Eigen::Matrix2cd spin_half_z() {
  Eigen::Matrix2cd m;
  m << 0.5, 0.0, 0.0, -0.5;
  return m;
}

SpinOperators::SpinOperators(int n_nuclei, int max_nuclei) : n_(n_nuclei) {
  if (n_nuclei < 0) throw std::invalid_argument("SpinOperators: negative bath size");
  if (n_nuclei > max_nuclei)
    throw std::invalid_argument("SpinOperators: Hilbert-space dimension cap exceeded");
  dim_ = 3 * (Eigen::Index(1) << n_nuclei);
}

Eigen::MatrixXcd SpinOperators::nv_op(const Eigen::Matrix3cd& op) const {
  return kron(op, Eigen::MatrixXcd::Identity(bath_dim(), bath_dim()));
}

Eigen::MatrixXcd SpinOperators::nuclear_op(int j, const Eigen::Matrix2cd& op) const {
  if (j < 0 || j >= n_) throw std::invalid_argument("SpinOperators: nucleus index out of range");
  const Eigen::Index left = Eigen::Index(1) << j;
  const Eigen::Index right = Eigen::Index(1) << (n_ - 1 - j);
  Eigen::MatrixXcd lifted =
      kron(kron(Eigen::MatrixXcd::Identity(left, left), op),
           Eigen::MatrixXcd::Identity(right, right));
  return kron(Eigen::Matrix3cd::Identity(), lifted);
}

Eigen::MatrixXcd SpinOperators::projector(int m_ket, int m_bra) const {
  Eigen::Matrix3cd p = Eigen::Matrix3cd::Zero();
  p(nv_index(m_ket), nv_index(m_bra)) = 1.0;
  return nv_op(p);
}

SpinOperators spin_operators(int n_nuclei, int max_nuclei) {
  return SpinOperators(n_nuclei, max_nuclei);
}

}  // namespace dnp
