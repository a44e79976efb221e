#pragma once

// Spin operators on the composite Hilbert space NV (x) bath.
//
// NV basis ordering is fixed as (|+1>, |0>, |-1>) everywhere; nucleus j is
// tensor factor j+1 (NV outermost), each nucleus a spin-1/2 with basis
// (|up>, |down>) along its primed quantization axis.

#include <Eigen/Dense>

#include "dnp/constants.hpp"
#include "dnp/linalg.hpp"

namespace dnp {

// basis index of NV level m in {+1, 0, -1}
inline int nv_index(int m) { return 1 - m; }

Eigen::Matrix3cd nv_sx();
Eigen::Matrix3cd nv_sy();
Eigen::Matrix3cd nv_sz();
Eigen::Matrix2cd spin_half_x();
Eigen::Matrix2cd spin_half_y();
Eigen::Matrix2cd spin_half_z();

// Operator factory for a fixed bath size. Operators are built on demand; the
// full set at the dimension cap would not fit in memory.
class SpinOperators {
 public:
  explicit SpinOperators(int n_nuclei, int max_nuclei = kDefaultMaxBathSpins);

  int n_nuclei() const { return n_; }
  Eigen::Index dim() const { return dim_; }
  Eigen::Index bath_dim() const { return dim_ / 3; }

  // 3x3 NV operator lifted to the full space
  Eigen::MatrixXcd nv_op(const Eigen::Matrix3cd& op) const;
  // 2x2 operator on nucleus j lifted to the full space
  Eigen::MatrixXcd nuclear_op(int j, const Eigen::Matrix2cd& op) const;

  Eigen::MatrixXcd S_x() const { return nv_op(nv_sx()); }
  Eigen::MatrixXcd S_y() const { return nv_op(nv_sy()); }
  Eigen::MatrixXcd S_z() const { return nv_op(nv_sz()); }
  Eigen::MatrixXcd I_x(int j) const { return nuclear_op(j, spin_half_x()); }
  Eigen::MatrixXcd I_y(int j) const { return nuclear_op(j, spin_half_y()); }
  Eigen::MatrixXcd I_z(int j) const { return nuclear_op(j, spin_half_z()); }

  // |m><m'| on the NV factor, m and m' in {+1, 0, -1}
  Eigen::MatrixXcd projector(int m_ket, int m_bra) const;

 private:
  int n_;
  Eigen::Index dim_;
};

SpinOperators spin_operators(int n_nuclei, int max_nuclei = kDefaultMaxBathSpins);

}  // namespace dnp
