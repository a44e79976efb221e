#pragma once

// Small dense linear-algebra helpers shared by the Hamiltonian builders and
// the evolution engine.

#include <Eigen/Dense>
#include <complex>

namespace dnp {

using cxd = std::complex<double>;

// Kronecker product A (x) B.
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double hermiticity_error(const Eigen::MatrixXcd& m) {
  const double scale = m.norm();
  const double err = (m - m.adjoint()).norm();
  return scale > 0 ? err / scale : err;
}

inline bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12) {
  return hermiticity_error(m) <= tol;
}

// 1/2 * trace norm of (a - b); both inputs Hermitian.
inline double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline double unitarity_error(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).norm();
}

}  // namespace dnp
