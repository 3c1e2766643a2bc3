#pragma once

// Dense complex matrix utilities shared by the whole library: Hermitian
// matrix exponentials, unitarity/hermiticity checks and the global-phase
// invariant gate fidelity.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace jjgate {

using complexd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Library-wide numeric tolerances. Everything is checked against one
/// profile; "strict" tightens the verification thresholds by one decade.
struct ToleranceProfile {
  double hermitian = 1e-12;
  double unitary = 1e-10;
  double residual = 1e-9;    // diagonalization / identity residuals
  double gate_equal = 1e-9;  // gates equal ⇔ 1 - fidelity < gate_equal

  static const ToleranceProfile& default_profile() {
    static const ToleranceProfile p{};
    return p;
  }
  static const ToleranceProfile& strict_profile() {
    static const ToleranceProfile p{1e-12, 1e-11, 1e-10, 1e-10};
    return p;
  }
};

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Largest elementwise deviation from M = M†.
inline double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

/// Largest elementwise deviation of U†U from the identity.
inline double unitarity_defect(const Matrix& u) {
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
  return m.rows() == m.cols() && hermiticity_defect(m) < tol;
}

inline bool is_unitary(const Matrix& u, double tol = 1e-10) {
  return u.rows() == u.cols() && unitarity_defect(u) < tol;
}

/// exp(-i * scale * generator) for a Hermitian generator, computed through
/// the spectral decomposition so the result is unitary to solver precision.
inline Matrix herm_exp(const Matrix& generator, double scale,
                       const ToleranceProfile& tol = ToleranceProfile::default_profile()) {
  if (generator.rows() != generator.cols())
    throw std::invalid_argument("herm_exp: generator must be square");
  const double defect = hermiticity_defect(generator);
  if (!(defect < tol.hermitian))
    throw std::invalid_argument("herm_exp: generator is not Hermitian (max |M - M^H| = " +
                                std::to_string(defect) + ")");
  Eigen::SelfAdjointEigenSolver<Matrix> es(generator);
  const Eigen::VectorXd& ev = es.eigenvalues();
  Eigen::VectorXcd phases(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    phases[i] = std::polar(1.0, -scale * ev[i]);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// |Tr(u†v)| / d: equals 1 exactly when u and v agree up to a global phase.
inline double phase_fidelity(const Matrix& u, const Matrix& v) {
  if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows())
    throw std::invalid_argument("phase_fidelity: dimension mismatch");
  return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

/// Phase-aligned normalized Frobenius distance, sqrt(1 - phase_fidelity).
/// Unlike 1 - fidelity it scales linearly with a small error generator,
/// which is what sequence-error scaling measurements need.
inline double phase_distance(const Matrix& u, const Matrix& v) {
  return std::sqrt(std::max(0.0, 1.0 - phase_fidelity(u, v)));
}

/// arg Tr(target† u): the global phase by which u leads the target.
inline double global_phase(const Matrix& target, const Matrix& u) {
  return std::arg((target.adjoint() * u).trace());
}

/// Kronecker product (row-major qubit ordering, first factor most significant).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace jjgate
