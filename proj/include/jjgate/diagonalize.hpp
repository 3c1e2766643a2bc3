#pragma once

// Analytic diagonalization of the even-order multiple-quantum Hamiltonian:
// V = exp(-i α Q0) exp(-i β Q2) with the zero-quantum Q0 = 2(I_kx I_ly - I_ky I_lx)
// and double-quantum Q2 = 2(I_kx I_ly + I_ky I_lx), bringing H_e to
// Ω'_k I_kz + Ω'_l I_lz. Both arctangent branches are supported.

#include "jjgate/junction.hpp"

namespace jjgate {

enum class Branch { plus, minus };

struct DiagonalizationSolution {
  double alpha1 = 0.0;  // -α + β
  double alpha2 = 0.0;  // α + β
  double alpha = 0.0;
  double beta = 0.0;
  double omega_k_prime = 0.0;
  double omega_l_prime = 0.0;
  double delta = 0.0;
  Branch branch = Branch::plus;
};

inline Matrix q0_matrix() {
  return pauli_embed(spin_pair_op(2, 0, PauliAxis::x, 1, PauliAxis::y, 2.0)) -
         pauli_embed(spin_pair_op(2, 0, PauliAxis::y, 1, PauliAxis::x, 2.0));
}

inline Matrix q2_matrix() {
  return pauli_embed(spin_pair_op(2, 0, PauliAxis::x, 1, PauliAxis::y, 2.0)) +
         pauli_embed(spin_pair_op(2, 0, PauliAxis::y, 1, PauliAxis::x, 2.0));
}

/// V = exp(-i α Q0) exp(-i β Q2). Always unitary; Q0 and Q2 commute.
inline Matrix build_v(double alpha, double beta) {
  return herm_exp(q0_matrix(), alpha) * herm_exp(q2_matrix(), beta);
}

namespace detail {

// Residual of the two off-diagonal conditions at (α1, α2).
inline double angle_equation_residual(const SpinParams& s, double a1, double a2) {
  const double pj = s.pi_j();
  const double r1 = s.omega_k * std::sin(a1) * std::cos(a2) +
                    s.omega_l * std::cos(a1) * std::sin(a2) -
                    pj * std::sin(a1) * std::sin(a2);
  const double r2 = s.omega_k * std::cos(a1) * std::sin(a2) +
                    s.omega_l * std::sin(a1) * std::cos(a2) +
                    pj * std::cos(a1) * std::cos(a2);
  return std::max(std::abs(r1), std::abs(r2));
}

}  // namespace detail

/// Solve the angle equations for the requested branch. Requires πJ, Ω_k and
/// Ω_l all nonzero (δ and the α1 equation are undefined otherwise; with
/// πJ = 0 the Hamiltonian is already diagonal and no rotation is needed).
inline DiagonalizationSolution solve_angles(const SpinParams& s, Branch branch = Branch::plus) {
  const double pj = s.pi_j();
  if (pj == 0.0 || s.omega_k == 0.0 || s.omega_l == 0.0)
    throw std::domain_error(
        "solve_angles: degenerate parameters (need πJ, Ω_k, Ω_l all nonzero)");

  DiagonalizationSolution d;
  d.branch = branch;
  d.delta = (s.omega_l * s.omega_l - s.omega_k * s.omega_k + pj * pj) / (pj * s.omega_k);

  // Roots of t² + δt - 1 = 0, evaluated without cancellation. Their product
  // is -1, so the plus root is always positive and the minus root negative.
  const double split = std::sqrt(d.delta * d.delta + 4.0);
  double tan_a2;
  if (branch == Branch::plus)
    tan_a2 = d.delta >= 0.0 ? 2.0 / (d.delta + split) : 0.5 * (-d.delta + split);
  else
    tan_a2 = d.delta >= 0.0 ? -0.5 * (d.delta + split) : -2.0 / (split - d.delta);

  const double tan_a1 = -pj / s.omega_l - (s.omega_k / s.omega_l) * tan_a2;
  d.alpha2 = std::atan(tan_a2);
  d.alpha1 = std::atan(tan_a1);

  // The angle equations are invariant under α1 → α1 + π, so the principal
  // branch already satisfies them; keep the retry as a guard.
  if (detail::angle_equation_residual(s, d.alpha1, d.alpha2) > 1e-10)
    d.alpha1 += std::numbers::pi;

  d.alpha = 0.5 * (d.alpha2 - d.alpha1);
  d.beta = 0.5 * (d.alpha1 + d.alpha2);

  const double c1 = std::cos(d.alpha1), s1 = std::sin(d.alpha1);
  const double c2 = std::cos(d.alpha2), s2 = std::sin(d.alpha2);
  d.omega_k_prime = s.omega_k * c1 * c2 - s.omega_l * s1 * s2 - pj * c1 * s2;
  d.omega_l_prime = s.omega_l * c1 * c2 - s.omega_k * s1 * s2 - pj * s1 * c2;
  return d;
}

struct DiagonalizationResidual {
  double off_diagonal_max = 0.0;   // largest |entry| of V† H_e V off the diagonal
  double diagonal_mismatch_max = 0.0;  // largest |diagonal - (Ω'_k I_kz + Ω'_l I_lz)|
};

/// Direct matrix check of the diagonalization claim for a given solution.
inline DiagonalizationResidual verify_diagonalization(const SpinParams& s,
                                                      const DiagonalizationSolution& d) {
  const Matrix v = build_v(d.alpha, d.beta);
  const Matrix tilde = v.adjoint() * build_h_evomq(s) * v;
  const Matrix expected = pauli_embed(spin_op(2, 0, PauliAxis::z, d.omega_k_prime)) +
                          pauli_embed(spin_op(2, 1, PauliAxis::z, d.omega_l_prime));
  DiagonalizationResidual r;
  for (Eigen::Index i = 0; i < tilde.rows(); ++i) {
    for (Eigen::Index j = 0; j < tilde.cols(); ++j) {
      if (i == j) continue;
      r.off_diagonal_max = std::max(r.off_diagonal_max, std::abs(tilde(i, j)));
    }
    r.diagonal_mismatch_max =
        std::max(r.diagonal_mismatch_max, std::abs(tilde(i, i) - expected(i, i)));
  }
  return r;
}

enum class PropagatorForm { form_minus, form_plus, neither };

struct PropagatorFormReport {
  PropagatorForm form = PropagatorForm::neither;
  double distance_minus = 0.0;  // max |exp(-i H_e t) - V² exp(-i π I_kz)|
  double distance_plus = 0.0;   // max |exp(-i H_e t) - V² exp(+i π I_kz)|
  double fidelity = 0.0;        // phase fidelity against the closer form
};

/// Classify whether exp(-i H_e t_p) equals V² exp(-iπ I_kz) (form_minus) or
/// V² exp(+iπ I_kz) (form_plus). The two forms differ only by a global sign,
/// so the classification is by exact elementwise comparison; the reported
/// fidelity is the phase-invariant overlap.
inline PropagatorFormReport propagator_identity_form(const SpinParams& s,
                                                     const DiagonalizationSolution& d,
                                                     double t_p, double tol = 1e-9) {
  const Matrix u = herm_exp(build_h_evomq(s), t_p);
  const Matrix v = build_v(d.alpha, d.beta);
  const Matrix v2 = v * v;
  const Matrix kz = pauli_embed(spin_op(2, 0, PauliAxis::z));
  const Matrix form_m = v2 * herm_exp(kz, std::numbers::pi);
  const Matrix form_p = v2 * herm_exp(kz, -std::numbers::pi);

  PropagatorFormReport rep;
  rep.distance_minus = max_abs(u - form_m);
  rep.distance_plus = max_abs(u - form_p);
  if (rep.distance_minus < tol)
    rep.form = PropagatorForm::form_minus;
  else if (rep.distance_plus < tol)
    rep.form = PropagatorForm::form_plus;
  rep.fidelity = phase_fidelity(u, rep.distance_minus <= rep.distance_plus ? form_m : form_p);
  return rep;
}

}  // namespace jjgate
