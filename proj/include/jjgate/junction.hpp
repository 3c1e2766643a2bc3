#pragma once

// The coupled SQUID-controlled junction pair: raw two-qubit Hamiltonian,
// rotating-frame reduction and its even-order multiple-quantum form.
//
// All energies are angular frequencies (ħ = 1); time carries inverse units.

#include "jjgate/pauli.hpp"

#include <numbers>

namespace jjgate {

/// Charging / Josephson / inductive energy scales of the two junctions.
/// The dependence on gate voltages and external fluxes is not modeled; the
/// energies themselves are the inputs.
struct JunctionParams {
  double e_ch_k = 0.0;
  double e_ch_l = 0.0;
  double e_j_k = 1.0;
  double e_j_l = 1.0;
  double e_l = 1.0;  // inductive scale coupling the two junctions
};

/// Rotating-frame parameters: effective one-qubit frequencies, the coupling
/// constant J_kl (the coupling term is π J_kl · 2 I_ky I_ly) and the frame
/// rotation angles about y.
struct SpinParams {
  double omega_k = 0.0;
  double omega_l = 0.0;
  double j_kl = 0.0;
  double phi_k = 0.0;
  double phi_l = 0.0;

  double pi_j() const { return std::numbers::pi * j_kl; }
};

namespace detail {

inline void require_junction_invariants(const JunctionParams& p) {
  if (p.e_j_k == 0.0 || p.e_j_l == 0.0)
    throw std::invalid_argument("junction: Josephson energies must be nonzero");
  if (p.e_l == 0.0) throw std::invalid_argument("junction: inductive scale must be nonzero");
}

}  // namespace detail

/// Raw 4x4 Hamiltonian of the coupled pair,
///   E_ch^k σ_z^k + E_ch^l σ_z^l - E_J^k σ_x^k / 2 - E_J^l σ_x^l / 2
///   - (E_J^k E_J^l / E_L) σ_y^k σ_y^l.
inline Matrix build_h_raw(const JunctionParams& p) {
  detail::require_junction_invariants(p);
  Matrix h = pauli_embed(spin_op(2, 0, PauliAxis::z, 2.0 * p.e_ch_k));
  h += pauli_embed(spin_op(2, 1, PauliAxis::z, 2.0 * p.e_ch_l));
  h += pauli_embed(spin_op(2, 0, PauliAxis::x, -p.e_j_k));
  h += pauli_embed(spin_op(2, 1, PauliAxis::x, -p.e_j_l));
  h += pauli_embed(spin_pair_op(2, 0, PauliAxis::y, 1, PauliAxis::y, -4.0 * p.e_j_k * p.e_j_l / p.e_l));
  return h;
}

/// Rotating-frame reduction. The frame angle stored here is
/// arctan(2 E_ch / E_J) + π/2: the extra quarter turn is what actually sends
/// the one-qubit terms onto the z axis (the arctan value alone lands them on
/// x), and U_y† H_raw U_y with U_y = exp(-i φ_k I_ky) exp(-i φ_l I_ly) then
/// reproduces build_h_rotated exactly. The Ω_i values follow the usual
/// -2 E_ch sin - E_J cos combination evaluated at the arctan angle.
inline SpinParams to_spin_params(const JunctionParams& p) {
  detail::require_junction_invariants(p);
  SpinParams s;
  const double phi_k_arctan = std::atan(2.0 * p.e_ch_k / p.e_j_k);
  const double phi_l_arctan = std::atan(2.0 * p.e_ch_l / p.e_j_l);
  s.omega_k = -2.0 * p.e_ch_k * std::sin(phi_k_arctan) - p.e_j_k * std::cos(phi_k_arctan);
  s.omega_l = -2.0 * p.e_ch_l * std::sin(phi_l_arctan) - p.e_j_l * std::cos(phi_l_arctan);
  s.phi_k = phi_k_arctan + std::numbers::pi / 2.0;
  s.phi_l = phi_l_arctan + std::numbers::pi / 2.0;
  s.j_kl = (-2.0 * p.e_j_k * p.e_j_l / p.e_l) / std::numbers::pi;
  return s;
}

/// The frame rotation U_y = exp(-i φ_k I_ky) exp(-i φ_l I_ly).
inline Matrix frame_rotation(const SpinParams& s) {
  return herm_exp(pauli_embed(spin_op(2, 0, PauliAxis::y)), s.phi_k) *
         herm_exp(pauli_embed(spin_op(2, 1, PauliAxis::y)), s.phi_l);
}

/// Ω_k I_kz + Ω_l I_lz + π J_kl · 2 I_ky I_ly.
inline Matrix build_h_rotated(const SpinParams& s) {
  return pauli_embed(spin_op(2, 0, PauliAxis::z, s.omega_k)) +
         pauli_embed(spin_op(2, 1, PauliAxis::z, s.omega_l)) +
         pauli_embed(spin_pair_op(2, 0, PauliAxis::y, 1, PauliAxis::y, 2.0 * s.pi_j()));
}

/// Zero-quantum coupling piece I_kx I_lx + I_ky I_ly.
inline Matrix zero_quantum_coupling() {
  return pauli_embed(spin_pair_op(2, 0, PauliAxis::x, 1, PauliAxis::x)) +
         pauli_embed(spin_pair_op(2, 0, PauliAxis::y, 1, PauliAxis::y));
}

/// Double-quantum coupling piece -I_kx I_lx + I_ky I_ly.
inline Matrix double_quantum_coupling() {
  return pauli_embed(spin_pair_op(2, 0, PauliAxis::x, 1, PauliAxis::x, -1.0)) +
         pauli_embed(spin_pair_op(2, 0, PauliAxis::y, 1, PauliAxis::y));
}

/// Even-order multiple-quantum form: longitudinal terms plus the coupling
/// split into its zero- and double-quantum pieces. Entrywise this equals
/// build_h_rotated; the construction path differs.
inline Matrix build_h_evomq(const SpinParams& s) {
  return pauli_embed(spin_op(2, 0, PauliAxis::z, s.omega_k)) +
         pauli_embed(spin_op(2, 1, PauliAxis::z, s.omega_l)) +
         s.pi_j() * zero_quantum_coupling() + s.pi_j() * double_quantum_coupling();
}

/// Intermediate frame with the one-qubit terms along x,
///   Ω_k I_kx + Ω_l I_lx + π J_kl · 2 I_ky I_ly.
/// This is the frame the bare arctan rotation produces; conjugating it with
/// exp(i π/2 F_y) gives build_h_evomq.
inline Matrix build_h_transverse(const SpinParams& s) {
  return pauli_embed(spin_op(2, 0, PauliAxis::x, s.omega_k)) +
         pauli_embed(spin_op(2, 1, PauliAxis::x, s.omega_l)) +
         pauli_embed(spin_pair_op(2, 0, PauliAxis::y, 1, PauliAxis::y, 2.0 * s.pi_j()));
}

/// Collective one-qubit operator F_μ = I_kμ + I_lμ on the pair.
inline Matrix collective_op(PauliAxis axis) {
  return pauli_embed(spin_op(2, 0, axis)) + pauli_embed(spin_op(2, 1, axis));
}

}  // namespace jjgate
