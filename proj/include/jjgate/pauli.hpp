#pragma once

// Spin-1/2 product-operator vocabulary: products of I_{qμ} = σ_{qμ}/2 with a
// real prefactor, their dense tensor embedding and the multiple-quantum
// coherence-order classifier.

#include "jjgate/matrix.hpp"

#include <numbers>
#include <set>
#include <vector>

namespace jjgate {

enum class PauliAxis : char { id, x, y, z };

/// A real multiple of a tensor product of spin-1/2 operators, e.g. the
/// coefficient 2 and factors {z, z} stand for 2 I_{kz} I_{lz}.
struct PauliProduct {
  int qubit_count = 1;
  std::vector<PauliAxis> factors;  // one entry per qubit, id for "no factor"
  double coefficient = 1.0;
};

/// Single-spin operator coeff * I_{qubit,axis} embedded in an n-qubit register.
inline PauliProduct spin_op(int qubit_count, int qubit, PauliAxis axis, double coeff = 1.0) {
  PauliProduct p;
  p.qubit_count = qubit_count;
  p.factors.assign(static_cast<size_t>(qubit_count), PauliAxis::id);
  p.factors.at(static_cast<size_t>(qubit)) = axis;
  p.coefficient = coeff;
  return p;
}

/// Two-spin product coeff * I_{a,axis_a} I_{b,axis_b}.
inline PauliProduct spin_pair_op(int qubit_count, int qubit_a, PauliAxis axis_a, int qubit_b,
                                 PauliAxis axis_b, double coeff = 1.0) {
  PauliProduct p = spin_op(qubit_count, qubit_a, axis_a, coeff);
  if (qubit_a == qubit_b) throw std::invalid_argument("spin_pair_op: qubits must differ");
  p.factors.at(static_cast<size_t>(qubit_b)) = axis_b;
  return p;
}

namespace detail {

inline const Matrix& half_sigma(PauliAxis axis) {
  static const Matrix id = Matrix::Identity(2, 2);
  static const Matrix sx = [] { Matrix m(2, 2); m << 0, 0.5, 0.5, 0; return m; }();
  static const Matrix sy = [] {
    Matrix m(2, 2);
    m << 0, complexd(0, -0.5), complexd(0, 0.5), 0;
    return m;
  }();
  static const Matrix sz = [] { Matrix m(2, 2); m << 0.5, 0, 0, -0.5; return m; }();
  switch (axis) {
    case PauliAxis::x: return sx;
    case PauliAxis::y: return sy;
    case PauliAxis::z: return sz;
    default: return id;
  }
}

}  // namespace detail

/// Dense 2^n x 2^n realization. Qubit 0 is the most significant bit; each
/// labeled factor contributes σ/2, identity factors contribute 1 (not 1/2).
inline Matrix pauli_embed(const PauliProduct& p) {
  if (p.qubit_count < 1) throw std::invalid_argument("pauli_embed: need at least one qubit");
  if (p.qubit_count > 10) throw std::invalid_argument("pauli_embed: qubit_count > 10 refused");
  if (p.factors.size() != static_cast<size_t>(p.qubit_count))
    throw std::invalid_argument("pauli_embed: one factor label required per qubit");
  Matrix out = detail::half_sigma(p.factors[0]);
  for (size_t q = 1; q < p.factors.size(); ++q) out = kron(out, detail::half_sigma(p.factors[q]));
  return p.coefficient * out;
}

/// Whether two products commute; they anticommute otherwise. Decided from the
/// labels alone: an odd number of positions with distinct non-identity axes
/// flips the sign.
inline bool products_commute(const PauliProduct& a, const PauliProduct& b) {
  if (a.qubit_count != b.qubit_count)
    throw std::invalid_argument("products_commute: qubit counts differ");
  int clashes = 0;
  for (size_t q = 0; q < a.factors.size(); ++q) {
    if (a.factors[q] != PauliAxis::id && b.factors[q] != PauliAxis::id &&
        a.factors[q] != b.factors[q])
      ++clashes;
  }
  return clashes % 2 == 0;
}

/// Coherence orders present in an operator, read off by conjugating with
/// collective z rotations over a 16-point grid and Fourier-fitting the
/// e^{-i p φ} components. Orders are bounded by the qubit count.
inline std::set<int> mq_classify(const Matrix& op, int qubit_count) {
  if (qubit_count < 1 || qubit_count > 7)
    throw std::invalid_argument("mq_classify: qubit_count out of range");
  PauliProduct zsum_term = spin_op(qubit_count, 0, PauliAxis::z);
  Matrix zsum = pauli_embed(zsum_term);
  for (int q = 1; q < qubit_count; ++q) zsum += pauli_embed(spin_op(qubit_count, q, PauliAxis::z));

  constexpr int grid = 16;
  std::vector<Matrix> rotated;
  rotated.reserve(grid);
  for (int j = 0; j < grid; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / grid;
    Matrix r = herm_exp(zsum, phi);
    rotated.push_back(r * op * r.adjoint());
  }

  const double scale = std::max(1.0, max_abs(op));
  std::set<int> orders;
  for (int p = -qubit_count; p <= qubit_count; ++p) {
    Matrix comp = Matrix::Zero(op.rows(), op.cols());
    for (int j = 0; j < grid; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / grid;
      comp += std::polar(1.0 / grid, p * phi) * rotated[static_cast<size_t>(j)];
    }
    if (max_abs(comp) > 1e-9 * scale) orders.insert(p);
  }
  return orders;
}

inline std::set<int> mq_classify(const PauliProduct& p) {
  return mq_classify(pauli_embed(p), p.qubit_count);
}

}  // namespace jjgate
