#pragma once

// Shared test helpers. The brute-force constructions here are deliberately
// independent of the library's embedding and exponential paths so they can
// serve as oracles.

#include "jjgate/design.hpp"

#include <random>

namespace testsupport {

using jjgate::complexd;
using jjgate::Matrix;

// Plain-loop Kronecker product, independent of jjgate::kron.
inline Matrix test_kron(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix sigma_y() {
  Matrix m(2, 2);
  m << 0, complexd(0, -1), complexd(0, 1), 0;
  return m;
}
inline Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline Matrix id2() { return Matrix::Identity(2, 2); }

inline Matrix random_hermitian(std::mt19937& rng, Eigen::Index dim, double spectral_norm) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = complexd(dist(rng), dist(rng));
  Matrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const double norm = std::max(std::abs(es.eigenvalues().minCoeff()),
                               std::abs(es.eigenvalues().maxCoeff()));
  if (norm > 0) h *= spectral_norm / norm;
  return h;
}

// Magnitude in [lo, hi] with a random sign.
inline double random_signed(std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> mag(lo, hi);
  std::bernoulli_distribution flip(0.5);
  const double v = mag(rng);
  return flip(rng) ? -v : v;
}

inline jjgate::SpinParams random_spin_params(std::mt19937& rng, double lo = 0.1, double hi = 5.0) {
  jjgate::SpinParams s;
  s.omega_k = random_signed(rng, lo, hi);
  s.omega_l = random_signed(rng, lo, hi);
  s.j_kl = random_signed(rng, lo, hi) / std::numbers::pi;  // πJ in [lo, hi]
  return s;
}

inline jjgate::JunctionParams random_junction_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  jjgate::JunctionParams p;
  p.e_ch_k = u(rng);
  p.e_ch_l = u(rng);
  p.e_j_k = random_signed(rng, 0.1, 5.0);
  p.e_j_l = random_signed(rng, 0.1, 5.0);
  p.e_l = random_signed(rng, 0.1, 5.0);
  return p;
}

// Closed-form (mu, nu) satisfying {gamma ratio, realized angle = lambda mod 2pi}
// on the plus branch, derived independently from the angle equations:
//   alpha1 = lambda/4 shifted by -pi/2 until tan(alpha1) < 0,
//   mu = (1 + gamma^2 T^2) / (gamma (1 + T^2)),  nu = T (gamma - mu),  T = tan(alpha1).
// Used to generate valid designs quickly; every use is still certified by
// direct matrix checks.
inline std::pair<double, double> analytic_design(double lambda, int m) {
  const double gamma = jjgate::gamma_for(m).value();
  double a1 = std::remainder(lambda, 2.0 * std::numbers::pi) / 4.0;
  if (std::tan(a1) == 0.0) throw std::invalid_argument("analytic_design: lambda is 0 mod 2pi");
  if (std::tan(a1) > 0.0) a1 -= std::numbers::pi / 2.0;
  const double t = std::tan(a1);
  const double mu = (1.0 + gamma * gamma * t * t) / (gamma * (1.0 + t * t));
  const double nu = t * (gamma - mu);
  return {mu, nu};
}

// Assemble a full DesignSolution from the analytic (mu, nu).
inline jjgate::DesignSolution analytic_design_solution(double lambda, int m) {
  const auto [mu, nu] = analytic_design(lambda, m);
  jjgate::DesignSolution d;
  d.lambda_kl = lambda;
  d.m = m;
  d.gamma = jjgate::gamma_for(m);
  d.mu = mu;
  d.nu = nu;
  d.p = std::tan(0.25 * lambda);
  d.method = jjgate::DesignMethod::numeric;
  const jjgate::DiagonalizationSolution diag =
      jjgate::solve_angles(jjgate::spin_params_for(d), jjgate::Branch::plus);
  d.omega_k_prime = diag.omega_k_prime;
  d.omega_l_prime = diag.omega_l_prime;
  d.t_p = std::abs((2.0 * m + 1.0) * std::numbers::pi / diag.omega_k_prime);
  d.realized_lambda = 4.0 * diag.alpha1;
  return d;
}

}  // namespace testsupport
