#include <catch2/catch.hpp>

#include "support.hpp"

using namespace jjgate;
using namespace testsupport;

namespace {

std::vector<double> sorted_spectrum(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("build_v at zero angles is the identity") {
  CHECK(max_abs(build_v(0.0, 0.0) - Matrix::Identity(4, 4)) < 1e-14);
}

TEST_CASE("build_v block structure follows the coherence orders of its generators") {
  // zero-quantum generator alone: |00> and |11> stay untouched
  const Matrix vzq = build_v(0.7, 0.0);
  for (Eigen::Index basis : {0, 3}) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      const double expected = j == basis ? 1.0 : 0.0;
      CHECK(std::abs(vzq(basis, j)) == Approx(expected).margin(1e-13));
      CHECK(std::abs(vzq(j, basis)) == Approx(expected).margin(1e-13));
    }
  }
  // double-quantum generator alone: |01> and |10> stay untouched
  const Matrix vdq = build_v(0.0, -0.4);
  for (Eigen::Index basis : {1, 2}) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      const double expected = j == basis ? 1.0 : 0.0;
      CHECK(std::abs(vdq(basis, j)) == Approx(expected).margin(1e-13));
    }
  }
}

TEST_CASE("build_v is unitary and its generators commute") {
  CHECK(max_abs(q0_matrix() * q2_matrix() - q2_matrix() * q0_matrix()) < 1e-14);
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = angle(rng), b = angle(rng);
    const Matrix v = build_v(a, b);
    CHECK(unitarity_defect(v) < 1e-12);
    // commuting generators: the two-factor form equals the single exponential
    CHECK(max_abs(v - herm_exp(a * q0_matrix() + b * q2_matrix(), 1.0)) < 1e-12);
  }
}

TEST_CASE("golden angles for Omega_k = Omega_l = 1, piJ = 1") {
  const SpinParams s{1.0, 1.0, 1.0 / std::numbers::pi};
  const DiagonalizationSolution d = solve_angles(s, Branch::plus);
  CHECK(d.delta == Approx(1.0).margin(1e-14));
  CHECK(std::tan(d.alpha2) == Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-12));
  CHECK(d.alpha2 == Approx(0.553574).margin(1e-6));
  CHECK(std::tan(d.alpha1) == Approx(-(1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
  // algebraic identities between the stored angles
  CHECK(d.alpha == Approx(0.5 * (d.alpha2 - d.alpha1)).margin(1e-15));
  CHECK(d.beta == Approx(0.5 * (d.alpha1 + d.alpha2)).margin(1e-15));

  const DiagonalizationResidual r = verify_diagonalization(s, d);
  CHECK(r.off_diagonal_max < 1e-10);
  CHECK(r.diagonal_mismatch_max < 1e-10);
}

TEST_CASE("angle equations hold to solver precision at the returned solution") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const SpinParams s = random_spin_params(rng);
    for (Branch branch : {Branch::plus, Branch::minus}) {
      const DiagonalizationSolution d = solve_angles(s, branch);
      const double pj = s.pi_j();
      const double r1 = s.omega_k * std::sin(d.alpha1) * std::cos(d.alpha2) +
                        s.omega_l * std::cos(d.alpha1) * std::sin(d.alpha2) -
                        pj * std::sin(d.alpha1) * std::sin(d.alpha2);
      const double r2 = s.omega_k * std::cos(d.alpha1) * std::sin(d.alpha2) +
                        s.omega_l * std::sin(d.alpha1) * std::cos(d.alpha2) +
                        pj * std::cos(d.alpha1) * std::cos(d.alpha2);
      CHECK(std::abs(r1) < 1e-12);
      CHECK(std::abs(r2) < 1e-12);
    }
  }
}

TEST_CASE("spectrum oracle: eigenvalues are the half sums of the effective frequencies") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const SpinParams s = random_spin_params(rng);
    for (Branch branch : {Branch::plus, Branch::minus}) {
      const DiagonalizationSolution d = solve_angles(s, branch);
      const DiagonalizationResidual r = verify_diagonalization(s, d);
      CHECK(r.off_diagonal_max < 1e-9);

      std::vector<double> predicted = {
          0.5 * (d.omega_k_prime + d.omega_l_prime), 0.5 * (d.omega_k_prime - d.omega_l_prime),
          0.5 * (-d.omega_k_prime + d.omega_l_prime), 0.5 * (-d.omega_k_prime - d.omega_l_prime)};
      std::sort(predicted.begin(), predicted.end());
      const auto actual = sorted_spectrum(build_h_evomq(s));
      for (size_t i = 0; i < 4; ++i) CHECK(actual[i] == Approx(predicted[i]).margin(1e-9));
    }
  }
}

TEST_CASE("both branches diagonalize and share the spectrum") {
  std::mt19937 rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const SpinParams s = random_spin_params(rng);
    const DiagonalizationSolution dp = solve_angles(s, Branch::plus);
    const DiagonalizationSolution dm = solve_angles(s, Branch::minus);
    CHECK(verify_diagonalization(s, dp).off_diagonal_max < 1e-9);
    CHECK(verify_diagonalization(s, dm).off_diagonal_max < 1e-9);

    const auto key = [](const DiagonalizationSolution& d) {
      std::vector<double> v = {std::abs(d.omega_k_prime + d.omega_l_prime),
                               std::abs(d.omega_k_prime - d.omega_l_prime)};
      std::sort(v.begin(), v.end());
      return v;
    };
    const auto kp = key(dp), km = key(dm);
    CHECK(kp[0] == Approx(km[0]).margin(1e-9));
    CHECK(kp[1] == Approx(km[1]).margin(1e-9));
  }
}

TEST_CASE("a perturbed solution fails the residual check") {
  const SpinParams s{1.0, 1.0, 1.0 / std::numbers::pi};
  DiagonalizationSolution d = solve_angles(s, Branch::plus);
  d.alpha1 += 0.1;
  d.alpha = 0.5 * (d.alpha2 - d.alpha1);
  d.beta = 0.5 * (d.alpha1 + d.alpha2);
  CHECK(verify_diagonalization(s, d).off_diagonal_max > 1e-3);
}

TEST_CASE("tiny coupling: angles shrink and the effective frequencies track Omega") {
  const SpinParams s{1.0, 2.0, 1e-6 / std::numbers::pi};
  const DiagonalizationSolution d = solve_angles(s, Branch::plus);
  const DiagonalizationResidual r = verify_diagonalization(s, d);
  CHECK(r.off_diagonal_max < 1e-9);
  CHECK(d.omega_k_prime == Approx(1.0).margin(1e-5));
  CHECK(d.omega_l_prime == Approx(2.0).margin(1e-5));
}

TEST_CASE("degenerate parameters are rejected") {
  CHECK_THROWS_AS(solve_angles(SpinParams{1.0, 1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(solve_angles(SpinParams{0.0, 1.0, 1.0}), std::domain_error);
  CHECK_THROWS_AS(solve_angles(SpinParams{1.0, 0.0, 1.0}), std::domain_error);
}

TEST_CASE("the effective frequency ratio never hits 0 or +/-1") {
  std::mt19937 rng(71);
  int counterexamples = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const SpinParams s = random_spin_params(rng);
    const DiagonalizationSolution d = solve_angles(s, Branch::plus);
    const double gamma = d.omega_k_prime / d.omega_l_prime;
    if (std::abs(gamma) < 1e-12 || std::abs(std::abs(gamma) - 1.0) < 1e-12) {
      ++counterexamples;
      WARN("ratio hit a forbidden value for omega_k=" << s.omega_k << " omega_l=" << s.omega_l
                                                      << " piJ=" << s.pi_j());
    }
  }
  CHECK(counterexamples == 0);
}

TEST_CASE("propagator identity at a designed time takes one of the two forms") {
  const DesignSolution d = analytic_design_solution(std::numbers::pi / 2, 1);
  const SpinParams s = spin_params_for(d);
  const DiagonalizationSolution diag = solve_angles(s, Branch::plus);
  const PropagatorFormReport rep = propagator_identity_form(s, diag, d.t_p);
  CHECK(rep.form != PropagatorForm::neither);
  CHECK(std::min(rep.distance_minus, rep.distance_plus) < 1e-9);
  CHECK(rep.fidelity > 1.0 - 1e-9);
}

TEST_CASE("propagator identity at a generic time matches neither form") {
  const SpinParams s{1.0, 1.4, 0.8 / std::numbers::pi};
  const DiagonalizationSolution diag = solve_angles(s, Branch::plus);
  const PropagatorFormReport rep = propagator_identity_form(s, diag, 0.37);
  CHECK(rep.form == PropagatorForm::neither);
}

TEST_CASE("doubling a designed time is re-evaluated and recorded") {
  // both z periods become full turns, so the propagator is a global phase
  // and matches neither k-qubit form; the classification is recorded only
  const DesignSolution d = analytic_design_solution(std::numbers::pi / 2, 1);
  const SpinParams s = spin_params_for(d);
  const DiagonalizationSolution diag = solve_angles(s, Branch::plus);
  const PropagatorFormReport rep = propagator_identity_form(s, diag, 2.0 * d.t_p);
  INFO("doubled t_p classification: " << static_cast<int>(rep.form)
       << " distances " << rep.distance_minus << " / " << rep.distance_plus);
  CHECK(std::isfinite(rep.distance_minus));
  CHECK(std::isfinite(rep.distance_plus));
}
