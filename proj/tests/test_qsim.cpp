#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Eigenvalues>

#include "htaac/error.hpp"
#include "htaac/qsim.hpp"
#include "oracles.hpp"

using namespace htaac;

namespace {

// Dense circuit simulation: full 2^n × 2^n gate matrices, qubit a = bit a.
Eigen::MatrixXd rotation_on(int n, int q, double t) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Eigen::Index flipped = col ^ (Eigen::Index{1} << q);
    const bool one = (col >> q) & 1;
    g(col, col) = std::cos(t);
    g(flipped, col) = one ? -std::sin(t) : std::sin(t);
  }
  return g;
}

Eigen::MatrixXd cnot(int n, int control, int target) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Eigen::Index row = ((col >> control) & 1) ? col ^ (Eigen::Index{1} << target) : col;
    g(row, col) = 1.0;
  }
  return g;
}

Eigen::VectorXd dense_circuit(const Ansatz& a) {
  const Eigen::Index dim = Eigen::Index{1} << a.qubits;
  Eigen::VectorXd v = Eigen::VectorXd::Unit(dim, 0);
  for (int l = 0; l < a.layers; ++l) {
    for (int q = 0; q < a.qubits; ++q) v = rotation_on(a.qubits, q, a.theta[l * a.qubits + q]) * v;
    for (int q = 0; q + 1 < a.qubits; ++q) v = cnot(a.qubits, q, q + 1) * v;
  }
  return v;
}

Ansatz random_ansatz(int n, int layers, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  Ansatz a{n, layers, Eigen::VectorXd(n * layers)};
  for (Eigen::Index i = 0; i < a.theta.size(); ++i) a.theta[i] = u(rng);
  return a;
}

// Im⟨Φ|e^{iαW}|Φ⟩ = Σ_k |⟨v_k|Φ⟩|² sin(αλ_k).
double hadamard_oracle(const Eigen::MatrixXd& W, const Eigen::VectorXd& phi, double alpha) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(W);
  const Eigen::VectorXd overlaps = es.eigenvectors().transpose() * phi;
  double total = 0.0;
  for (Eigen::Index k = 0; k < overlaps.size(); ++k)
    total += overlaps[k] * overlaps[k] * std::sin(alpha * es.eigenvalues()[k]);
  return total;
}

}  // namespace

TEST(RealState, Validation) {
  EXPECT_THROW(RealState(Eigen::VectorXd::Ones(3).normalized()), ArgumentError);
  EXPECT_THROW(RealState(Eigen::VectorXd::Ones(1)), ArgumentError);
  EXPECT_THROW(RealState(Eigen::VectorXd::Ones(4)), ArgumentError);
  const RealState s(Eigen::VectorXd::Ones(8).normalized());
  EXPECT_EQ(s.qubits(), 3);
}

TEST(Prepare, ZeroAnglesGiveGroundState) {
  Ansatz a{3, 6, Eigen::VectorXd::Zero(18)};
  const RealState s = prepare(a);
  EXPECT_EQ(s.amplitudes(), Eigen::VectorXd::Unit(8, 0));
}

TEST(Prepare, SingleQubitRotation) {
  Ansatz a{1, 1, Eigen::VectorXd::Constant(1, 0.3)};
  const RealState s = prepare(a);
  EXPECT_NEAR(s[0], std::cos(0.3), 1e-15);
  EXPECT_NEAR(s[1], std::sin(0.3), 1e-15);
}

TEST(Prepare, MatchesDenseCircuit) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 5; ++n)
    for (int layers : {1, 2, 2 * n}) {
      const Ansatz a = random_ansatz(n, layers, rng);
      const RealState s = prepare(a);
      EXPECT_NEAR((s.amplitudes() - dense_circuit(a)).cwiseAbs().maxCoeff(), 0.0, 1e-13);
      EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-12);
    }
}

TEST(Prepare, RejectsBadShapes) {
  EXPECT_THROW(prepare(Ansatz{0, 1, Eigen::VectorXd()}), ArgumentError);
  EXPECT_THROW(prepare(Ansatz{2, 0, Eigen::VectorXd()}), ArgumentError);
  EXPECT_THROW(prepare(Ansatz{2, 2, Eigen::VectorXd::Zero(3)}), ArgumentError);
}

TEST(States, UniformAndBasis) {
  const RealState u = uniform_state(3);
  for (Eigen::Index i = 0; i < 8; ++i) EXPECT_DOUBLE_EQ(u[i], 1.0 / std::sqrt(8.0));
  const RealState b = basis_state(2, 3);
  EXPECT_EQ(b.amplitudes(), Eigen::VectorXd::Unit(4, 3));
  EXPECT_THROW(basis_state(2, 4), ArgumentError);
}

TEST(Expval, SparseMatchesDenseAndTensorPaths) {
  std::mt19937_64 rng(2);
  for (int d = 1; d <= 3; ++d) {
    const int n = d == 3 ? 2 : 3;
    const SparseSymmetric W = oracle::random_operator(n, d, 40, 1.5, rng);
    const Eigen::MatrixXd dense = oracle::dense(W);
    for (int s = 0; s < 5; ++s) {
      const RealState psi(oracle::random_unit(Eigen::Index{1} << n, rng));
      Eigen::VectorXd big = psi.amplitudes();
      for (int t = 1; t < d; ++t) big = oracle::kron(big, psi.amplitudes());
      const double ref = big.dot(dense * big);
      EXPECT_NEAR(expval(psi, W, d), ref, 1e-13);
      EXPECT_NEAR(expval_tensor(psi, W, d), ref, 1e-13);
    }
  }
}

TEST(Expval, MultilinearDistinctRegisters) {
  std::mt19937_64 rng(3);
  const SparseSymmetric W = oracle::random_operator(2, 2, 30, 1.0, rng);
  const Eigen::MatrixXd dense = oracle::dense(W);
  const std::vector<Eigen::VectorXd> regs{oracle::random_unit(4, rng), oracle::random_unit(4, rng)};
  const Eigen::VectorXd big = oracle::kron(regs[0], regs[1]);
  EXPECT_NEAR(multilinear_expval(W, regs), big.dot(dense * big), 1e-14);
  EXPECT_NEAR(tensor_product(regs).dot(big), big.squaredNorm(), 1e-14);
  const std::vector<Eigen::VectorXd> wrong{regs[0]};
  EXPECT_THROW(multilinear_expval(W, wrong), ArgumentError);
}

TEST(Expval, MonomialContractionConvention) {
  const PolynomialObjective obj = build_objective(generate_random(6, 20, 3, 4));
  const OperatorSet ops = build_operators(obj);
  std::mt19937_64 rng(5);
  const RealState psi(oracle::random_unit(8, rng));
  for (int d = 1; d <= 2; ++d)
    EXPECT_NEAR(expval(psi, ops.minus[d - 1], d),
                oracle::monomial_contraction(obj, psi.amplitudes(), d), 1e-14);
}

TEST(PauliZ, MatchesDirectSums) {
  std::mt19937_64 rng(6);
  const int n = 4;
  const Eigen::VectorXd psi = oracle::random_unit(16, rng);
  const Eigen::VectorXd z = pauli_z_expectations(psi);
  ASSERT_EQ(z.size(), n + n * (n - 1) / 2);
  auto sign = [](Eigen::Index i, int q) { return ((i >> q) & 1) ? -1.0 : 1.0; };
  int k = 0;
  for (int a = 0; a < n; ++a, ++k) {
    double ref = 0;
    for (Eigen::Index i = 0; i < 16; ++i) ref += psi[i] * psi[i] * sign(i, a);
    EXPECT_NEAR(z[k], ref, 1e-15);
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b, ++k) {
      double ref = 0;
      for (Eigen::Index i = 0; i < 16; ++i) ref += psi[i] * psi[i] * sign(i, a) * sign(i, b);
      EXPECT_NEAR(z[k], ref, 1e-15);
    }
  const Eigen::VectorXd ground = pauli_z_expectations(basis_state(n, 0));
  EXPECT_EQ(ground, Eigen::VectorXd::Ones(z.size()));
}

TEST(Hadamard, MatchesSpectralOracle) {
  std::mt19937_64 rng(7);
  for (double norm : {0.5, 3.0, 40.0}) {
    const SparseSymmetric W = oracle::random_operator(2, 2, 25, norm, rng);
    const RealState psi(oracle::random_unit(4, rng));
    const Eigen::VectorXd big = oracle::kron(psi.amplitudes(), psi.amplitudes());
    for (double alpha : {0.01, 0.3, 1.0}) {
      HadamardConfig cfg;
      cfg.alpha = alpha;
      EXPECT_NEAR(hadamard_test_im(psi, W, cfg, 2), hadamard_oracle(oracle::dense(W), big, alpha),
                  1e-12);
    }
  }
}

TEST(Hadamard, UnitaryPreservesNorm) {
  std::mt19937_64 rng(8);
  const SparseSymmetric W = oracle::random_operator(3, 1, 20, 5.0, rng);
  const Eigen::VectorXcd v = oracle::random_unit(8, rng).cast<std::complex<double>>();
  const Eigen::VectorXcd out = apply_unitary(W, 2.0, v, {});
  EXPECT_NEAR(out.norm(), 1.0, 1e-12);
}

TEST(Hadamard, QuadraticConvergenceInAlpha) {
  std::mt19937_64 rng(9);
  const SparseSymmetric W = oracle::random_operator(3, 1, 30, 2.0, rng);
  const RealState psi(oracle::random_unit(8, rng));
  const double exact = expval(psi, W, 1);
  const Eigen::MatrixXd dense = oracle::dense(W);
  const double third = psi.amplitudes().dot(dense * dense * dense * psi.amplitudes());
  double previous = 0.0;
  for (double alpha : {0.2, 0.1, 0.05, 0.025}) {
    HadamardConfig cfg;
    cfg.alpha = alpha;
    const double err = hadamard_test_im(psi, W, cfg, 1) / alpha - exact;
    EXPECT_NEAR(err, -alpha * alpha * third / 6.0, 1e-3 * alpha * alpha + 1e-13);
    if (previous != 0.0) EXPECT_NEAR(previous / err, 4.0, 0.05);
    previous = err;
  }
}

TEST(Hadamard, EmptyOperatorAndErrors) {
  const SparseSymmetric empty(2, 2, SparseSymmetric::Matrix(16, 16));
  const RealState psi = uniform_state(2);
  EXPECT_EQ(hadamard_test_im(psi, empty, {}, 2), 0.0);

  std::mt19937_64 rng(10);
  const SparseSymmetric W = oracle::random_operator(2, 1, 10, 1.0, rng);
  HadamardConfig exact;
  exact.mode = EstimatorMode::Exact;
  EXPECT_THROW(hadamard_test_im(psi, W, exact, 1), ArgumentError);
  HadamardConfig bad_alpha;
  bad_alpha.alpha = 0.0;
  EXPECT_THROW(hadamard_test_im(psi, W, bad_alpha, 1), ArgumentError);
  HadamardConfig huge;
  huge.alpha = 1e6;
  huge.max_substeps = 16;
  EXPECT_THROW(hadamard_test_im(psi, W, huge, 1), ConvergenceError);
  HadamardConfig low_order;
  low_order.taylor_order = 3;
  low_order.alpha = 0.25;
  EXPECT_THROW(hadamard_test_im(psi, W, low_order, 1), ConvergenceError);
  EXPECT_THROW(hadamard_test_im(psi, W, HadamardConfig{}, 2), ArgumentError);
}
