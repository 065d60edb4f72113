#include <gtest/gtest.h>

#include <random>

#include "htaac/error.hpp"
#include "htaac/poly.hpp"
#include "oracles.hpp"

using namespace htaac;

namespace {

const TermCoefficients& term(const PolynomialObjective& obj, const Monomial& m) {
  const auto it = obj.terms.find(m);
  if (it == obj.terms.end()) throw std::runtime_error("missing monomial");
  return it->second;
}

Dyadic dy(std::int64_t num, int exp) { return {num, exp}; }

}  // namespace

TEST(BuildObjective, PositiveThreeClauseHasSevenEighthTerms) {
  const PolynomialObjective obj = build_objective(parse_dimacs("p cnf 3 1\n1 2 3 0\n"));
  EXPECT_EQ(obj.degree_cap, 2);
  EXPECT_EQ(obj.num_y, 4);
  EXPECT_EQ(obj.qubits, 2);
  ASSERT_EQ(obj.terms.size(), 7u);
  const Dyadic eighth = dy(1, 3), zero{};
  for (const Monomial& m : {Monomial{0, 1}, Monomial{0, 2}, Monomial{0, 3}, Monomial{0, 1, 2, 3}}) {
    EXPECT_EQ(term(obj, m).b, eighth);
    EXPECT_EQ(term(obj, m).a, zero);
  }
  for (const Monomial& m : {Monomial{1, 2}, Monomial{1, 3}, Monomial{2, 3}}) {
    EXPECT_EQ(term(obj, m).a, eighth);
    EXPECT_EQ(term(obj, m).b, zero);
  }
}

TEST(BuildObjective, TwoClause) {
  const PolynomialObjective obj = build_objective(parse_dimacs("p cnf 2 1\n1 2 0\n"));
  EXPECT_EQ(obj.degree_cap, 1);
  ASSERT_EQ(obj.terms.size(), 3u);
  EXPECT_EQ(term(obj, {0, 1}).b, dy(1, 2));
  EXPECT_EQ(term(obj, {0, 2}).b, dy(1, 2));
  EXPECT_EQ(term(obj, {1, 2}).a, dy(1, 2));
}

TEST(BuildObjective, UnitClause) {
  const PolynomialObjective obj = build_objective(parse_dimacs("p cnf 1 1\n1 0\n"));
  ASSERT_EQ(obj.terms.size(), 1u);
  EXPECT_EQ(term(obj, {0, 1}).b, dy(1, 1));
  EXPECT_EQ(term(obj, {0, 1}).a, Dyadic{});
  const PolynomialObjective neg = build_objective(parse_dimacs("p cnf 1 1\n-1 0\n"));
  EXPECT_EQ(term(neg, {0, 1}).a, dy(1, 1));
}

TEST(BuildObjective, TautologyAddsConstant) {
  const PolynomialObjective obj = build_objective(parse_dimacs("p cnf 2 2\n1 -1 0\n2 0\n"));
  EXPECT_EQ(obj.constant, Dyadic::integer(1));
}

TEST(BuildObjective, DegreeCapEnforced) {
  const CnfInstance five = parse_dimacs("p cnf 5 1\n1 2 3 4 5 0\n");
  EXPECT_NO_THROW(build_objective(five));  // D = 3
  EXPECT_THROW(build_objective(five, 2), ArgumentError);
  const CnfInstance seven = parse_dimacs("p cnf 7 1\n1 2 3 4 5 6 7 0\n");
  EXPECT_THROW(build_objective(seven), ArgumentError);
}

TEST(Evaluate, AppendixAllTrue) {
  const PolynomialObjective obj = build_objective(parse_dimacs(oracle::kAppendixDimacs));
  EXPECT_EQ(evaluate(obj, Assignment::all_true(4)), 2.0);
}

TEST(Evaluate, AppendixMatchesDisplayedPolynomial) {
  const PolynomialObjective obj = build_objective(parse_dimacs(oracle::kAppendixDimacs));
  for (int mask = 0; mask < 16; ++mask) {
    Eigen::VectorXi y(4);
    for (int i = 0; i < 4; ++i) y[i] = (mask >> i & 1) ? -1 : 1;
    const double displayed =
        0.25 * (y[0] * y[3] - y[1] * y[2] + y[0] * y[1] * y[2] * y[3]) + 7.0 / 4.0;
    EXPECT_DOUBLE_EQ(evaluate(obj, Assignment(y)), displayed);
  }
  // Collapsed coefficients b − a of the displayed monomials.
  EXPECT_EQ(term(obj, {0, 3}).b - term(obj, {0, 3}).a, dy(1, 2));
  EXPECT_EQ(term(obj, {1, 2}).b - term(obj, {1, 2}).a, -dy(1, 2));
  EXPECT_EQ(term(obj, {0, 1, 2, 3}).b - term(obj, {0, 1, 2, 3}).a, dy(1, 2));
  EXPECT_EQ(obj.constant_part(), dy(7, 2));
}

TEST(Evaluate, ExhaustiveExactnessAgainstCount) {
  for (int trial = 0; trial < 12; ++trial) {
    const int k = 1 + trial % 5;
    const CnfInstance inst = generate_random(9, 25, k, 100 + trial);
    const PolynomialObjective obj = build_objective(inst);
    for (std::uint64_t mask = 0; mask < (1u << 9); ++mask) {
      const Assignment y = Assignment::from_mask(9, mask);
      ASSERT_EQ(evaluate_exact(obj, y), Dyadic::integer(count_satisfied(inst, y)));
      ASSERT_EQ(evaluate_exact(obj, y.flipped()), Dyadic::integer(count_satisfied(inst, y)));
    }
  }
}

TEST(Evaluate, LengthMismatch) {
  const PolynomialObjective obj = build_objective(parse_dimacs(oracle::kAppendixDimacs));
  EXPECT_THROW(evaluate(obj, Assignment::all_true(3)), ArgumentError);
}

TEST(Objective, EvenDegreeAndNonnegativeCoefficients) {
  const PolynomialObjective obj = build_objective(generate_random(12, 60, 3, 3));
  for (const auto& [m, c] : obj.terms) {
    EXPECT_EQ(m.size() % 2, 0u);
    EXPECT_LE(m.size(), 4u);
    EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
    EXPECT_GE(c.a.numerator, 0);
    EXPECT_GE(c.b.numerator, 0);
  }
}

TEST(WMatrices, MaxTwoSatEntriesAreHalfDifferences) {
  const PolynomialObjective obj = build_objective(parse_dimacs("p cnf 3 2\n1 -2 0\n2 3 0\n"));
  const WMatrices w = w_matrices(obj, 1);
  EXPECT_EQ(w.minus.dim(), 4);
  for (const auto& [m, c] : obj.terms) {
    const double expect = (c.a.value() - c.b.value()) / 2.0;
    EXPECT_DOUBLE_EQ(w.minus.entry(m[0], m[1]), expect);
    EXPECT_DOUBLE_EQ(w.minus.entry(m[1], m[0]), expect);
    EXPECT_DOUBLE_EQ(w.plus.entry(m[0], m[1]), (c.a.value() + c.b.value()) / 2.0);
  }
}

TEST(WMatrices, QuarticPlacementAndContraction) {
  // (¬x1 ∨ x2 ∨ x3): the y0y1y2y3 term is (1 − m)/8, so a = 1/8, b = 0.
  const PolynomialObjective obj = build_objective(parse_dimacs("p cnf 3 1\n-1 2 3 0\n"));
  EXPECT_EQ(term(obj, {0, 1, 2, 3}).a, dy(1, 3));
  EXPECT_EQ(term(obj, {0, 1, 2, 3}).b, Dyadic{});
  const WMatrices w = w_matrices(obj, 2);
  const int n = obj.qubits;
  const std::int64_t row = (0 << n) | 2, col = (1 << n) | 3;
  EXPECT_DOUBLE_EQ(w.minus.entry(row, col), 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(w.minus.entry(col, row), 1.0 / 16.0);
  EXPECT_EQ(w.minus.nonzeros(), 2);

  std::mt19937_64 rng(4);
  for (int s = 0; s < 10; ++s) {
    const Eigen::VectorXd psi = oracle::random_unit(4, rng);
    const Eigen::VectorXd big = oracle::kron(psi, psi);
    const double via_matrix = big.dot(oracle::dense(w.minus) * big);
    EXPECT_NEAR(via_matrix, psi[0] * psi[1] * psi[2] * psi[3] / 8.0, 1e-15);
  }
}

TEST(WMatrices, DenseContractionMatchesMonomialSum) {
  const PolynomialObjective obj = build_objective(generate_random(7, 30, 3, 8));
  ASSERT_EQ(obj.qubits, 3);
  std::mt19937_64 rng(5);
  for (int d = 1; d <= 2; ++d) {
    const WMatrices w = w_matrices(obj, d);
    const Eigen::MatrixXd plus = oracle::dense(w.plus), minus = oracle::dense(w.minus);
    for (int s = 0; s < 5; ++s) {
      const Eigen::VectorXd psi = oracle::random_unit(8, rng);
      const Eigen::VectorXd big = d == 1 ? psi : oracle::kron(psi, psi);
      EXPECT_NEAR(big.dot(minus * big), oracle::monomial_contraction(obj, psi, d), 1e-14);
      EXPECT_NEAR(big.dot(plus * big), oracle::monomial_contraction(obj, psi, d, true), 1e-14);
    }
  }
}

TEST(WMatrices, SymmetricAndPaddingIsZero) {
  const PolynomialObjective obj = build_objective(generate_random(10, 40, 3, 2));
  ASSERT_EQ(obj.num_y, 11);
  ASSERT_EQ(obj.qubits, 4);
  for (int d = 1; d <= 2; ++d) {
    const WMatrices w = w_matrices(obj, d);
    for (const SparseSymmetric* m : {&w.plus, &w.minus}) {
      const Eigen::MatrixXd dense = oracle::dense(*m);
      EXPECT_EQ(dense, dense.transpose());
      for (std::int64_t r = 0; r < m->dim(); ++r)
        for (std::int64_t c = 0; c < m->dim(); ++c) {
          if (dense(r, c) == 0.0) continue;
          for (int t = 0; t < d; ++t) {
            EXPECT_LT(m->register_index(r, t), obj.num_y);
            EXPECT_LT(m->register_index(c, t), obj.num_y);
          }
        }
    }
  }
}

TEST(WMatrices, EmptyQuarticLevelAndRange) {
  PolynomialObjective obj = build_objective(generate_random(6, 12, 2, 1));
  EXPECT_THROW(w_matrices(obj, 2), ArgumentError);
  EXPECT_THROW(w_matrices(obj, 0), ArgumentError);
  obj.degree_cap = 2;
  const WMatrices w = w_matrices(obj, 2);
  EXPECT_TRUE(w.plus.empty());
  EXPECT_TRUE(w.minus.empty());
  EXPECT_EQ(w.plus.dim(), obj.register_dim() * obj.register_dim());
}

TEST(WMatrices, PlusEntrySumIsConstantPart) {
  const PolynomialObjective obj = build_objective(generate_random(12, 50, 3, 17));
  const OperatorSet ops = build_operators(obj);
  double sum = 0.0;
  for (const auto& p : ops.plus) sum += p.entry_sum();
  EXPECT_NEAR(sum, obj.constant_part().value(), 1e-12);
}
