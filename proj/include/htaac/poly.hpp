#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/SparseCore>

#include "htaac/cnf.hpp"

namespace htaac {

/// Exact value numerator / 2^exponent. Every clause-polynomial coefficient
/// is of this form, so objective evaluation can be compared exactly.
struct Dyadic {
  std::int64_t numerator = 0;
  int exponent = 0;

  static Dyadic integer(std::int64_t v) { return {v, 0}; }
  double value() const;
  Dyadic normalized() const;
  Dyadic& operator+=(const Dyadic& other);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(const Dyadic& a) { return {-a.numerator, a.exponent}; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a += -b; }
  friend bool operator==(const Dyadic& a, const Dyadic& b);
};

/// Multilinear monomial over spin indices (0 is y0): strictly increasing.
using Monomial = std::vector<int>;

/// Evaluates the product of the indexed spins.
int monomial_sign(const Monomial& m, const Assignment& y);

/// One objective term a·(1 − m(y)) + b·(1 + m(y)).
struct TermCoefficients {
  Dyadic a;
  Dyadic b;
};

/// Even-degree polynomial form of a Max-kSAT instance:
///   value(y) = Σ_m [a_m (1 − m(y)) + b_m (1 + m(y))] + constant.
struct PolynomialObjective {
  int num_y = 0;       // N, including y0
  int qubits = 0;      // n = ceil(log2 N)
  int degree_cap = 1;  // D; the largest term has degree 2D
  std::map<Monomial, TermCoefficients> terms;
  Dyadic constant;     // tautological clauses

  /// Number of n-qubit amplitudes, 2^n.
  std::int64_t register_dim() const { return std::int64_t{1} << qubits; }
  /// Σ_m (a_m + b_m) + constant: the value of the constant part.
  Dyadic constant_part() const;
};

int qubits_for(int num_y);

/// Expands each clause as 1 − Π (1 − σ y0 y_v)/2, one term per nonempty
/// literal subset. Throws ArgumentError if a clause needs degree > 2·max_degree_cap.
PolynomialObjective build_objective(const CnfInstance& instance, int max_degree_cap = 3);

Dyadic evaluate_exact(const PolynomialObjective& obj, const Assignment& y);
double evaluate(const PolynomialObjective& obj, const Assignment& y);

/// Real symmetric operator on d registers of n qubits (dimension 2^{nd}).
/// Row and column indices pack one n-bit sub-index per register, register 0
/// in the most significant position.
class SparseSymmetric {
 public:
  using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor, std::int64_t>;

  SparseSymmetric(int qubits, int level, Matrix matrix);
  static SparseSymmetric diagonal(int qubits, const Eigen::VectorXd& diag);

  int qubits() const { return qubits_; }
  int level() const { return level_; }
  std::int64_t dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  double entry(std::int64_t row, std::int64_t col) const { return matrix_.coeff(row, col); }
  std::int64_t nonzeros() const { return matrix_.nonZeros(); }
  bool empty() const { return matrix_.nonZeros() == 0; }
  /// Σ of all entries, i.e. ⟨W, 𝔰1⟩.
  double entry_sum() const;
  /// Induced ∞-norm (max absolute row sum), an upper bound on the spectral norm.
  double max_abs_row_sum() const;
  bool is_symmetric(double tol = 0.0) const;

  /// Sub-index of register t within a packed multi-index.
  std::int64_t register_index(std::int64_t packed, int t) const {
    const int shift = qubits_ * (level_ - 1 - t);
    return (packed >> shift) & ((std::int64_t{1} << qubits_) - 1);
  }

 private:
  int qubits_;
  int level_;
  Matrix matrix_;
};

struct WMatrices {
  SparseSymmetric plus;   // entries (a + b)/2 at (row, col) and (col, row)
  SparseSymmetric minus;  // entries (a − b)/2
};

/// Degree-2d terms as W^{±,(d)}. A monomial v1<…<v2d is paired
/// consecutively; the row takes the first element of each pair, the column
/// the second.
WMatrices w_matrices(const PolynomialObjective& obj, int d);

/// W^{±,(d)} for d = 1..D, built once per objective.
struct OperatorSet {
  std::vector<SparseSymmetric> plus;   // index d-1
  std::vector<SparseSymmetric> minus;  // index d-1
  int levels() const { return static_cast<int>(minus.size()); }
};

OperatorSet build_operators(const PolynomialObjective& obj);

}  // namespace htaac
