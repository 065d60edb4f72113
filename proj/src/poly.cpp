#include "htaac/poly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "htaac/error.hpp"

namespace htaac {

double Dyadic::value() const { return std::ldexp(static_cast<double>(numerator), -exponent); }

Dyadic Dyadic::normalized() const {
  Dyadic d = *this;
  if (d.numerator == 0) return {0, 0};
  while (d.exponent > 0 && d.numerator % 2 == 0) {
    d.numerator /= 2;
    --d.exponent;
  }
  return d;
}

Dyadic& Dyadic::operator+=(const Dyadic& other) {
  const int e = std::max(exponent, other.exponent);
  numerator = (numerator << (e - exponent)) + (other.numerator << (e - other.exponent));
  exponent = e;
  return *this;
}

bool operator==(const Dyadic& a, const Dyadic& b) {
  const Dyadic x = a.normalized();
  const Dyadic y = b.normalized();
  return x.numerator == y.numerator && x.exponent == y.exponent;
}

int monomial_sign(const Monomial& m, const Assignment& y) {
  int s = 1;
  for (int i : m) s *= y[i];
  return s;
}

Dyadic PolynomialObjective::constant_part() const {
  Dyadic total = constant;
  for (const auto& [m, c] : terms) total += c.a + c.b;
  return total;
}

int qubits_for(int num_y) {
  int n = 0;
  while ((std::int64_t{1} << n) < num_y) ++n;
  return std::max(n, 1);
}

PolynomialObjective build_objective(const CnfInstance& instance, int max_degree_cap) {
  PolynomialObjective obj;
  obj.num_y = instance.num_y();
  obj.qubits = qubits_for(obj.num_y);
  obj.degree_cap = std::max(1, (instance.max_clause_length() + 1) / 2);
  if (obj.degree_cap > max_degree_cap)
    throw ArgumentError("clause length " + std::to_string(instance.max_clause_length()) +
                        " needs degree cap " + std::to_string(obj.degree_cap) +
                        " > supported " + std::to_string(max_degree_cap));

  for (const Clause& clause : instance.clauses()) {
    if (clause.tautological) {
      obj.constant += Dyadic::integer(1);
      continue;
    }
    const int k = static_cast<int>(clause.size());
    const Dyadic weight{1, k};
    for (std::uint32_t subset = 1; subset < (1u << k); ++subset) {
      Monomial m;
      int sigma = 1;
      const int size = std::popcount(subset);
      for (int t = 0; t < k; ++t) {
        if (!(subset >> t & 1u)) continue;
        m.push_back(clause.literals[t].var);
        if (clause.literals[t].negated) sigma = -sigma;
      }
      if (size % 2 == 1) m.push_back(0);
      std::sort(m.begin(), m.end());
      // Term (1 + s·m)/2^k with s = (−1)^{|S|+1} σ_S.
      const int s = (size % 2 == 1 ? 1 : -1) * sigma;
      TermCoefficients& c = obj.terms[m];
      (s > 0 ? c.b : c.a) += weight;
    }
  }
  return obj;
}

Dyadic evaluate_exact(const PolynomialObjective& obj, const Assignment& y) {
  if (y.size() != obj.num_y)
    throw ArgumentError("assignment length " + std::to_string(y.size()) +
                        " does not match N = " + std::to_string(obj.num_y));
  Dyadic total = obj.constant;
  for (const auto& [m, c] : obj.terms) {
    if (monomial_sign(m, y) > 0)
      total += c.b + c.b;
    else
      total += c.a + c.a;
  }
  return total;
}

double evaluate(const PolynomialObjective& obj, const Assignment& y) {
  return evaluate_exact(obj, y).value();
}

SparseSymmetric::SparseSymmetric(int qubits, int level, Matrix matrix)
    : qubits_(qubits), level_(level), matrix_(std::move(matrix)) {
  const std::int64_t expected = std::int64_t{1} << (qubits_ * level_);
  if (matrix_.rows() != expected || matrix_.cols() != expected)
    throw ArgumentError("operator dimension does not match 2^{nd}");
  matrix_.makeCompressed();
}

SparseSymmetric SparseSymmetric::diagonal(int qubits, const Eigen::VectorXd& diag) {
  const std::int64_t n = std::int64_t{1} << qubits;
  if (diag.size() != n) throw ArgumentError("diagonal length does not match 2^n");
  Matrix m(n, n);
  std::vector<Eigen::Triplet<double, std::int64_t>> trips;
  for (std::int64_t i = 0; i < n; ++i)
    if (diag[i] != 0.0) trips.emplace_back(i, i, diag[i]);
  m.setFromTriplets(trips.begin(), trips.end());
  return SparseSymmetric(qubits, 1, std::move(m));
}

double SparseSymmetric::entry_sum() const {
  double s = 0.0;
  for (std::int64_t k = 0; k < matrix_.nonZeros(); ++k) s += matrix_.valuePtr()[k];
  return s;
}

double SparseSymmetric::max_abs_row_sum() const {
  double best = 0.0;
  for (std::int64_t r = 0; r < matrix_.outerSize(); ++r) {
    double s = 0.0;
    for (Matrix::InnerIterator it(matrix_, r); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

bool SparseSymmetric::is_symmetric(double tol) const {
  for (std::int64_t r = 0; r < matrix_.outerSize(); ++r)
    for (Matrix::InnerIterator it(matrix_, r); it; ++it)
      if (std::abs(it.value() - matrix_.coeff(it.col(), r)) > tol) return false;
  return true;
}

WMatrices w_matrices(const PolynomialObjective& obj, int d) {
  if (d < 1 || d > obj.degree_cap)
    throw ArgumentError("level d=" + std::to_string(d) + " outside 1.." +
                        std::to_string(obj.degree_cap));
  const int n = obj.qubits;
  const std::int64_t dim = std::int64_t{1} << (n * d);
  std::vector<Eigen::Triplet<double, std::int64_t>> plus, minus;
  for (const auto& [m, c] : obj.terms) {
    if (static_cast<int>(m.size()) != 2 * d) continue;
    std::int64_t row = 0, col = 0;
    for (int t = 0; t < d; ++t) {
      row = (row << n) | m[2 * t];
      col = (col << n) | m[2 * t + 1];
    }
    const double a = c.a.value(), b = c.b.value();
    const double wp = 0.5 * (a + b), wm = 0.5 * (a - b);
    plus.emplace_back(row, col, wp);
    plus.emplace_back(col, row, wp);
    if (wm != 0.0) {
      minus.emplace_back(row, col, wm);
      minus.emplace_back(col, row, wm);
    }
  }
  SparseSymmetric::Matrix p(dim, dim), q(dim, dim);
  p.setFromTriplets(plus.begin(), plus.end());
  q.setFromTriplets(minus.begin(), minus.end());
  return {SparseSymmetric(n, d, std::move(p)), SparseSymmetric(n, d, std::move(q))};
}

OperatorSet build_operators(const PolynomialObjective& obj) {
  OperatorSet ops;
  for (int d = 1; d <= obj.degree_cap; ++d) {
    WMatrices w = w_matrices(obj, d);
    ops.plus.push_back(std::move(w.plus));
    ops.minus.push_back(std::move(w.minus));
  }
  return ops;
}

}  // namespace htaac
