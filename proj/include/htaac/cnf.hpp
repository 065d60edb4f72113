#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace htaac {

struct Literal {
  int var = 1;  // 1-based DIMACS index
  bool negated = false;

  int dimacs() const { return negated ? -var : var; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// A normalized clause: duplicate literals removed, first occurrence kept.
/// A clause holding both x and ¬x is tautological and always satisfied.
struct Clause {
  std::vector<Literal> literals;
  bool tautological = false;

  std::size_t size() const { return literals.size(); }
  friend bool operator==(const Clause&, const Clause&) = default;
};

Clause normalize_clause(const std::vector<int>& dimacs_literals);

/// Spin assignment y over N = num_vars + 1 entries; y[0] is the reference
/// spin and variable i is true iff y[i] == y[0].
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(Eigen::VectorXi spins);
  static Assignment all_true(int num_y);
  /// y0 = +1, bit (i-1) of `mask` set means x_i is true.
  static Assignment from_mask(int num_vars, std::uint64_t mask);

  int size() const { return static_cast<int>(y_.size()); }
  int operator[](int i) const { return y_[i]; }
  bool truth(int var) const { return y_[var] == y_[0]; }
  const Eigen::VectorXi& spins() const { return y_; }
  Assignment flipped() const { return Assignment(-y_); }

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.y_ == b.y_;
  }

 private:
  Eigen::VectorXi y_;
};

class CnfInstance {
 public:
  CnfInstance() = default;
  /// Validates literal ranges; clauses must already be normalized.
  CnfInstance(int num_vars, std::vector<Clause> clauses);

  int num_vars() const { return num_vars_; }
  /// N in the spin encoding: variables plus the reference spin y0.
  int num_y() const { return num_vars_ + 1; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  /// Uniform clause length, or 0 when lengths are mixed.
  int k() const;
  int max_clause_length() const;

  friend bool operator==(const CnfInstance&, const CnfInstance&) = default;

 private:
  int num_vars_ = 0;
  std::vector<Clause> clauses_;
};

/// Parse DIMACS CNF ('c' comments, 'p cnf V C' header, 0-terminated clauses).
/// Throws ParseError on a missing or malformed header, out-of-range literal,
/// unterminated clause, empty clause, or a file with no clauses.
CnfInstance parse_dimacs(std::string_view text);
CnfInstance read_dimacs_file(const std::string& path);

std::string to_dimacs(const CnfInstance& instance);

/// Random k-SAT: each clause draws k distinct variables uniformly (clauses
/// with a repeated variable are rejected and redrawn) and negates each
/// literal with probability 1/2.
CnfInstance generate_random(int num_vars, int num_clauses, int k,
                            std::uint64_t seed);

bool clause_satisfied(const Clause& clause, const Assignment& y);
int count_satisfied(const CnfInstance& instance, const Assignment& y);

}  // namespace htaac
