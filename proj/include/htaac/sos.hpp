#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "htaac/poly.hpp"

namespace htaac {

/// Which degree-2 monomials enter the basis.
///   Consecutive: (m0 m1, m2 m3) for each quartic objective monomial m.
///   AllSplits:   all three pairings of each quartic objective monomial.
///   Full:        every y_i y_j.
/// Consecutive is the smallest basis spanning the objective but can be
/// strictly looser: the two-clause (x1∨x2∨x3)(¬x1∨¬x2∨x3) instance bounds
/// at 5/2 with it and at the optimum 2 with AllSplits.
enum class BasisChoice { Consecutive, AllSplits, Full };

/// Monomial basis b for the Gram form bᵀQb: the constant monomial first,
/// then every y_i, then the degree-2 monomials.
struct PolyBasis {
  std::vector<Monomial> monomials;

  int size() const { return static_cast<int>(monomials.size()); }
  /// Position of a monomial, or -1.
  int position(const Monomial& m) const;

 private:
  friend PolyBasis make_basis(const PolynomialObjective&, BasisChoice);
  std::map<Monomial, int> index_;
};

/// Degree-2 entries are omitted entirely for objectives of degree ≤ 2.
PolyBasis make_basis(const PolynomialObjective& obj, BasisChoice choice = BasisChoice::AllSplits);

struct SosOptions {
  int max_num_y = 13;
  BasisChoice basis = BasisChoice::AllSplits;
};

/// SOS certificate −p(y) − γ = bᵀQb modulo y_i² = 1 as a standard-form SDP
///   minimize tr(Q)  subject to  ⟨A_μ, Q⟩ = b_μ,  Q ⪰ 0,
/// with one constraint per nonconstant monomial μ reachable as a product of
/// two basis elements (A_μ marks the pairs (u, v) with u·v ≡ μ). Then
/// −γ = p_0 + tr(Q) where p_0 is the constant part of p. An inexact Q still
/// certifies p ≤ p_0 + tr(Q) + ‖A(Q) − b‖₁ whenever Q ⪰ 0.
struct SosRelaxation {
  PolynomialObjective objective;
  PolyBasis basis;
  std::vector<Monomial> constraint_monomials;
  std::vector<std::vector<std::pair<int, int>>> constraint_pairs;  // u < v
  Eigen::VectorXd targets;
  double objective_constant = 0.0;  // p_0

  int dim() const { return basis.size(); }
  int num_constraints() const { return static_cast<int>(constraint_monomials.size()); }
  /// A(Q)_μ = Σ over marked pairs of Q_uv + Q_vu.
  Eigen::VectorXd apply(const Eigen::MatrixXd& Q) const;
  /// A*(y) = Σ_μ y_μ A_μ.
  Eigen::MatrixXd adjoint(const Eigen::VectorXd& y) const;
  /// Diagonal of A A*.
  Eigen::VectorXd gram_diagonal() const;
  /// ‖A(Q) − b‖_∞: maximal coefficient mismatch of bᵀQb against −p − γ.
  double coefficient_residual(const Eigen::MatrixXd& Q) const;
};

SosRelaxation build_relaxation(const PolynomialObjective& obj, const SosOptions& opts = {});

struct SdpOptions {
  double tol = 1e-7;
  int max_iter = 50000;
  double mu = 1.0;
  bool throw_on_failure = true;
};

struct SdpSolution {
  Eigen::MatrixXd Q;
  Eigen::VectorXd dual;
  double gamma = 0.0;
  double upper_bound = 0.0;  // certified −γ: p_0 + tr(Q) + ‖A(Q) − b‖₁
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  bool converged = false;
};

/// Dual ADMM for the standard-form SDP: a least-squares step on the
/// multipliers (A A* is diagonal here), a PSD-cone projection by eigenvalue
/// clipping, and a multiplier update. Throws ConvergenceError with the
/// final residuals when `tol` is not reached and `throw_on_failure` is set.
SdpSolution solve_sdp(const SosRelaxation& relax, const SdpOptions& opts = {});

struct SosResult {
  double upper_bound = 0.0;
  Assignment rounded_assignment;
  int rounded_value = 0;
  int null_space_dim = 0;
  bool used_fallback = false;  // null space empty, smallest eigenvector used
  /// Draws whose sign pattern disagrees with some degree-2 basis entry,
  /// i.e. sign(P_{y_i y_j}) ≠ sign(P_{y_i})·sign(P_{y_j}).
  int inconsistent_draws = 0;
  std::vector<int> draw_values;
};

/// Null-space rounding: random unit combinations of Q's (near-)zero
/// eigenvectors, sign-rounded at the y_i positions of the basis.
SosResult sos_round(const SosRelaxation& relax, const SdpSolution& sol, int samples,
                    std::uint64_t seed, double null_tol = 1e-6);

}  // namespace htaac
