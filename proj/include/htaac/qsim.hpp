#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "htaac/poly.hpp"

namespace htaac {

/// Real, unit-norm amplitude vector over n qubits. Qubit a is bit a of the
/// basis index (qubit 0 least significant).
class RealState {
 public:
  static constexpr double kNormTolerance = 1e-10;

  /// Throws ArgumentError unless the length is a power of two and |ψ|=1.
  explicit RealState(Eigen::VectorXd amplitudes);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Eigen::VectorXd& amplitudes() const { return amplitudes_; }
  double operator[](Eigen::Index i) const { return amplitudes_[i]; }

 private:
  int qubits_ = 0;
  Eigen::VectorXd amplitudes_;
};

/// Layered real ansatz: per layer a rotation cosθ|0⟩+sinθ|1⟩ on every
/// qubit, then CNOTs q→q+1 along the chain. θ index = layer·n + qubit.
struct Ansatz {
  int qubits = 1;
  int layers = 1;
  Eigen::VectorXd theta;

  Eigen::Index num_params() const { return Eigen::Index{qubits} * layers; }
};

RealState prepare(const Ansatz& ansatz);
RealState uniform_state(int qubits);
RealState basis_state(int qubits, Eigen::Index index);

/// ⟨ψ_1⊗…⊗ψ_d| W |ψ_1⊗…⊗ψ_d⟩ over sparse entries, with one (possibly
/// distinct) real vector per register. Never materializes the tensor power.
double multilinear_expval(const SparseSymmetric& W, std::span<const Eigen::VectorXd> registers);

/// ⟨ψ^{⊗d}| W |ψ^{⊗d}⟩.
double expval(const RealState& state, const SparseSymmetric& W, int d);

/// Same value via the explicit tensor-power vector and a sparse mat-vec.
/// Intended for d ≤ 2 cross-checks.
double expval_tensor(const RealState& state, const SparseSymmetric& W, int d);

Eigen::VectorXd tensor_power(const Eigen::VectorXd& v, int d);
Eigen::VectorXd tensor_product(std::span<const Eigen::VectorXd> registers);

/// ⟨σ^z_a⟩ for a < n, then ⟨σ^z_a σ^z_b⟩ for a < b in lexicographic order.
Eigen::VectorXd pauli_z_expectations(const Eigen::VectorXd& amplitudes);
Eigen::VectorXd pauli_z_expectations(const RealState& state);

enum class EstimatorMode { Exact, TaylorUnitary };

struct HadamardConfig {
  double alpha = 0.01;
  int taylor_order = 12;
  EstimatorMode mode = EstimatorMode::TaylorUnitary;
  /// Upper bound on the number of e^{iαW/s} sub-steps before giving up.
  int max_substeps = 4096;
};

/// Im⟨Φ| e^{iαW} |Φ⟩ with Φ = ψ_1⊗…⊗ψ_d, the ancilla expectation of the
/// Hadamard test. The exponential is applied as a truncated Taylor series
/// with complex intermediates, split into sub-steps when ‖αW‖ is large.
/// Throws ConvergenceError when the series cannot be made to converge.
double hadamard_test_im(std::span<const Eigen::VectorXd> registers, const SparseSymmetric& W,
                        const HadamardConfig& cfg);
double hadamard_test_im(const RealState& state, const SparseSymmetric& W,
                        const HadamardConfig& cfg, int d);

/// exp(iαW)·v by truncated Taylor series with sub-stepping.
Eigen::VectorXcd apply_unitary(const SparseSymmetric& W, double alpha,
                               const Eigen::VectorXcd& v, const HadamardConfig& cfg);

}  // namespace htaac
