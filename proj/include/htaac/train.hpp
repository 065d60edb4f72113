#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "htaac/poly.hpp"
#include "htaac/qsim.hpp"
#include "htaac/solution.hpp"

namespace htaac {

/// Diagonal P with P_ii = −(P_max − Σ_j |W⁻_ij|), P_max = max_i Σ_j W⁻_ij,
/// built from the degree-2 operator W^{−,(1)}. Padded rows have zero sums.
struct PopulationBalance {
  Eigen::VectorXd diag;
  double beta = 0.01;
};

PopulationBalance build_population_balance(const SparseSymmetric& w_minus1, double beta);

enum class PenaltyForm { SignedSum, Squared };
enum class GradientMethod { FiniteDifference, ParameterShift };

struct TrainConfig {
  double lambda = 1.0;
  double alpha = 0.01;
  std::optional<double> beta;  // defaults to alpha
  int layers = 0;              // 0 means 2n
  int epochs = 100;
  double learning_rate = 0.05;
  PenaltyForm penalty = PenaltyForm::Squared;
  GradientMethod gradient = GradientMethod::ParameterShift;
  double fd_step = 1e-4;
  EstimatorMode mode = EstimatorMode::Exact;
  int taylor_order = 12;
  bool population_balance = true;
  std::uint64_t seed = 0;

  double effective_beta() const { return beta.value_or(alpha); }
  int effective_layers(int qubits) const { return layers > 0 ? layers : 2 * qubits; }
  HadamardConfig hadamard() const;
  SeeConfig see() const;
  /// Throws ArgumentError on inconsistent settings.
  void validate() const;
};

struct LossBreakdown {
  double objective = 0.0;   // Σ_d O_d
  double pauli = 0.0;       // C_pauli
  double population = 0.0;  // O_P
  double total = 0.0;       // objective + λ (pauli + population)
};

/// Loss and gradients for one objective; holds the prebuilt operators.
class LossModel {
 public:
  LossModel(const PolynomialObjective& obj, TrainConfig cfg);

  const PolynomialObjective& objective() const { return *obj_; }
  const OperatorSet& operators() const { return ops_; }
  const PopulationBalance& population() const { return pb_; }
  const TrainConfig& config() const { return cfg_; }

  LossBreakdown evaluate(const RealState& state) const;
  double loss(const RealState& state) const { return evaluate(state).total; }
  Eigen::VectorXd gradient(const Ansatz& ansatz) const;
  Eigen::VectorXd gradient_finite_difference(const Ansatz& ansatz, double eps) const;
  Eigen::VectorXd gradient_parameter_shift(const Ansatz& ansatz) const;

 private:
  double objective_term(int d, std::span<const Eigen::VectorXd> registers) const;
  double population_term(const Eigen::VectorXd& psi) const;

  const PolynomialObjective* obj_;
  TrainConfig cfg_;
  OperatorSet ops_;
  PopulationBalance pb_;
};

double loss(const RealState& state, const PolynomialObjective& obj, const TrainConfig& cfg);
Eigen::VectorXd gradient(const Ansatz& ansatz, const PolynomialObjective& obj,
                         const TrainConfig& cfg);

struct TrainResult {
  std::vector<double> loss;
  std::vector<double> see;
  std::vector<int> fst;
  Assignment best_assignment;
  int best_fst = -1;
  int best_epoch = -1;
  double best_see = 0.0;  // SEE at the best-FST epoch
  Ansatz final_ansatz;
};

/// Adam on the ansatz angles; θ starts uniform in [−π/4, π/4] from the seed.
/// Each epoch records loss, SEE and FST of the current state, then steps.
TrainResult train(const PolynomialObjective& obj, const TrainConfig& cfg);

}  // namespace htaac
