#include "htaac/train.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "htaac/error.hpp"

namespace htaac {

PopulationBalance build_population_balance(const SparseSymmetric& w_minus1, double beta) {
  if (w_minus1.level() != 1) throw ArgumentError("population balance uses W^{-,(1)}");
  const auto& m = w_minus1.matrix();
  Eigen::VectorXd signed_sum = Eigen::VectorXd::Zero(m.rows());
  Eigen::VectorXd abs_sum = Eigen::VectorXd::Zero(m.rows());
  for (std::int64_t r = 0; r < m.outerSize(); ++r)
    for (SparseSymmetric::Matrix::InnerIterator it(m, r); it; ++it) {
      signed_sum[r] += it.value();
      abs_sum[r] += std::abs(it.value());
    }
  const double p_max = signed_sum.maxCoeff();
  PopulationBalance pb;
  pb.diag = -(Eigen::VectorXd::Constant(m.rows(), p_max) - abs_sum);
  pb.beta = beta;
  return pb;
}

HadamardConfig TrainConfig::hadamard() const {
  HadamardConfig h;
  h.alpha = alpha;
  h.taylor_order = taylor_order;
  h.mode = EstimatorMode::TaylorUnitary;
  return h;
}

SeeConfig TrainConfig::see() const {
  SeeConfig s;
  s.mode = mode;
  s.hadamard = hadamard();
  return s;
}

void TrainConfig::validate() const {
  if (epochs < 1) throw ArgumentError("epochs must be >= 1");
  if (lambda < 0.0) throw ArgumentError("lambda must be >= 0");
  if (!(alpha > 0.0)) throw ArgumentError("alpha must be positive");
  if (!(effective_beta() > 0.0)) throw ArgumentError("beta must be positive");
  if (layers < 0) throw ArgumentError("layers must be >= 0");
  if (!(learning_rate > 0.0)) throw ArgumentError("learning rate must be positive");
  if (!(fd_step > 0.0)) throw ArgumentError("finite-difference step must be positive");
  if (mode == EstimatorMode::TaylorUnitary && taylor_order < 3)
    throw ArgumentError("taylor order must be >= 3");
}

LossModel::LossModel(const PolynomialObjective& obj, TrainConfig cfg)
    : obj_(&obj), cfg_(std::move(cfg)), ops_(build_operators(obj)) {
  cfg_.validate();
  pb_ = build_population_balance(ops_.minus.front(), cfg_.effective_beta());
}

double LossModel::objective_term(int d, std::span<const Eigen::VectorXd> registers) const {
  const SparseSymmetric& w = ops_.minus[d - 1];
  if (w.empty()) return 0.0;
  if (cfg_.mode == EstimatorMode::TaylorUnitary)
    return hadamard_test_im(registers, w, cfg_.hadamard()) / cfg_.alpha;
  return multilinear_expval(w, registers);
}

double LossModel::population_term(const Eigen::VectorXd& psi) const {
  if (!cfg_.population_balance) return 0.0;
  const Eigen::ArrayXd prob = psi.array().square();
  if (cfg_.mode == EstimatorMode::TaylorUnitary) {
    // e^{iβP} is diagonal, so the Hadamard test is exact: Σ_i ψ_i² sin(βP_ii).
    return (prob * (pb_.beta * pb_.diag.array()).sin()).sum() / pb_.beta;
  }
  return (prob * pb_.diag.array()).sum();
}

namespace {

double penalty_value(const Eigen::VectorXd& strings, PenaltyForm form) {
  return form == PenaltyForm::Squared ? strings.squaredNorm() : strings.sum();
}

}  // namespace

LossBreakdown LossModel::evaluate(const RealState& state) const {
  if (state.qubits() != obj_->qubits) throw ArgumentError("state does not match objective size");
  LossBreakdown out;
  for (int d = 1; d <= ops_.levels(); ++d) {
    std::vector<Eigen::VectorXd> regs(d, state.amplitudes());
    out.objective += objective_term(d, regs);
  }
  out.pauli = penalty_value(pauli_z_expectations(state), cfg_.penalty);
  out.population = population_term(state.amplitudes());
  out.total = out.objective + cfg_.lambda * (out.pauli + out.population);
  return out;
}

Eigen::VectorXd LossModel::gradient(const Ansatz& ansatz) const {
  return cfg_.gradient == GradientMethod::ParameterShift
             ? gradient_parameter_shift(ansatz)
             : gradient_finite_difference(ansatz, cfg_.fd_step);
}

Eigen::VectorXd LossModel::gradient_finite_difference(const Ansatz& ansatz, double eps) const {
  Eigen::VectorXd g(ansatz.num_params());
  Ansatz probe = ansatz;
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    probe.theta[k] = ansatz.theta[k] + eps;
    const double up = loss(prepare(probe));
    probe.theta[k] = ansatz.theta[k] - eps;
    const double down = loss(prepare(probe));
    probe.theta[k] = ansatz.theta[k];
    g[k] = (up - down) / (2.0 * eps);
  }
  return g;
}

// Every loss term is linear in each register's density matrix, and each
// angle enters ψ through one rotation exp(−iθY); so a term's derivative is
// f(θ+π/4) − f(θ−π/4) per register, with the other registers held at ψ.
Eigen::VectorXd LossModel::gradient_parameter_shift(const Ansatz& ansatz) const {
  constexpr double kShift = std::numbers::pi / 4.0;
  const Eigen::VectorXd psi = prepare(ansatz).amplitudes();
  const Eigen::VectorXd strings = pauli_z_expectations(psi);

  Eigen::VectorXd g(ansatz.num_params());
  Ansatz probe = ansatz;
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    probe.theta[k] = ansatz.theta[k] + kShift;
    const Eigen::VectorXd up = prepare(probe).amplitudes();
    probe.theta[k] = ansatz.theta[k] - kShift;
    const Eigen::VectorXd down = prepare(probe).amplitudes();
    probe.theta[k] = ansatz.theta[k];

    double obj = 0.0;
    for (int d = 1; d <= ops_.levels(); ++d) {
      if (ops_.minus[d - 1].empty()) continue;
      std::vector<Eigen::VectorXd> regs(d, psi);
      for (int t = 0; t < d; ++t) {
        regs[t] = up;
        obj += objective_term(d, regs);
        regs[t] = down;
        obj -= objective_term(d, regs);
        regs[t] = psi;
      }
    }
    const Eigen::VectorXd dstrings = pauli_z_expectations(up) - pauli_z_expectations(down);
    const double pauli = cfg_.penalty == PenaltyForm::Squared ? 2.0 * strings.dot(dstrings)
                                                              : dstrings.sum();
    const double pop = population_term(up) - population_term(down);
    g[k] = obj + cfg_.lambda * (pauli + pop);
  }
  return g;
}

double loss(const RealState& state, const PolynomialObjective& obj, const TrainConfig& cfg) {
  return LossModel(obj, cfg).loss(state);
}

Eigen::VectorXd gradient(const Ansatz& ansatz, const PolynomialObjective& obj,
                         const TrainConfig& cfg) {
  return LossModel(obj, cfg).gradient(ansatz);
}

TrainResult train(const PolynomialObjective& obj, const TrainConfig& cfg) {
  const LossModel model(obj, cfg);
  const SeeConfig see_cfg = cfg.see();

  Ansatz ansatz;
  ansatz.qubits = obj.qubits;
  ansatz.layers = cfg.effective_layers(obj.qubits);
  ansatz.theta.resize(ansatz.num_params());
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> init(-std::numbers::pi / 4.0, std::numbers::pi / 4.0);
  for (Eigen::Index k = 0; k < ansatz.theta.size(); ++k) ansatz.theta[k] = init(rng);

  // Adam moments.
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
  Eigen::VectorXd m = Eigen::VectorXd::Zero(ansatz.theta.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(ansatz.theta.size());

  TrainResult result;
  result.loss.reserve(cfg.epochs);
  result.see.reserve(cfg.epochs);
  result.fst.reserve(cfg.epochs);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const RealState state = prepare(ansatz);
    const double l = model.loss(state);
    const double see = see_value(state, obj, model.operators(), see_cfg);
    const Assignment y = fst_round(state, obj);
    const Dyadic exact = evaluate_exact(obj, y).normalized();
    const int fst = static_cast<int>(exact.numerator);  // integral by construction
    result.loss.push_back(l);
    result.see.push_back(see);
    result.fst.push_back(fst);
    if (fst > result.best_fst) {
      result.best_fst = fst;
      result.best_epoch = epoch;
      result.best_assignment = y;
      result.best_see = see;
    }

    const Eigen::VectorXd g = model.gradient(ansatz);
    m = kBeta1 * m + (1.0 - kBeta1) * g;
    v = kBeta2 * v + (1.0 - kBeta2) * g.cwiseProduct(g);
    const double c1 = 1.0 - std::pow(kBeta1, epoch + 1);
    const double c2 = 1.0 - std::pow(kBeta2, epoch + 1);
    ansatz.theta.array() -=
        cfg.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + kEps);
  }
  result.final_ansatz = std::move(ansatz);
  return result;
}

}  // namespace htaac
