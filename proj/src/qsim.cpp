#include "htaac/qsim.hpp"

#include <cmath>

#include "htaac/error.hpp"

namespace htaac {

RealState::RealState(Eigen::VectorXd amplitudes) : amplitudes_(std::move(amplitudes)) {
  const Eigen::Index n = amplitudes_.size();
  if (n < 2 || (n & (n - 1)) != 0)
    throw ArgumentError("state length must be a power of two >= 2");
  while ((Eigen::Index{1} << qubits_) < n) ++qubits_;
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance)
    throw ArgumentError("state is not normalized");
}

namespace {

void apply_rotation(Eigen::VectorXd& psi, int qubit, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const Eigen::Index stride = Eigen::Index{1} << qubit;
  for (Eigen::Index base = 0; base < psi.size(); base += 2 * stride) {
    for (Eigen::Index i = base; i < base + stride; ++i) {
      const double a0 = psi[i], a1 = psi[i + stride];
      psi[i] = c * a0 - s * a1;
      psi[i + stride] = s * a0 + c * a1;
    }
  }
}

void apply_cnot(Eigen::VectorXd& psi, int control, int target) {
  const Eigen::Index cmask = Eigen::Index{1} << control;
  const Eigen::Index tmask = Eigen::Index{1} << target;
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    if ((i & cmask) && !(i & tmask)) std::swap(psi[i], psi[i | tmask]);
}

}  // namespace

RealState prepare(const Ansatz& ansatz) {
  if (ansatz.qubits < 1) throw ArgumentError("ansatz needs at least one qubit");
  if (ansatz.layers < 1) throw ArgumentError("ansatz needs at least one layer");
  if (ansatz.theta.size() != ansatz.num_params())
    throw ArgumentError("theta length must be qubits * layers");
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(Eigen::Index{1} << ansatz.qubits);
  psi[0] = 1.0;
  for (int layer = 0; layer < ansatz.layers; ++layer) {
    for (int q = 0; q < ansatz.qubits; ++q)
      apply_rotation(psi, q, ansatz.theta[Eigen::Index{layer} * ansatz.qubits + q]);
    for (int q = 0; q + 1 < ansatz.qubits; ++q) apply_cnot(psi, q, q + 1);
  }
  return RealState(std::move(psi));
}

RealState uniform_state(int qubits) {
  if (qubits < 1) throw ArgumentError("need at least one qubit");
  const Eigen::Index n = Eigen::Index{1} << qubits;
  return RealState(Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

RealState basis_state(int qubits, Eigen::Index index) {
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(Eigen::Index{1} << qubits);
  psi[index] = 1.0;
  return RealState(std::move(psi));
}

double multilinear_expval(const SparseSymmetric& W, std::span<const Eigen::VectorXd> registers) {
  const int d = W.level();
  if (static_cast<int>(registers.size()) != d)
    throw ArgumentError("register count does not match operator level");
  const Eigen::Index reg_dim = Eigen::Index{1} << W.qubits();
  for (const auto& r : registers)
    if (r.size() != reg_dim) throw ArgumentError("register dimension mismatch");

  const auto& m = W.matrix();
  double total = 0.0;
  for (std::int64_t row = 0; row < m.outerSize(); ++row) {
    double row_factor = 1.0;
    for (int t = 0; t < d && row_factor != 0.0; ++t)
      row_factor *= registers[t][W.register_index(row, t)];
    if (row_factor == 0.0) continue;
    double acc = 0.0;
    for (SparseSymmetric::Matrix::InnerIterator it(m, row); it; ++it) {
      double f = it.value();
      for (int t = 0; t < d; ++t) f *= registers[t][W.register_index(it.col(), t)];
      acc += f;
    }
    total += row_factor * acc;
  }
  return total;
}

double expval(const RealState& state, const SparseSymmetric& W, int d) {
  if (W.level() != d || W.qubits() != state.qubits())
    throw ArgumentError("operator dimension does not match 2^{nd} for this state");
  std::vector<Eigen::VectorXd> regs(d, state.amplitudes());
  return multilinear_expval(W, regs);
}

Eigen::VectorXd tensor_product(std::span<const Eigen::VectorXd> registers) {
  Eigen::VectorXd out = Eigen::VectorXd::Ones(1);
  for (const auto& r : registers) {
    Eigen::VectorXd next(out.size() * r.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * r.size(), r.size()) = out[i] * r;
    out = std::move(next);
  }
  return out;
}

Eigen::VectorXd tensor_power(const Eigen::VectorXd& v, int d) {
  std::vector<Eigen::VectorXd> regs(d, v);
  return tensor_product(regs);
}

double expval_tensor(const RealState& state, const SparseSymmetric& W, int d) {
  if (W.level() != d || W.qubits() != state.qubits())
    throw ArgumentError("operator dimension does not match 2^{nd} for this state");
  const Eigen::VectorXd big = tensor_power(state.amplitudes(), d);
  return big.dot(W.matrix() * big);
}

Eigen::VectorXd pauli_z_expectations(const Eigen::VectorXd& amplitudes) {
  int n = 0;
  while ((Eigen::Index{1} << n) < amplitudes.size()) ++n;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n + n * (n - 1) / 2);
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    const double p = amplitudes[i] * amplitudes[i];
    int k = 0;
    for (int a = 0; a < n; ++a) out[k++] += (i >> a & 1) ? -p : p;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) out[k++] += (((i >> a) ^ (i >> b)) & 1) ? -p : p;
  }
  return out;
}

Eigen::VectorXd pauli_z_expectations(const RealState& state) {
  return pauli_z_expectations(state.amplitudes());
}

namespace {

void require_taylor(const HadamardConfig& cfg) {
  if (cfg.mode != EstimatorMode::TaylorUnitary)
    throw ArgumentError("Hadamard-test emulation requires taylor-unitary mode");
  if (!(cfg.alpha > 0.0)) throw ArgumentError("alpha must be positive");
  if (cfg.taylor_order < 3) throw ArgumentError("taylor order must be >= 3");
}

}  // namespace

Eigen::VectorXcd apply_unitary(const SparseSymmetric& W, double alpha, const Eigen::VectorXcd& v,
                               const HadamardConfig& cfg) {
  // Each sub-step keeps ‖αW/s‖ ≤ 1/4, where a 12-term tail is below 1e-17.
  constexpr double kStepNorm = 0.25;
  const double scale = alpha * W.max_abs_row_sum();
  const double steps_needed = std::ceil(scale / kStepNorm);
  if (steps_needed > cfg.max_substeps)
    throw ConvergenceError("Taylor series for exp(i alpha W) does not converge: alpha*|W| = " +
                           std::to_string(scale) + "; lower alpha");
  const int steps = std::max(1, static_cast<int>(steps_needed));
  const double h = alpha / steps;
  const double step_norm = h * W.max_abs_row_sum();
  double tail = 1.0;
  for (int t = 1; t <= cfg.taylor_order + 1; ++t) tail *= step_norm / t;
  if (tail > 1e-12)
    throw ConvergenceError("Taylor order " + std::to_string(cfg.taylor_order) +
                           " too low for alpha*|W| step " + std::to_string(step_norm) +
                           "; lower alpha or raise the order");

  // (ih/t)·W·(re + i·im) = (h/t)·(−W·im + i·W·re), with W real.
  Eigen::VectorXd re = v.real(), im = v.imag();
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXd term_re = re, term_im = im;
    for (int t = 1; t <= cfg.taylor_order; ++t) {
      const double f = h / t;
      Eigen::VectorXd w_re = W.matrix() * term_re;
      Eigen::VectorXd w_im = W.matrix() * term_im;
      term_re = -f * w_im;
      term_im = f * w_re;
      re += term_re;
      im += term_im;
    }
  }
  Eigen::VectorXcd out(v.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

double hadamard_test_im(std::span<const Eigen::VectorXd> registers, const SparseSymmetric& W,
                        const HadamardConfig& cfg) {
  require_taylor(cfg);
  if (static_cast<int>(registers.size()) != W.level())
    throw ArgumentError("register count does not match operator level");
  const Eigen::VectorXd phi = tensor_product(registers);
  if (phi.size() != W.dim()) throw ArgumentError("operator dimension mismatch");
  if (W.empty()) return 0.0;
  const Eigen::VectorXcd phic = phi.cast<std::complex<double>>();
  const Eigen::VectorXcd u_phi = apply_unitary(W, cfg.alpha, phic, cfg);
  return phic.dot(u_phi).imag();
}

double hadamard_test_im(const RealState& state, const SparseSymmetric& W,
                        const HadamardConfig& cfg, int d) {
  if (W.level() != d || W.qubits() != state.qubits())
    throw ArgumentError("operator dimension does not match 2^{nd} for this state");
  std::vector<Eigen::VectorXd> regs(d, state.amplitudes());
  return hadamard_test_im(regs, W, cfg);
}

}  // namespace htaac
