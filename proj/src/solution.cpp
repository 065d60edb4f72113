#include "htaac/solution.hpp"

#include <cmath>

#include "htaac/error.hpp"

namespace htaac {

double see_value(const RealState& state, const PolynomialObjective& obj, const OperatorSet& ops,
                 const SeeConfig& cfg) {
  if (state.qubits() != obj.qubits) throw ArgumentError("state does not match objective size");
  double total = obj.constant.value();
  for (int d = 1; d <= ops.levels(); ++d) {
    const SparseSymmetric& wp = ops.plus[d - 1];
    const SparseSymmetric& wm = ops.minus[d - 1];
    const double scale = std::ldexp(1.0, obj.qubits * d);
    double plus = 0.0, minus = 0.0;
    if (cfg.mode == EstimatorMode::TaylorUnitary && cfg.emulate_plus)
      plus = hadamard_test_im(uniform_state(obj.qubits), wp, cfg.hadamard, d) / cfg.hadamard.alpha;
    else
      plus = wp.entry_sum() / scale;
    if (cfg.mode == EstimatorMode::TaylorUnitary)
      minus = hadamard_test_im(state, wm, cfg.hadamard, d) / cfg.hadamard.alpha;
    else
      minus = expval(state, wm, d);
    total += scale * (plus - minus);
  }
  return total;
}

double see_value(const RealState& state, const PolynomialObjective& obj, const SeeConfig& cfg) {
  return see_value(state, obj, build_operators(obj), cfg);
}

Assignment fst_round(const RealState& state, const PolynomialObjective& obj) {
  if (state.dim() < obj.num_y) throw ArgumentError("state has fewer amplitudes than spins");
  Eigen::VectorXi y(obj.num_y);
  for (int i = 0; i < obj.num_y; ++i) y[i] = state[i] < 0.0 ? -1 : 1;
  return Assignment(std::move(y));
}

double observed_performance(double value, double baseline) {
  if (!(baseline > 0.0)) throw ArgumentError("baseline must be positive");
  return value / baseline;
}

SolutionReport make_report(const CnfInstance& instance, double see, const Assignment& fst,
                           std::string baseline_name, double baseline_value) {
  SolutionReport r;
  r.see_value = see;
  r.fst_assignment = fst;
  r.fst_value = count_satisfied(instance, fst);
  r.baseline_name = std::move(baseline_name);
  r.baseline_value = baseline_value;
  r.observed_performance = observed_performance(r.fst_value, baseline_value);
  r.see_observed_performance = observed_performance(see, baseline_value);
  return r;
}

}  // namespace htaac
