#pragma once

#include <string>

#include "htaac/cnf.hpp"
#include "htaac/poly.hpp"
#include "htaac/qsim.hpp"

namespace htaac {

struct SeeConfig {
  EstimatorMode mode = EstimatorMode::Exact;
  HadamardConfig hadamard;
  /// Estimate the uniform-state W⁺ term by Hadamard emulation instead of
  /// the closed-form entry sum.
  bool emulate_plus = false;
};

/// Un-rounded objective: constant + Σ_d 2^{nd} (E⁺_d − E⁻_d), with
/// E⁺_d = ⟨u^{⊗d}|W^{+,(d)}|u^{⊗d}⟩ on the uniform state u and
/// E⁻_d = ⟨ψ^{⊗d}|W^{−,(d)}|ψ^{⊗d}⟩. W here carries half of each weight
/// on either side of the diagonal, hence 2^{nd} rather than 2^{nd−1}.
double see_value(const RealState& state, const PolynomialObjective& obj, const OperatorSet& ops,
                 const SeeConfig& cfg = {});
double see_value(const RealState& state, const PolynomialObjective& obj,
                 const SeeConfig& cfg = {});

/// y_i = sign(ψ_i) for i < N; zero amplitudes round to +1.
Assignment fst_round(const RealState& state, const PolynomialObjective& obj);

/// value / baseline; throws ArgumentError for a nonpositive baseline.
double observed_performance(double value, double baseline);

struct SolutionReport {
  double see_value = 0.0;
  Assignment fst_assignment;
  int fst_value = 0;
  std::string baseline_name;
  double baseline_value = 0.0;
  double observed_performance = 0.0;      // fst_value / baseline_value
  double see_observed_performance = 0.0;  // see_value / baseline_value
};

SolutionReport make_report(const CnfInstance& instance, double see, const Assignment& fst,
                           std::string baseline_name, double baseline_value);

}  // namespace htaac
