#include "htaac/serialize.hpp"

#include <iomanip>
#include <sstream>

namespace htaac {

using nlohmann::json;

json to_json(const Dyadic& d) {
  const Dyadic n = d.normalized();
  return {{"numerator", n.numerator}, {"exponent", n.exponent}, {"value", n.value()}};
}

json to_json(const Assignment& y) {
  json spins = json::array();
  for (int i = 0; i < y.size(); ++i) spins.push_back(y[i]);
  json truth = json::array();
  for (int i = 1; i < y.size(); ++i) truth.push_back(y.truth(i));
  return {{"y", spins}, {"x", truth}};
}

json to_json(const PolynomialObjective& obj) {
  json terms = json::array();
  for (const auto& [m, c] : obj.terms)
    terms.push_back({{"monomial", m}, {"a", to_json(c.a)}, {"b", to_json(c.b)}});
  return {{"num_y", obj.num_y},
          {"qubits", obj.qubits},
          {"degree_cap", obj.degree_cap},
          {"constant", to_json(obj.constant)},
          {"terms", terms}};
}

json to_json(const TrainResult& r) {
  std::vector<double> theta(r.final_ansatz.theta.data(),
                            r.final_ansatz.theta.data() + r.final_ansatz.theta.size());
  return {{"epochs", r.loss.size()},
          {"loss", r.loss},
          {"see", r.see},
          {"fst", r.fst},
          {"best_fst", r.best_fst},
          {"best_epoch", r.best_epoch},
          {"best_see", r.best_see},
          {"best_assignment", to_json(r.best_assignment)},
          {"layers", r.final_ansatz.layers},
          {"qubits", r.final_ansatz.qubits},
          {"final_theta", theta}};
}

json to_json(const SolutionReport& r) {
  return {{"see_value", r.see_value},
          {"fst_value", r.fst_value},
          {"fst_assignment", to_json(r.fst_assignment)},
          {"baseline", r.baseline_name},
          {"baseline_value", r.baseline_value},
          {"observed_performance", r.observed_performance},
          {"see_observed_performance", r.see_observed_performance}};
}

json to_json(const SosRelaxation& relax) {
  json constraints = json::array();
  for (int k = 0; k < relax.num_constraints(); ++k) {
    json pairs = json::array();
    for (const auto& [u, v] : relax.constraint_pairs[k]) pairs.push_back({u, v});
    constraints.push_back(
        {{"monomial", relax.constraint_monomials[k]}, {"target", relax.targets[k]}, {"pairs", pairs}});
  }
  return {{"basis", relax.basis.monomials},
          {"objective_constant", relax.objective_constant},
          {"constraints", constraints}};
}

json to_json(const SdpSolution& sol, const SosResult& rounding) {
  return {{"upper_bound", sol.upper_bound},
          {"gamma", sol.gamma},
          {"iterations", sol.iterations},
          {"converged", sol.converged},
          {"primal_residual", sol.primal_residual},
          {"dual_residual", sol.dual_residual},
          {"gap", sol.gap},
          {"rounded_value", rounding.rounded_value},
          {"rounded_assignment", to_json(rounding.rounded_assignment)},
          {"null_space_dim", rounding.null_space_dim},
          {"used_fallback", rounding.used_fallback},
          {"inconsistent_draws", rounding.inconsistent_draws},
          {"draws", rounding.draw_values.size()}};
}

std::string trajectory_csv(const TrainResult& r) {
  std::ostringstream out;
  out << std::setprecision(17) << "epoch,loss,see,fst\n";
  for (std::size_t e = 0; e < r.loss.size(); ++e)
    out << e << ',' << r.loss[e] << ',' << r.see[e] << ',' << r.fst[e] << '\n';
  return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace htaac
