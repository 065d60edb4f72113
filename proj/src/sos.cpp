#include "htaac/sos.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "htaac/error.hpp"

namespace htaac {

int PolyBasis::position(const Monomial& m) const {
  const auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

PolyBasis make_basis(const PolynomialObjective& obj, BasisChoice choice) {
  PolyBasis b;
  auto add = [&b](Monomial m) {
    if (b.index_.count(m)) return;
    b.index_.emplace(m, b.size());
    b.monomials.push_back(std::move(m));
  };
  add({});
  for (int i = 0; i < obj.num_y; ++i) add({i});
  if (obj.degree_cap < 2) return b;
  if (choice == BasisChoice::Full) {
    for (int i = 0; i < obj.num_y; ++i)
      for (int j = i + 1; j < obj.num_y; ++j) add({i, j});
    return b;
  }
  for (const auto& [m, c] : obj.terms) {
    if (m.size() != 4) continue;
    add({m[0], m[1]});
    add({m[2], m[3]});
    if (choice == BasisChoice::AllSplits) {
      add({m[0], m[2]});
      add({m[1], m[3]});
      add({m[0], m[3]});
      add({m[1], m[2]});
    }
  }
  return b;
}

namespace {

Monomial product(const Monomial& u, const Monomial& v) {
  Monomial out;
  std::set_symmetric_difference(u.begin(), u.end(), v.begin(), v.end(), std::back_inserter(out));
  return out;
}

}  // namespace

SosRelaxation build_relaxation(const PolynomialObjective& obj, const SosOptions& opts) {
  if (obj.num_y > opts.max_num_y)
    throw ArgumentError("SOS relaxation limited to N <= " + std::to_string(opts.max_num_y) +
                        " spins (got " + std::to_string(obj.num_y) + ")");
  if (obj.degree_cap > 2) throw ArgumentError("SOS relaxation supports degree <= 4");

  SosRelaxation r;
  r.objective = obj;
  r.basis = make_basis(obj, opts.basis);
  r.objective_constant = obj.constant_part().value();

  std::map<Monomial, int> group;
  for (int u = 0; u < r.basis.size(); ++u) {
    for (int v = u + 1; v < r.basis.size(); ++v) {
      Monomial m = product(r.basis.monomials[u], r.basis.monomials[v]);
      auto [it, inserted] = group.emplace(m, r.num_constraints());
      if (inserted) {
        r.constraint_monomials.push_back(std::move(m));
        r.constraint_pairs.emplace_back();
      }
      r.constraint_pairs[it->second].emplace_back(u, v);
    }
  }
  r.targets = Eigen::VectorXd::Zero(r.num_constraints());
  for (const auto& [m, c] : obj.terms) {
    const auto it = group.find(m);
    if (it == group.end()) throw ArgumentError("objective monomial not spanned by the basis");
    // Coefficient of m in −p(y) is a_m − b_m.
    r.targets[it->second] = (c.a - c.b).value();
  }
  return r;
}

Eigen::VectorXd SosRelaxation::apply(const Eigen::MatrixXd& Q) const {
  Eigen::VectorXd out(num_constraints());
  for (int k = 0; k < num_constraints(); ++k) {
    double s = 0.0;
    for (const auto& [u, v] : constraint_pairs[k]) s += Q(u, v) + Q(v, u);
    out[k] = s;
  }
  return out;
}

Eigen::MatrixXd SosRelaxation::adjoint(const Eigen::VectorXd& y) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim(), dim());
  for (int k = 0; k < num_constraints(); ++k)
    for (const auto& [u, v] : constraint_pairs[k]) {
      out(u, v) += y[k];
      out(v, u) += y[k];
    }
  return out;
}

Eigen::VectorXd SosRelaxation::gram_diagonal() const {
  Eigen::VectorXd out(num_constraints());
  for (int k = 0; k < num_constraints(); ++k)
    out[k] = 2.0 * static_cast<double>(constraint_pairs[k].size());
  return out;
}

double SosRelaxation::coefficient_residual(const Eigen::MatrixXd& Q) const {
  if (num_constraints() == 0) return 0.0;
  return (apply(Q) - targets).cwiseAbs().maxCoeff();
}

SdpSolution solve_sdp(const SosRelaxation& relax, const SdpOptions& opts) {
  const int m = relax.dim();
  const Eigen::MatrixXd C = Eigen::MatrixXd::Identity(m, m);
  const Eigen::VectorXd& b = relax.targets;
  const Eigen::VectorXd gram = relax.gram_diagonal();
  const double b_scale = 1.0 + b.norm();
  const double c_scale = 1.0 + C.norm();

  // Multiplier step length in (0, (1+√5)/2); longer steps shorten the tail.
  constexpr double kStep = 1.6;
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd X_psd = X;
  Eigen::MatrixXd S = C;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(relax.num_constraints());
  double mu = opts.mu;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;

  SdpSolution sol;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    // Multipliers: (A A*) y = μ (b − A X) + A (C − S); A(C) = 0 since C is diagonal.
    if (y.size() > 0)
      y = (mu * (b - relax.apply(X)) - relax.apply(S)).cwiseQuotient(gram);
    const Eigen::MatrixXd V = C - relax.adjoint(y) - mu * X;
    eig.compute(V);
    const Eigen::VectorXd lam = eig.eigenvalues();
    const Eigen::MatrixXd& U = eig.eigenvectors();
    S = U * lam.cwiseMax(0.0).asDiagonal() * U.transpose();
    X_psd = U * (-lam.cwiseMin(0.0) / mu).asDiagonal() * U.transpose();
    X = (1.0 - kStep) * X + kStep * X_psd;

    if (iter % 10 == 0 || iter == opts.max_iter) {
      const double pinf = y.size() ? (relax.apply(X_psd) - b).norm() / b_scale : 0.0;
      const double dinf = (relax.adjoint(y) + S - C).norm() / c_scale;
      const double pobj = X_psd.trace();
      const double dobj = b.dot(y);
      const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      sol.iterations = iter;
      sol.primal_residual = pinf;
      sol.dual_residual = dinf;
      sol.gap = gap;
      if (std::max({pinf, dinf, gap}) < opts.tol) {
        sol.converged = true;
        break;
      }
      // Balance the two residuals. Rebalancing more often than this makes
      // μ cycle between two values and stalls the iteration.
      if (iter % 50 == 0) {
        if (pinf > 10.0 * dinf) mu = std::min(mu * 1.5, 1e6);
        else if (dinf > 10.0 * pinf) mu = std::max(mu / 1.5, 1e-6);
      }
    }
  }
  sol.Q = (X_psd + X_psd.transpose()) / 2.0;
  sol.dual = y;
  const double slack = y.size() ? (relax.apply(sol.Q) - b).lpNorm<1>() : 0.0;
  sol.upper_bound = relax.objective_constant + sol.Q.trace() + slack;
  sol.gamma = -sol.upper_bound;
  if (!sol.converged && opts.throw_on_failure) {
    std::ostringstream msg;
    msg << "SDP did not converge in " << opts.max_iter << " iterations: primal residual "
        << sol.primal_residual << ", dual residual " << sol.dual_residual << ", gap " << sol.gap;
    throw ConvergenceError(msg.str());
  }
  return sol;
}

SosResult sos_round(const SosRelaxation& relax, const SdpSolution& sol, int samples,
                    std::uint64_t seed, double null_tol) {
  if (samples < 1) throw ArgumentError("samples must be >= 1");
  const int m = relax.dim();
  if (sol.Q.rows() != m) throw ArgumentError("solution does not match relaxation");

  SosResult out;
  out.upper_bound = sol.upper_bound;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sol.Q);
  const Eigen::VectorXd& lam = eig.eigenvalues();
  const double threshold = null_tol * std::max(lam.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<int> null_cols;
  for (int i = 0; i < m; ++i)
    if (lam[i] <= threshold) null_cols.push_back(i);
  if (null_cols.empty()) {
    null_cols.push_back(0);  // eigenvalues are ascending
    out.used_fallback = true;
  }
  out.null_space_dim = out.used_fallback ? 0 : static_cast<int>(null_cols.size());
  Eigen::MatrixXd basis(m, static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t c = 0; c < null_cols.size(); ++c)
    basis.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(null_cols[c]);

  const int num_y = relax.objective.num_y;
  std::vector<int> y_pos(num_y);
  for (int i = 0; i < num_y; ++i) y_pos[i] = relax.basis.position({i});
  std::vector<std::array<int, 3>> pairs;  // basis position of y_i y_j, i, j
  for (int p = 0; p < relax.basis.size(); ++p) {
    const Monomial& mon = relax.basis.monomials[p];
    if (mon.size() == 2) pairs.push_back({p, mon[0], mon[1]});
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd coeffs(basis.cols());
  out.rounded_value = -1;
  auto sign = [](double v) { return v < 0.0 ? -1 : 1; };
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index l = 0; l < coeffs.size(); ++l) coeffs[l] = gauss(rng);
    coeffs.normalize();
    const Eigen::VectorXd P = basis * coeffs;
    Eigen::VectorXi y(num_y);
    for (int i = 0; i < num_y; ++i) y[i] = sign(P[y_pos[i]]);
    bool inconsistent = false;
    for (const auto& [p, i, j] : pairs)
      if (sign(P[p]) != y[i] * y[j]) inconsistent = true;
    out.inconsistent_draws += inconsistent;
    Assignment a(std::move(y));
    const int value = static_cast<int>(std::lround(evaluate(relax.objective, a)));
    out.draw_values.push_back(value);
    if (value > out.rounded_value) {
      out.rounded_value = value;
      out.rounded_assignment = std::move(a);
    }
  }
  return out;
}

}  // namespace htaac
