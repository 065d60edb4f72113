#include "htaac/baselines.hpp"

#include <cmath>
#include <random>

#include "htaac/error.hpp"

namespace htaac {

namespace {

struct ClauseMasks {
  std::uint64_t positive = 0;
  std::uint64_t negative = 0;
  bool always = false;
};

}  // namespace

BruteForceResult brute_force(const CnfInstance& instance, int max_vars) {
  const int nv = instance.num_vars();
  if (nv > max_vars || nv > 62)
    throw ArgumentError("brute force limited to " + std::to_string(max_vars) + " variables");
  std::vector<ClauseMasks> masks;
  int constant = 0;
  for (const Clause& c : instance.clauses()) {
    if (c.tautological) {
      ++constant;
      continue;
    }
    ClauseMasks cm;
    for (const Literal& l : c.literals)
      (l.negated ? cm.negative : cm.positive) |= std::uint64_t{1} << (l.var - 1);
    masks.push_back(cm);
  }
  int best = -1;
  std::uint64_t best_mask = 0;
  const std::uint64_t end = std::uint64_t{1} << nv;
  for (std::uint64_t x = 0; x < end; ++x) {
    int count = constant;
    for (const ClauseMasks& cm : masks) count += ((x & cm.positive) | (~x & cm.negative)) != 0;
    if (count > best) {
      best = count;
      best_mask = x;
    }
  }
  return {best, Assignment::from_mask(nv, best_mask)};
}

RandomGuessResult random_guess(const CnfInstance& instance, int trials, std::uint64_t seed) {
  if (trials < 1) throw ArgumentError("trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  Eigen::VectorXi y(instance.num_y());
  y[0] = 1;
  double total = 0.0;
  int best = 0;
  for (int t = 0; t < trials; ++t) {
    for (int i = 1; i < y.size(); ++i) y[i] = coin(rng) ? 1 : -1;
    const int c = count_satisfied(instance, Assignment(y));
    total += c;
    best = std::max(best, c);
  }
  return {total / trials, best};
}

std::int64_t LocalSearchConfig::effective_flips(const CnfInstance& instance) const {
  if (flips > 0) return flips;
  return static_cast<std::int64_t>(
      std::ceil(50.0 * instance.num_vars() * std::sqrt(static_cast<double>(instance.num_clauses()))));
}

namespace {

class WalkSat {
 public:
  explicit WalkSat(const CnfInstance& instance) : inst_(instance) {
    occurs_.resize(instance.num_vars() + 1);
    for (std::size_t c = 0; c < instance.num_clauses(); ++c) {
      const Clause& cl = instance.clauses()[c];
      if (cl.tautological) {
        ++constant_;
        continue;
      }
      active_.push_back(static_cast<int>(c));
      for (const Literal& l : cl.literals) occurs_[l.var].push_back(static_cast<int>(c));
    }
  }

  LocalSearchResult run(const LocalSearchConfig& cfg) {
    LocalSearchResult best;
    best.best = -1;
    const std::int64_t flips = cfg.effective_flips(inst_);
    for (int r = 0; r < cfg.restarts; ++r) {
      std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                        static_cast<std::uint32_t>(r)};
      std::mt19937_64 rng(seq);
      restart(rng);
      if (satisfied() > best.best) record(best);
      for (std::int64_t step = 0; step < flips && !unsat_.empty(); ++step) {
        flip(choose(rng, cfg.noise));
        if (satisfied() > best.best) record(best);
      }
    }
    return best;
  }

 private:
  int satisfied() const { return constant_ + static_cast<int>(active_.size() - unsat_.size()); }

  bool literal_true(const Literal& l) const { return truth_[l.var] != l.negated; }

  void record(LocalSearchResult& best) const {
    best.best = satisfied();
    Eigen::VectorXi y(inst_.num_y());
    y[0] = 1;
    for (int i = 1; i < y.size(); ++i) y[i] = truth_[i] ? 1 : -1;
    best.witness = Assignment(std::move(y));
  }

  void restart(std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    truth_.assign(inst_.num_vars() + 1, false);
    for (int i = 1; i <= inst_.num_vars(); ++i) truth_[i] = coin(rng);
    true_count_.assign(inst_.num_clauses(), 0);
    unsat_pos_.assign(inst_.num_clauses(), -1);
    unsat_.clear();
    for (int c : active_) {
      for (const Literal& l : inst_.clauses()[c].literals) true_count_[c] += literal_true(l);
      if (true_count_[c] == 0) add_unsat(c);
    }
  }

  void add_unsat(int c) {
    unsat_pos_[c] = static_cast<int>(unsat_.size());
    unsat_.push_back(c);
  }

  void remove_unsat(int c) {
    const int pos = unsat_pos_[c];
    const int last = unsat_.back();
    unsat_[pos] = last;
    unsat_pos_[last] = pos;
    unsat_.pop_back();
    unsat_pos_[c] = -1;
  }

  int break_count(int var) const {
    int breaks = 0;
    for (int c : occurs_[var]) {
      if (true_count_[c] != 1) continue;
      for (const Literal& l : inst_.clauses()[c].literals)
        if (l.var == var && literal_true(l)) ++breaks;
    }
    return breaks;
  }

  int choose(std::mt19937_64& rng, double noise) {
    std::uniform_int_distribution<std::size_t> pick_clause(0, unsat_.size() - 1);
    const Clause& cl = inst_.clauses()[unsat_[pick_clause(rng)]];
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < noise) {
      std::uniform_int_distribution<std::size_t> pick(0, cl.size() - 1);
      return cl.literals[pick(rng)].var;
    }
    int best_var = cl.literals.front().var;
    int best_breaks = break_count(best_var);
    int ties = 1;
    for (std::size_t t = 1; t < cl.size(); ++t) {
      const int v = cl.literals[t].var;
      const int b = break_count(v);
      if (b < best_breaks) {
        best_breaks = b;
        best_var = v;
        ties = 1;
      } else if (b == best_breaks) {
        // Reservoir tie-break keeps the choice uniform among ties.
        std::uniform_int_distribution<int> keep(0, ties++);
        if (keep(rng) == 0) best_var = v;
      }
    }
    return best_var;
  }

  void flip(int var) {
    truth_[var] = !truth_[var];
    for (int c : occurs_[var]) {
      for (const Literal& l : inst_.clauses()[c].literals) {
        if (l.var != var) continue;
        const int before = true_count_[c];
        true_count_[c] += literal_true(l) ? 1 : -1;
        if (before == 0 && true_count_[c] > 0) remove_unsat(c);
        if (before > 0 && true_count_[c] == 0) add_unsat(c);
      }
    }
  }

  const CnfInstance& inst_;
  std::vector<std::vector<int>> occurs_;
  std::vector<int> active_;
  int constant_ = 0;
  std::vector<bool> truth_;
  std::vector<int> true_count_;
  std::vector<int> unsat_;
  std::vector<int> unsat_pos_;
};

}  // namespace

LocalSearchResult local_search(const CnfInstance& instance, const LocalSearchConfig& cfg) {
  if (cfg.restarts < 1) throw ArgumentError("restarts must be >= 1");
  if (cfg.flips < 0) throw ArgumentError("flips must be >= 0");
  if (cfg.noise < 0.0 || cfg.noise > 1.0) throw ArgumentError("noise must lie in [0, 1]");
  WalkSat ws(instance);
  return ws.run(cfg);
}

}  // namespace htaac
