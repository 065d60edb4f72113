#pragma once

#include <cstdint>

#include "htaac/cnf.hpp"

namespace htaac {

struct BruteForceResult {
  int optimum = 0;
  Assignment witness;
};

constexpr int kBruteForceMaxVars = 26;

/// Exhaustive search over 2^{num_vars} assignments with y0 = +1. Returns
/// the first maximizer in mask order.
BruteForceResult brute_force(const CnfInstance& instance, int max_vars = kBruteForceMaxVars);

struct RandomGuessResult {
  double mean = 0.0;
  int best = 0;
};

/// Each variable true with probability 1/2, independently per trial.
RandomGuessResult random_guess(const CnfInstance& instance, int trials, std::uint64_t seed);

struct LocalSearchConfig {
  int restarts = 20;
  std::int64_t flips = 0;  // 0 means 50·vars·sqrt(clauses)
  double noise = 0.3;
  std::uint64_t seed = 0;

  std::int64_t effective_flips(const CnfInstance& instance) const;
};

struct LocalSearchResult {
  int best = 0;
  Assignment witness;
};

/// WalkSAT: from a random start, repeatedly pick an unsatisfied clause and
/// flip either a random variable of it (probability `noise`) or the one
/// that breaks the fewest satisfied clauses. Restart r draws from an RNG
/// stream seeded by (seed, r).
LocalSearchResult local_search(const CnfInstance& instance, const LocalSearchConfig& cfg);

}  // namespace htaac
