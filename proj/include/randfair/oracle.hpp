#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "randfair/classifier.hpp"
#include "randfair/distribution.hpp"

namespace randfair {

struct OracleResult {
  Notion notion;
  Rational alpha;
  Rational optimal_loss;
  std::optional<RandomizedClassifier> witness;
  std::uint64_t n_candidates = 0;  // feasible points examined
  bool feasible = false;
};

inline constexpr std::size_t kDefaultOracleCap = 24;

// Exact optimum over all randomized classifiers that satisfy the notion, for
// two-group distributions. The feasible set is the box [0,1]^n of
// per-(feature, group) acceptance probabilities cut by one hyperplane, so
// every vertex has at most one fractional coordinate: all such points are
// enumerated. Ties go to the lexicographically smallest acceptance vector in
// distribution cell order.
OracleResult vertex_enumerate_optimal(const JointDistribution& dist, Notion notion,
                                      const Rational& alpha, std::size_t cap = kDefaultOracleCap);

// Exhaustive search over the 2^n deterministic classifiers.
OracleResult best_deterministic_fair(const JointDistribution& dist, Notion notion,
                                     const Rational& alpha, std::size_t cap = kDefaultOracleCap);

}  // namespace randfair
