#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "randfair/cells.hpp"
#include "randfair/distribution.hpp"
#include "randfair/randomized_classifier.hpp"

namespace randfair {

// Cost-sensitive risk alpha * Pr[f=1, Y=0] + (1 - alpha) * Pr[f=0, Y=1].
// At alpha = 1/2 this is half of error_probability().
Rational loss(const RandomizedClassifier& f, const JointDistribution& dist, const Rational& alpha);

// Plain 0-1 loss Pr[f(X,Z) != Y].
Rational error_probability(const RandomizedClassifier& f, const JointDistribution& dist);

// Expected false-positive and false-negative probability mass.
struct ErrorMasses {
  Rational false_positive;
  Rational false_negative;
};
ErrorMasses error_masses(const RandomizedClassifier& f, const JointDistribution& dist);

Rational selection_rate(const RandomizedClassifier& f, const JointDistribution& dist,
                        std::string_view group);
Rational fpr(const RandomizedClassifier& f, const JointDistribution& dist, std::string_view group);
Rational fnr(const RandomizedClassifier& f, const JointDistribution& dist, std::string_view group);

struct FairnessReport {
  Notion notion;
  std::vector<std::pair<std::string, Rational>> per_group_rate;  // group declaration order
  bool fair = false;
  Rational max_gap;
};

// Fair means the per-group rates are exactly equal.
FairnessReport check_fairness(const RandomizedClassifier& f, const JointDistribution& dist,
                              Notion notion);

// Accepts whole cells, the split fraction of the split cell (shared by every
// member feature of a merged cell), nothing else. Needs one prefix per group.
RandomizedClassifier from_mass_prefixes(const JointDistribution& dist,
                                        std::span<const MassPrefix> prefixes);

RandomizedClassifier constant_classifier(const JointDistribution& dist, bool accept);

}  // namespace randfair
