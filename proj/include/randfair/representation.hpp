#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "randfair/classifier.hpp"
#include "randfair/distribution.hpp"

namespace randfair {

// A representation point. It stands for the mass band (lower, upper] of the
// notion's rate axis. A boundary block (the score-1 cells accepted at FPR 0,
// or the score-0 cells rejected at FNR 0) has lower = upper = 0 and adds
// nothing to any group's rate.
struct RepPoint {
  std::size_t id = 0;
  Rational lower;
  Rational upper;
  bool boundary_block = false;
};

struct RepAssignment {
  std::size_t point = 0;
  Rational probability;
};

struct RepMapEntry {
  std::string feature;
  std::string group;
  std::vector<RepAssignment> assignments;  // nonzero probabilities, summing to 1
};

// Randomized map from (feature, group) to points carrying no group label.
struct Representation {
  Notion notion;
  std::vector<RepPoint> points;
  std::vector<RepMapEntry> map;  // distribution cell order

  const RepMapEntry& entry(std::string_view feature, std::string_view group) const;
};

Representation build_representation(const JointDistribution& dist, Notion notion,
                                    const Rational& alpha);

// g[i] in {0,1} is the label given to point i.
RandomizedClassifier apply_representation(const Representation& rep,
                                          std::span<const std::uint8_t> g,
                                          const JointDistribution& dist);

// Mass of (point, group, label) induced by pushing the distribution through
// the representation. Indexed [point][group].
struct InducedMass {
  Rational positive;
  Rational negative;
};
std::vector<std::vector<InducedMass>> induced_masses(const Representation& rep,
                                                     const JointDistribution& dist);

struct RepresentationAudit {
  Notion notion;
  std::size_t n_points = 0;
  std::uint64_t classifiers_checked = 0;
  bool all_fair = false;
  Rational best_loss;
  std::uint64_t best_assignment = 0;  // bit i set = point i accepted
  Rational solver_loss;
  Rational cfr;  // best_loss - solver_loss
};

inline constexpr std::size_t kDefaultAuditCap = 20;

// Enumerates all 2^n deterministic labelings of the points. Throws
// TooManyPoints above `cap`. The best labeling is the one of minimal loss,
// ties going to the smallest bitmask.
RepresentationAudit audit_representation(const Representation& rep, const JointDistribution& dist,
                                         const Rational& alpha,
                                         std::size_t cap = kDefaultAuditCap);

}  // namespace randfair
