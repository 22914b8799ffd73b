#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "randfair/randomized_classifier.hpp"
#include "randfair/rational.hpp"

namespace randfair {

// One input row: P(X=feature, Z=group, Y=label) = mass.
struct Record {
  std::string feature;
  std::string group;
  int label = 0;  // 0 or 1
  Rational mass;
};

// Probability mass of one (feature, group) pair, split by label.
struct CellMass {
  std::string feature;
  std::string group;
  Rational positive;
  Rational negative;

  Rational total() const { return positive + negative; }
};

// Finite joint distribution over features x groups x {0,1}. Immutable once
// built; every stored pair has strictly positive mass and the total is 1.
class JointDistribution {
 public:
  // Sums duplicate (feature, group, label) rows and drops zero-mass pairs.
  // `declared_groups` fixes the group order; groups first seen in `rows` are
  // appended in order of appearance.
  static JointDistribution from_records(std::span<const Record> rows,
                                        std::span<const std::string> declared_groups = {});

  const std::vector<CellMass>& cells() const { return cells_; }
  const std::vector<std::string>& groups() const { return groups_; }

  bool has_cell(std::string_view feature, std::string_view group) const;
  const CellMass& cell(std::string_view feature, std::string_view group) const;  // UnknownCell

  std::size_t group_index(std::string_view group) const;  // UnknownGroup
  const Rational& group_mass(std::string_view group) const;
  const Rational& group_positive(std::string_view group) const;
  const Rational& group_negative(std::string_view group) const;

  // Same features and groups with Y replaced by 1 - Y.
  JointDistribution flip_labels() const;

 private:
  struct GroupTotals {
    Rational mass, positive, negative;
  };

  std::vector<CellMass> cells_;
  std::vector<std::string> groups_;
  std::vector<GroupTotals> totals_;
  std::map<std::pair<std::string, std::string>, std::size_t, std::less<>> cell_index_;
  std::map<std::string, std::size_t, std::less<>> group_index_;
};

// pi = Pr[Y = 1].
Rational prior_positive(const JointDistribution& dist);

// Pr[Y = 1 | X = feature, Z = group].
Rational score(const CellMass& cell);
Rational score(const JointDistribution& dist, std::string_view feature, std::string_view group);

// Throws AlphaOutOfRange unless 0 < alpha < 1.
void require_alpha(const Rational& alpha);

// Accepts exactly the pairs whose score is >= alpha.
RandomizedClassifier bayes_optimal(const JointDistribution& dist, const Rational& alpha);

}  // namespace randfair
