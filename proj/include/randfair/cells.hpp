#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "randfair/distribution.hpp"
#include "randfair/rational.hpp"

namespace randfair {

// Features of one group sharing a score, merged into one cell.
struct SortedCell {
  Rational score;
  Rational relative_mass;  // share of the group's mass, in (0,1]
  Rational positive;       // absolute masses
  Rational negative;
  std::vector<std::string> members;
};

// Cells of one group in strictly descending score order.
struct SortedGroupCells {
  std::string group;
  Rational group_mass;
  std::vector<SortedCell> cells;
  std::vector<Rational> cumulative;  // size cells+1; cumulative[0] = 0, back() = 1

  // Interval [cumulative[i], cumulative[i+1]] of cell i in group-mass units.
  const Rational& lower(std::size_t i) const { return cumulative[i]; }
  const Rational& upper(std::size_t i) const { return cumulative[i + 1]; }
};

SortedGroupCells build_sorted_cells(const JointDistribution& dist, std::string_view group);
std::vector<SortedGroupCells> build_all_sorted_cells(const JointDistribution& dist);

struct SplitCell {
  std::size_t index;
  Rational fraction;  // in (0,1)
};

// Top t of a group's mass: cells [0, whole_cells) plus an optional fraction
// of cell `whole_cells`.
struct MassPrefix {
  std::string group;
  Rational threshold;
  std::size_t whole_cells = 0;
  std::optional<SplitCell> split;

  // Acceptance probability of cell i under this prefix.
  Rational acceptance(std::size_t i) const;
};

MassPrefix mass_prefix(const SortedGroupCells& cells, const Rational& t);

// For each cell, the fraction of that cell lying inside the mass band [lo, hi].
std::vector<Rational> band_cell_fractions(const SortedGroupCells& cells, const Rational& lo,
                                          const Rational& hi);

enum class BoundaryKind { Score, FalsePositive, FalseNegative };

struct BoundarySet {
  BoundaryKind kind;
  std::vector<Rational> points;  // strictly increasing, front() = 0, back() = 1
};

BoundarySet score_boundaries(const JointDistribution& dist);
BoundarySet fp_boundaries(const JointDistribution& dist);
BoundarySet fn_boundaries(const JointDistribution& dist);

enum class RateMetric { FalsePositive, FalseNegative };

// Group-conditional error rate as a function of the group's mass threshold t.
// Piecewise linear with knots at the cumulative cell boundaries; FPR rises
// from 0 to 1, FNR falls from 1 to 0.
class GroupRateMap {
 public:
  // Throws UndefinedMetric when the group has no negatives (FPR) or no
  // positives (FNR).
  GroupRateMap(const SortedGroupCells& cells, RateMetric metric);

  RateMetric metric() const { return metric_; }
  const std::vector<Rational>& knots() const { return knots_; }  // rate at cumulative[k]

  Rational rate_at(const Rational& t) const;

  // Inverse map. The rate is flat only over leading score-1 cells (FPR = 0)
  // or trailing score-0 cells (FNR = 0); there the end of the flat run that
  // excludes no useful mass is returned: all score-1 cells accepted for
  // FPR = 0, all score-0 cells rejected for FNR = 0.
  Rational threshold_for(const Rational& rate) const;

 private:
  const SortedGroupCells* cells_;
  RateMetric metric_;
  std::vector<Rational> knots_;
  std::vector<Rational> progress_;  // nondecreasing: FPR, or 1 - FNR
};

}  // namespace randfair
