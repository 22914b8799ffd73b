#pragma once

#include <string>
#include <vector>

#include "randfair/cells.hpp"
#include "randfair/classifier.hpp"
#include "randfair/distribution.hpp"

namespace randfair {

// Loss as a function of the common rate, stored at its breakpoints and
// linear in between.
struct PiecewiseLinearCurve {
  std::vector<Rational> breakpoints;  // strictly increasing, 0 ... 1
  std::vector<Rational> values;

  std::vector<Rational> slopes() const;
  bool is_convex() const;  // slopes nondecreasing
  Rational value_at(const Rational& rate) const;
};

struct GroupThreshold {
  std::string group;
  Rational threshold;
};
using GroupThresholds = std::vector<GroupThreshold>;  // group declaration order

struct Solution {
  Notion notion;
  Rational alpha;
  Rational rate;  // selection rate (DP), common FPR (PE) or common FNR (EO)
  GroupThresholds group_thresholds;
  RandomizedClassifier classifier;
  Rational loss;               // cost-sensitive risk at alpha
  Rational error_probability;  // 0-1 loss of the same classifier
  PiecewiseLinearCurve curve;
  bool unique = true;  // only one breakpoint attains the minimum
};

// Per-group mass thresholds whose group FPR (resp. FNR) equals r. At r = 0
// every score-1 cell is accepted (FPR) or every score-0 cell rejected (FNR).
GroupThresholds fpr_to_thresholds(const JointDistribution& dist, const Rational& r);
GroupThresholds fnr_to_thresholds(const JointDistribution& dist, const Rational& r);
// DP uses t_z = r in every group.
GroupThresholds rate_to_thresholds(const JointDistribution& dist, Notion notion, const Rational& r);

RandomizedClassifier groupwise_threshold_classifier(const JointDistribution& dist,
                                                    const GroupThresholds& thresholds);
// The mass-threshold classifier with common selection rate r (DP) or the
// group-wise one equalizing FPR / FNR at r (PE / EO).
RandomizedClassifier threshold_classifier(const JointDistribution& dist, Notion notion,
                                          const Rational& r);

BoundarySet notion_boundaries(const JointDistribution& dist, Notion notion);

PiecewiseLinearCurve dp_loss_curve(const JointDistribution& dist, const Rational& alpha);
PiecewiseLinearCurve pe_loss_curve(const JointDistribution& dist, const Rational& alpha);
PiecewiseLinearCurve eo_loss_curve(const JointDistribution& dist, const Rational& alpha);
PiecewiseLinearCurve loss_curve(const JointDistribution& dist, Notion notion, const Rational& alpha);

// Optimal randomized fair classifier. Ties between minimizing breakpoints go
// to the smallest rate.
Solution solve_dp(const JointDistribution& dist, const Rational& alpha);
Solution solve_pe(const JointDistribution& dist, const Rational& alpha);
Solution solve_eo(const JointDistribution& dist, const Rational& alpha);
Solution solve(const JointDistribution& dist, Notion notion, const Rational& alpha);

}  // namespace randfair
