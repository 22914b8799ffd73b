#include "randfair/solvers.hpp"

#include <algorithm>
#include <optional>

#include "randfair/error.hpp"

namespace randfair {
namespace {

std::optional<RateMetric> metric_for(Notion notion) {
  switch (notion) {
    case Notion::DP: return std::nullopt;
    case Notion::PE: return RateMetric::FalsePositive;
    case Notion::EO: return RateMetric::FalseNegative;
  }
  return std::nullopt;
}

// Sorted cells of every group plus the rate maps that go with them.
struct GroupModel {
  std::vector<SortedGroupCells> cells;
  std::vector<GroupRateMap> maps;

  GroupModel(const JointDistribution& dist, Notion notion) : cells(build_all_sorted_cells(dist)) {
    if (auto metric = metric_for(notion)) {
      maps.reserve(cells.size());
      for (const auto& c : cells) maps.emplace_back(c, *metric);
    }
  }
  // maps point into cells
  GroupModel(const GroupModel&) = delete;
  GroupModel& operator=(const GroupModel&) = delete;

  GroupThresholds thresholds(const Rational& r) const {
    if (!in_unit_interval(r)) {
      throw Error(ErrorKind::ThresholdOutOfRange, "rate " + format_rational(r) + " is outside [0,1]");
    }
    GroupThresholds out;
    out.reserve(cells.size());
    for (std::size_t g = 0; g < cells.size(); ++g) {
      out.push_back({cells[g].group, maps.empty() ? r : maps[g].threshold_for(r)});
    }
    return out;
  }
};

RandomizedClassifier classifier_from(const JointDistribution& dist,
                                     const std::vector<SortedGroupCells>& cells,
                                     const GroupThresholds& thresholds) {
  std::vector<MassPrefix> prefixes;
  prefixes.reserve(cells.size());
  for (std::size_t g = 0; g < cells.size(); ++g) prefixes.push_back(mass_prefix(cells[g], thresholds[g].threshold));
  return from_mass_prefixes(dist, prefixes);
}

// Loss change when group mass band [lo, hi] is added to the accepted set.
Rational band_loss_delta(const SortedGroupCells& cells, const Rational& lo, const Rational& hi,
                         const Rational& alpha) {
  Rational delta = 0;
  const auto fractions = band_cell_fractions(cells, lo, hi);
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (fractions[i] == 0) continue;
    const auto& c = cells.cells[i];
    delta += fractions[i] * (alpha * c.negative - (1 - alpha) * c.positive);
  }
  return delta;
}

PiecewiseLinearCurve build_curve(const JointDistribution& dist, Notion notion, const Rational& alpha) {
  require_alpha(alpha);
  const GroupModel model(dist, notion);
  PiecewiseLinearCurve curve;
  curve.breakpoints = notion_boundaries(dist, notion).points;

  // Value at the first breakpoint by direct evaluation, the rest by adding the
  // loss of each mass band that enters or leaves the accepted set.
  GroupThresholds previous = model.thresholds(curve.breakpoints.front());
  curve.values.push_back(loss(classifier_from(dist, model.cells, previous), dist, alpha));
  for (std::size_t i = 1; i < curve.breakpoints.size(); ++i) {
    GroupThresholds current = model.thresholds(curve.breakpoints[i]);
    Rational value = curve.values.back();
    for (std::size_t g = 0; g < model.cells.size(); ++g) {
      const Rational& a = previous[g].threshold;
      const Rational& b = current[g].threshold;
      if (a <= b) {
        value += band_loss_delta(model.cells[g], a, b, alpha);
      } else {
        value -= band_loss_delta(model.cells[g], b, a, alpha);
      }
    }
    curve.values.push_back(value);
    previous = std::move(current);
  }
  return curve;
}

}  // namespace

std::vector<Rational> PiecewiseLinearCurve::slopes() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    out.push_back((values[i] - values[i - 1]) / (breakpoints[i] - breakpoints[i - 1]));
  }
  return out;
}

bool PiecewiseLinearCurve::is_convex() const {
  const auto s = slopes();
  return std::is_sorted(s.begin(), s.end());
}

Rational PiecewiseLinearCurve::value_at(const Rational& rate) const {
  if (breakpoints.empty() || rate < breakpoints.front() || rate > breakpoints.back()) {
    throw Error(ErrorKind::ThresholdOutOfRange, "rate " + format_rational(rate) + " is outside the curve");
  }
  const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), rate);
  const std::size_t k = static_cast<std::size_t>(it - breakpoints.begin());
  if (*it == rate) return values[k];
  return values[k - 1] + (values[k] - values[k - 1]) * (rate - breakpoints[k - 1]) /
                             (breakpoints[k] - breakpoints[k - 1]);
}

GroupThresholds fpr_to_thresholds(const JointDistribution& dist, const Rational& r) {
  return GroupModel(dist, Notion::PE).thresholds(r);
}

GroupThresholds fnr_to_thresholds(const JointDistribution& dist, const Rational& r) {
  return GroupModel(dist, Notion::EO).thresholds(r);
}

GroupThresholds rate_to_thresholds(const JointDistribution& dist, Notion notion, const Rational& r) {
  return GroupModel(dist, notion).thresholds(r);
}

RandomizedClassifier groupwise_threshold_classifier(const JointDistribution& dist,
                                                    const GroupThresholds& thresholds) {
  const auto cells = build_all_sorted_cells(dist);
  if (thresholds.size() != cells.size()) {
    throw Error(ErrorKind::GroupMismatch, "expected one threshold per group");
  }
  std::vector<MassPrefix> prefixes;
  for (const auto& t : thresholds) {
    std::size_t g = 0;
    try {
      g = dist.group_index(t.group);
    } catch (const Error&) {
      throw Error(ErrorKind::GroupMismatch, "threshold for unknown group '" + t.group + "'");
    }
    prefixes.push_back(mass_prefix(cells[g], t.threshold));
  }
  return from_mass_prefixes(dist, prefixes);
}

RandomizedClassifier threshold_classifier(const JointDistribution& dist, Notion notion,
                                          const Rational& r) {
  const GroupModel model(dist, notion);
  return classifier_from(dist, model.cells, model.thresholds(r));
}

BoundarySet notion_boundaries(const JointDistribution& dist, Notion notion) {
  switch (notion) {
    case Notion::DP: return score_boundaries(dist);
    case Notion::PE: return fp_boundaries(dist);
    case Notion::EO: return fn_boundaries(dist);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown notion");
}

PiecewiseLinearCurve dp_loss_curve(const JointDistribution& dist, const Rational& alpha) {
  return build_curve(dist, Notion::DP, alpha);
}
PiecewiseLinearCurve pe_loss_curve(const JointDistribution& dist, const Rational& alpha) {
  return build_curve(dist, Notion::PE, alpha);
}
PiecewiseLinearCurve eo_loss_curve(const JointDistribution& dist, const Rational& alpha) {
  return build_curve(dist, Notion::EO, alpha);
}
PiecewiseLinearCurve loss_curve(const JointDistribution& dist, Notion notion, const Rational& alpha) {
  return build_curve(dist, notion, alpha);
}

Solution solve(const JointDistribution& dist, Notion notion, const Rational& alpha) {
  Solution sol;
  sol.notion = notion;
  sol.alpha = alpha;
  sol.curve = build_curve(dist, notion, alpha);

  const auto& values = sol.curve.values;
  const auto best = std::min_element(values.begin(), values.end());
  const std::size_t k = static_cast<std::size_t>(best - values.begin());
  sol.unique = std::count(values.begin(), values.end(), *best) == 1;
  sol.rate = sol.curve.breakpoints[k];

  const GroupModel model(dist, notion);
  sol.group_thresholds = model.thresholds(sol.rate);
  sol.classifier = classifier_from(dist, model.cells, sol.group_thresholds);
  sol.loss = loss(sol.classifier, dist, alpha);
  sol.error_probability = error_probability(sol.classifier, dist);
  return sol;
}

Solution solve_dp(const JointDistribution& dist, const Rational& alpha) { return solve(dist, Notion::DP, alpha); }
Solution solve_pe(const JointDistribution& dist, const Rational& alpha) { return solve(dist, Notion::PE, alpha); }
Solution solve_eo(const JointDistribution& dist, const Rational& alpha) { return solve(dist, Notion::EO, alpha); }

}  // namespace randfair
