#include "randfair/cells.hpp"

#include <algorithm>

#include "randfair/error.hpp"

namespace randfair {
namespace {

void push_sorted_unique(std::vector<Rational>& points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

BoundarySet rate_boundaries(const JointDistribution& dist, RateMetric metric, BoundaryKind kind) {
  BoundarySet set{kind, {}};
  for (const auto& group_cells : build_all_sorted_cells(dist)) {
    const GroupRateMap map(group_cells, metric);
    set.points.insert(set.points.end(), map.knots().begin(), map.knots().end());
  }
  push_sorted_unique(set.points);
  return set;
}

}  // namespace

SortedGroupCells build_sorted_cells(const JointDistribution& dist, std::string_view group) {
  SortedGroupCells out;
  out.group = std::string(group);
  out.group_mass = dist.group_mass(group);

  std::vector<const CellMass*> members;
  for (const auto& cell : dist.cells()) {
    if (cell.group == group) members.push_back(&cell);
  }
  // Stable so merged members keep distribution order.
  std::stable_sort(members.begin(), members.end(), [](const CellMass* a, const CellMass* b) {
    return score(*a) > score(*b);
  });

  for (const CellMass* m : members) {
    Rational s = score(*m);
    if (out.cells.empty() || out.cells.back().score != s) {
      out.cells.push_back(SortedCell{s, 0, 0, 0, {}});
    }
    SortedCell& c = out.cells.back();
    c.positive += m->positive;
    c.negative += m->negative;
    c.members.push_back(m->feature);
  }

  out.cumulative.reserve(out.cells.size() + 1);
  out.cumulative.push_back(0);
  Rational running = 0;
  for (auto& c : out.cells) {
    c.relative_mass = (c.positive + c.negative) / out.group_mass;
    running += c.relative_mass;
    out.cumulative.push_back(running);
  }
  return out;
}

std::vector<SortedGroupCells> build_all_sorted_cells(const JointDistribution& dist) {
  std::vector<SortedGroupCells> all;
  all.reserve(dist.groups().size());
  for (const auto& g : dist.groups()) all.push_back(build_sorted_cells(dist, g));
  return all;
}

Rational MassPrefix::acceptance(std::size_t i) const {
  if (i < whole_cells) return 1;
  if (split && split->index == i) return split->fraction;
  return 0;
}

MassPrefix mass_prefix(const SortedGroupCells& cells, const Rational& t) {
  if (!in_unit_interval(t)) {
    throw Error(ErrorKind::ThresholdOutOfRange,
                "mass threshold " + format_rational(t) + " is outside [0,1]");
  }
  MassPrefix prefix{cells.group, t, 0, std::nullopt};
  // Largest k with cumulative[k] <= t.
  const auto it = std::upper_bound(cells.cumulative.begin(), cells.cumulative.end(), t);
  std::size_t k = static_cast<std::size_t>(it - cells.cumulative.begin()) - 1;
  prefix.whole_cells = k;
  if (cells.cumulative[k] != t) {
    prefix.split = SplitCell{k, Rational((t - cells.cumulative[k]) / cells.cells[k].relative_mass)};
  }
  return prefix;
}

std::vector<Rational> band_cell_fractions(const SortedGroupCells& cells, const Rational& lo,
                                          const Rational& hi) {
  std::vector<Rational> fractions(cells.cells.size(), Rational(0));
  for (std::size_t i = 0; i < cells.cells.size(); ++i) {
    const Rational& a = std::max(lo, cells.lower(i));
    const Rational& b = std::min(hi, cells.upper(i));
    if (b > a) fractions[i] = (b - a) / cells.cells[i].relative_mass;
  }
  return fractions;
}

BoundarySet score_boundaries(const JointDistribution& dist) {
  BoundarySet set{BoundaryKind::Score, {}};
  for (const auto& group_cells : build_all_sorted_cells(dist)) {
    set.points.insert(set.points.end(), group_cells.cumulative.begin(), group_cells.cumulative.end());
  }
  push_sorted_unique(set.points);
  return set;
}

BoundarySet fp_boundaries(const JointDistribution& dist) {
  return rate_boundaries(dist, RateMetric::FalsePositive, BoundaryKind::FalsePositive);
}

BoundarySet fn_boundaries(const JointDistribution& dist) {
  return rate_boundaries(dist, RateMetric::FalseNegative, BoundaryKind::FalseNegative);
}

GroupRateMap::GroupRateMap(const SortedGroupCells& cells, RateMetric metric)
    : cells_(&cells), metric_(metric) {
  Rational denom = 0;
  for (const auto& c : cells.cells) denom += metric == RateMetric::FalsePositive ? c.negative : c.positive;
  if (denom == 0) {
    throw Error(ErrorKind::UndefinedMetric,
                std::string(metric == RateMetric::FalsePositive ? "FPR" : "FNR") +
                    " is undefined for group '" + cells.group + "': it has no " +
                    (metric == RateMetric::FalsePositive ? "negatives" : "positives"));
  }
  progress_.reserve(cells.cells.size() + 1);
  knots_.reserve(cells.cells.size() + 1);
  Rational running = 0;
  progress_.push_back(0);
  for (const auto& c : cells.cells) {
    running += metric == RateMetric::FalsePositive ? c.negative : c.positive;
    progress_.push_back(running / denom);
  }
  for (const auto& p : progress_) {
    knots_.push_back(metric == RateMetric::FalsePositive ? p : Rational(1 - p));
  }
}

Rational GroupRateMap::rate_at(const Rational& t) const {
  if (!in_unit_interval(t)) {
    throw Error(ErrorKind::ThresholdOutOfRange,
                "mass threshold " + format_rational(t) + " is outside [0,1]");
  }
  const auto& cum = cells_->cumulative;
  const auto it = std::upper_bound(cum.begin(), cum.end(), t);
  std::size_t k = static_cast<std::size_t>(it - cum.begin()) - 1;
  if (k + 1 == cum.size()) return knots_.back();
  return knots_[k] + (knots_[k + 1] - knots_[k]) * (t - cum[k]) / cells_->cells[k].relative_mass;
}

Rational GroupRateMap::threshold_for(const Rational& rate) const {
  if (!in_unit_interval(rate)) {
    throw Error(ErrorKind::ThresholdOutOfRange, "rate " + format_rational(rate) + " is outside [0,1]");
  }
  const Rational target = metric_ == RateMetric::FalsePositive ? rate : Rational(1 - rate);
  const auto& cum = cells_->cumulative;
  if (target == 0) {
    // Largest t with zero progress: skip the leading zero-contribution cells.
    const auto it = std::upper_bound(progress_.begin(), progress_.end(), Rational(0));
    return cum[static_cast<std::size_t>(it - progress_.begin()) - 1];
  }
  // Smallest j with progress[j+1] >= target; progress[j] < target there.
  const auto it = std::lower_bound(progress_.begin(), progress_.end(), target);
  const std::size_t j = static_cast<std::size_t>(it - progress_.begin()) - 1;
  return cum[j] + cells_->cells[j].relative_mass * (target - progress_[j]) /
                      (progress_[j + 1] - progress_[j]);
}

}  // namespace randfair
