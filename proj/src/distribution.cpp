#include "randfair/distribution.hpp"

#include "randfair/error.hpp"

namespace randfair {

JointDistribution JointDistribution::from_records(std::span<const Record> rows,
                                                  std::span<const std::string> declared_groups) {
  JointDistribution dist;
  std::vector<std::string> order;
  std::map<std::string, std::size_t, std::less<>> seen;
  auto note_group = [&](const std::string& g) {
    if (seen.emplace(g, order.size()).second) order.push_back(g);
  };
  for (const auto& g : declared_groups) {
    if (seen.count(g) != 0) {
      throw Error(ErrorKind::InvalidArgument, "group '" + g + "' declared twice");
    }
    note_group(g);
  }

  // Accumulate in first-appearance order of (feature, group).
  std::vector<CellMass> cells;
  std::map<std::pair<std::string, std::string>, std::size_t, std::less<>> index;
  Rational total = 0;
  for (const auto& row : rows) {
    if (row.label != 0 && row.label != 1) {
      throw Error(ErrorKind::InvalidArgument,
                  "label must be 0 or 1, got " + std::to_string(row.label));
    }
    if (row.mass < 0) {
      throw Error(ErrorKind::NegativeMass, "negative mass " + format_rational(row.mass) + " for (" +
                                               row.feature + ", " + row.group + ")");
    }
    note_group(row.group);
    auto key = std::make_pair(row.feature, row.group);
    auto [it, inserted] = index.emplace(key, cells.size());
    if (inserted) cells.push_back(CellMass{row.feature, row.group, 0, 0});
    CellMass& cell = cells[it->second];
    (row.label == 1 ? cell.positive : cell.negative) += row.mass;
    total += row.mass;
  }

  if (total != 1) {
    throw Error(ErrorKind::TotalMassNotOne, "masses sum to " + format_rational(total) + ", not 1");
  }

  std::vector<GroupTotals> totals(order.size(), GroupTotals{0, 0, 0});
  for (const auto& cell : cells) {
    auto& t = totals[seen.find(cell.group)->second];
    t.positive += cell.positive;
    t.negative += cell.negative;
    t.mass += cell.total();
  }
  for (std::size_t g = 0; g < order.size(); ++g) {
    if (totals[g].mass == 0) {
      throw Error(ErrorKind::EmptyGroup, "group '" + order[g] + "' has zero total mass");
    }
  }
  if (order.size() < 2) {
    throw Error(ErrorKind::FewerThanTwoGroups,
                "need at least 2 groups, got " + std::to_string(order.size()));
  }

  for (auto& cell : cells) {
    if (cell.total() == 0) continue;
    dist.cell_index_.emplace(std::make_pair(cell.feature, cell.group), dist.cells_.size());
    dist.cells_.push_back(std::move(cell));
  }
  dist.groups_ = std::move(order);
  dist.totals_ = std::move(totals);
  dist.group_index_ = std::move(seen);
  return dist;
}

bool JointDistribution::has_cell(std::string_view feature, std::string_view group) const {
  return cell_index_.find(std::make_pair(std::string(feature), std::string(group))) !=
         cell_index_.end();
}

const CellMass& JointDistribution::cell(std::string_view feature, std::string_view group) const {
  auto it = cell_index_.find(std::make_pair(std::string(feature), std::string(group)));
  if (it == cell_index_.end()) {
    throw Error(ErrorKind::UnknownCell,
                "no mass at (" + std::string(feature) + ", " + std::string(group) + ")");
  }
  return cells_[it->second];
}

std::size_t JointDistribution::group_index(std::string_view group) const {
  auto it = group_index_.find(group);
  if (it == group_index_.end()) {
    throw Error(ErrorKind::UnknownGroup, "unknown group '" + std::string(group) + "'");
  }
  return it->second;
}

const Rational& JointDistribution::group_mass(std::string_view group) const {
  return totals_[group_index(group)].mass;
}
const Rational& JointDistribution::group_positive(std::string_view group) const {
  return totals_[group_index(group)].positive;
}
const Rational& JointDistribution::group_negative(std::string_view group) const {
  return totals_[group_index(group)].negative;
}

JointDistribution JointDistribution::flip_labels() const {
  JointDistribution flipped = *this;
  for (auto& cell : flipped.cells_) std::swap(cell.positive, cell.negative);
  for (auto& t : flipped.totals_) std::swap(t.positive, t.negative);
  return flipped;
}

Rational prior_positive(const JointDistribution& dist) {
  Rational pi = 0;
  for (const auto& cell : dist.cells()) pi += cell.positive;
  return pi;
}

Rational score(const CellMass& cell) { return cell.positive / cell.total(); }

Rational score(const JointDistribution& dist, std::string_view feature, std::string_view group) {
  return score(dist.cell(feature, group));
}

void require_alpha(const Rational& alpha) {
  if (alpha <= 0 || alpha >= 1) {
    throw Error(ErrorKind::AlphaOutOfRange,
                "alpha must lie strictly between 0 and 1, got " + format_rational(alpha));
  }
}

RandomizedClassifier bayes_optimal(const JointDistribution& dist, const Rational& alpha) {
  require_alpha(alpha);
  RandomizedClassifier f;
  for (const auto& cell : dist.cells()) f.set(cell.feature, cell.group, score(cell) >= alpha ? 1 : 0);
  return f;
}

}  // namespace randfair
