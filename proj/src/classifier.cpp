#include "randfair/classifier.hpp"

#include <algorithm>

#include "randfair/error.hpp"

namespace randfair {
namespace {

struct GroupSums {
  Rational accepted_mass, accepted_positive, accepted_negative;
};

GroupSums group_sums(const RandomizedClassifier& f, const JointDistribution& dist,
                     std::string_view group) {
  dist.group_index(group);
  GroupSums s{0, 0, 0};
  for (const auto& cell : dist.cells()) {
    if (cell.group != group) continue;
    const Rational& a = f.at(cell.feature, cell.group);
    s.accepted_positive += a * cell.positive;
    s.accepted_negative += a * cell.negative;
  }
  s.accepted_mass = s.accepted_positive + s.accepted_negative;
  return s;
}

[[noreturn]] void undefined(std::string_view metric, std::string_view group, std::string_view why) {
  throw Error(ErrorKind::UndefinedMetric, std::string(metric) + " is undefined for group '" +
                                              std::string(group) + "': it has no " + std::string(why));
}

}  // namespace

ErrorMasses error_masses(const RandomizedClassifier& f, const JointDistribution& dist) {
  ErrorMasses m{0, 0};
  for (const auto& cell : dist.cells()) {
    const Rational& a = f.at(cell.feature, cell.group);
    m.false_positive += a * cell.negative;
    m.false_negative += (1 - a) * cell.positive;
  }
  return m;
}

Rational loss(const RandomizedClassifier& f, const JointDistribution& dist, const Rational& alpha) {
  require_alpha(alpha);
  const ErrorMasses m = error_masses(f, dist);
  return alpha * m.false_positive + (1 - alpha) * m.false_negative;
}

Rational error_probability(const RandomizedClassifier& f, const JointDistribution& dist) {
  const ErrorMasses m = error_masses(f, dist);
  return m.false_positive + m.false_negative;
}

Rational selection_rate(const RandomizedClassifier& f, const JointDistribution& dist,
                        std::string_view group) {
  return group_sums(f, dist, group).accepted_mass / dist.group_mass(group);
}

Rational fpr(const RandomizedClassifier& f, const JointDistribution& dist, std::string_view group) {
  const GroupSums s = group_sums(f, dist, group);
  const Rational& negatives = dist.group_negative(group);
  if (negatives == 0) undefined("FPR", group, "negatives");
  return s.accepted_negative / negatives;
}

Rational fnr(const RandomizedClassifier& f, const JointDistribution& dist, std::string_view group) {
  const GroupSums s = group_sums(f, dist, group);
  const Rational& positives = dist.group_positive(group);
  if (positives == 0) undefined("FNR", group, "positives");
  return 1 - s.accepted_positive / positives;
}

FairnessReport check_fairness(const RandomizedClassifier& f, const JointDistribution& dist,
                              Notion notion) {
  FairnessReport report{notion, {}, false, 0};
  for (const auto& g : dist.groups()) {
    Rational rate;
    switch (notion) {
      case Notion::DP: rate = selection_rate(f, dist, g); break;
      case Notion::PE: rate = fpr(f, dist, g); break;
      case Notion::EO: rate = fnr(f, dist, g); break;
    }
    report.per_group_rate.emplace_back(g, rate);
  }
  const auto [lo, hi] = std::minmax_element(
      report.per_group_rate.begin(), report.per_group_rate.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  report.max_gap = hi->second - lo->second;
  report.fair = report.max_gap == 0;
  return report;
}

RandomizedClassifier from_mass_prefixes(const JointDistribution& dist,
                                        std::span<const MassPrefix> prefixes) {
  if (prefixes.size() != dist.groups().size()) {
    throw Error(ErrorKind::GroupMismatch, "expected one mass prefix per group (" +
                                              std::to_string(dist.groups().size()) + "), got " +
                                              std::to_string(prefixes.size()));
  }
  std::vector<const MassPrefix*> by_group(dist.groups().size(), nullptr);
  for (const auto& p : prefixes) {
    std::size_t g = 0;
    try {
      g = dist.group_index(p.group);
    } catch (const Error&) {
      throw Error(ErrorKind::GroupMismatch, "mass prefix for unknown group '" + p.group + "'");
    }
    if (by_group[g] != nullptr) {
      throw Error(ErrorKind::GroupMismatch, "two mass prefixes for group '" + p.group + "'");
    }
    by_group[g] = &p;
  }

  // Acceptance per (feature, group), then emit in distribution order.
  std::map<std::pair<std::string, std::string>, Rational> accept;
  for (std::size_t g = 0; g < dist.groups().size(); ++g) {
    const SortedGroupCells cells = build_sorted_cells(dist, dist.groups()[g]);
    const MassPrefix& prefix = *by_group[g];
    if (prefix.whole_cells > cells.cells.size() ||
        (prefix.split && prefix.split->index >= cells.cells.size())) {
      throw Error(ErrorKind::GroupMismatch,
                  "mass prefix does not match the cells of group '" + prefix.group + "'");
    }
    for (std::size_t i = 0; i < cells.cells.size(); ++i) {
      const Rational a = prefix.acceptance(i);
      for (const auto& member : cells.cells[i].members) accept[{member, cells.group}] = a;
    }
  }
  RandomizedClassifier f;
  for (const auto& cell : dist.cells()) f.set(cell.feature, cell.group, accept.at({cell.feature, cell.group}));
  return f;
}

RandomizedClassifier constant_classifier(const JointDistribution& dist, bool accept) {
  RandomizedClassifier f;
  for (const auto& cell : dist.cells()) f.set(cell.feature, cell.group, accept ? 1 : 0);
  return f;
}

}  // namespace randfair
