#include "randfair/representation.hpp"

#include <map>

#include "enumeration.hpp"
#include "randfair/error.hpp"
#include "randfair/solvers.hpp"

namespace randfair {
namespace {

// Per-group mass band [lo, hi] covered by one point.
struct Band {
  Rational lo, hi;
};

struct AuditBest {
  bool all_fair = true;
  bool has = false;
  std::uint64_t mask = 0;
};

template <class Int>
struct AuditTables {
  std::vector<std::vector<Int>> rate;  // [group][point], common scale
  std::vector<Int> loss;               // [point]
};

template <class Int>
struct ChunkResult {
  bool all_fair = true;
  bool has = false;
  Int loss{};
  std::uint64_t mask = 0;
};

template <class Int>
ChunkResult<Int> audit_chunk(const AuditTables<Int>& t, unsigned low_bits, std::uint64_t high) {
  const std::size_t groups = t.rate.size();
  const std::size_t n = t.loss.size();
  std::vector<Int> sums(groups, Int{0});
  Int loss{0};
  auto add = [&](std::size_t p, bool on) {
    for (std::size_t g = 0; g < groups; ++g) {
      if (on) sums[g] += t.rate[g][p];
      else sums[g] -= t.rate[g][p];
    }
    if (on) loss += t.loss[p];
    else loss -= t.loss[p];
  };
  for (std::size_t p = low_bits; p < n; ++p) {
    if ((high >> (p - low_bits)) & 1U) add(p, true);
  }
  ChunkResult<Int> r;
  const std::uint64_t high_part = high << low_bits;
  detail::gray_walk(
      low_bits, [&](unsigned bit, bool on) { add(bit, on); },
      [&](std::uint64_t low) {
        const std::uint64_t mask = high_part | low;
        for (std::size_t g = 1; g < groups; ++g) {
          if (sums[g] != sums[0]) {
            r.all_fair = false;
            break;
          }
        }
        if (!r.has || loss < r.loss || (loss == r.loss && mask < r.mask)) {
          r.has = true;
          r.loss = loss;
          r.mask = mask;
        }
      });
  return r;
}

template <class Int>
AuditBest run_audit(const std::vector<std::vector<Integer>>& rate, const std::vector<Integer>& loss) {
  AuditTables<Int> tables;
  for (const auto& row : rate) tables.rate.push_back(detail::convert<Int>(row));
  tables.loss = detail::convert<Int>(loss);

  const unsigned n = static_cast<unsigned>(loss.size());
  const unsigned high_bits = n >= 16 ? 4 : 0;
  const unsigned low_bits = n - high_bits;
  const std::size_t chunks = std::size_t{1} << high_bits;
  std::vector<ChunkResult<Int>> results(chunks);
  detail::parallel_tasks(chunks, high_bits > 0,
                         [&](std::size_t c) { results[c] = audit_chunk(tables, low_bits, c); });

  AuditBest best;
  ChunkResult<Int> acc;
  for (const auto& r : results) {
    best.all_fair = best.all_fair && r.all_fair;
    if (!acc.has || r.loss < acc.loss || (r.loss == acc.loss && r.mask < acc.mask)) acc = r;
  }
  best.has = acc.has;
  best.mask = acc.mask;
  return best;
}

}  // namespace

const RepMapEntry& Representation::entry(std::string_view feature, std::string_view group) const {
  for (const auto& e : map) {
    if (e.feature == feature && e.group == group) return e;
  }
  throw Error(ErrorKind::UnknownCell, "representation has no entry for (" + std::string(feature) +
                                          ", " + std::string(group) + ")");
}

Representation build_representation(const JointDistribution& dist, Notion notion,
                                    const Rational& alpha) {
  require_alpha(alpha);
  const auto cells = build_all_sorted_cells(dist);
  const auto breakpoints = notion_boundaries(dist, notion).points;
  std::vector<GroupThresholds> thresholds;
  thresholds.reserve(breakpoints.size());
  for (const auto& r : breakpoints) thresholds.push_back(rate_to_thresholds(dist, notion, r));

  Representation rep;
  rep.notion = notion;
  std::vector<std::vector<Band>> bands;  // [point][group]
  const std::size_t groups = cells.size();

  const auto& at_zero = thresholds.front();
  if (notion == Notion::PE) {
    bool any = false;
    std::vector<Band> block;
    for (std::size_t g = 0; g < groups; ++g) {
      block.push_back({0, at_zero[g].threshold});
      any = any || at_zero[g].threshold > 0;
    }
    if (any) {
      rep.points.push_back({rep.points.size(), 0, 0, true});
      bands.push_back(std::move(block));
    }
  } else if (notion == Notion::EO) {
    bool any = false;
    std::vector<Band> block;
    for (std::size_t g = 0; g < groups; ++g) {
      block.push_back({at_zero[g].threshold, 1});
      any = any || at_zero[g].threshold < 1;
    }
    if (any) {
      rep.points.push_back({rep.points.size(), 0, 0, true});
      bands.push_back(std::move(block));
    }
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    std::vector<Band> row;
    for (std::size_t g = 0; g < groups; ++g) {
      const Rational& a = thresholds[i - 1][g].threshold;
      const Rational& b = thresholds[i][g].threshold;
      row.push_back(a <= b ? Band{a, b} : Band{b, a});
    }
    rep.points.push_back({rep.points.size(), breakpoints[i - 1], breakpoints[i], false});
    bands.push_back(std::move(row));
  }

  std::map<std::pair<std::string, std::string>, std::vector<RepAssignment>> assignments;
  for (std::size_t g = 0; g < groups; ++g) {
    const auto& gc = cells[g];
    for (std::size_t p = 0; p < bands.size(); ++p) {
      const auto fractions = band_cell_fractions(gc, bands[p][g].lo, bands[p][g].hi);
      for (std::size_t i = 0; i < fractions.size(); ++i) {
        if (fractions[i] == 0) continue;
        for (const auto& member : gc.cells[i].members) {
          assignments[{member, gc.group}].push_back({p, fractions[i]});
        }
      }
    }
  }
  for (const auto& cell : dist.cells()) {
    rep.map.push_back({cell.feature, cell.group, assignments.at({cell.feature, cell.group})});
  }
  return rep;
}

RandomizedClassifier apply_representation(const Representation& rep,
                                          std::span<const std::uint8_t> g,
                                          const JointDistribution& dist) {
  if (g.size() != rep.points.size()) {
    throw Error(ErrorKind::IncompleteAssignment,
                "assignment covers " + std::to_string(g.size()) + " of " +
                    std::to_string(rep.points.size()) + " representation points");
  }
  for (auto v : g) {
    if (v > 1) throw Error(ErrorKind::IncompleteAssignment, "assignment values must be 0 or 1");
  }
  RandomizedClassifier f;
  for (const auto& cell : dist.cells()) {
    const RepMapEntry& e = rep.entry(cell.feature, cell.group);
    Rational accept = 0;
    for (const auto& a : e.assignments) {
      if (g[a.point] != 0) accept += a.probability;
    }
    f.set(cell.feature, cell.group, accept);
  }
  return f;
}

std::vector<std::vector<InducedMass>> induced_masses(const Representation& rep,
                                                     const JointDistribution& dist) {
  std::vector<std::vector<InducedMass>> out(
      rep.points.size(), std::vector<InducedMass>(dist.groups().size(), InducedMass{0, 0}));
  for (const auto& cell : dist.cells()) {
    const std::size_t g = dist.group_index(cell.group);
    for (const auto& a : rep.entry(cell.feature, cell.group).assignments) {
      out[a.point][g].positive += a.probability * cell.positive;
      out[a.point][g].negative += a.probability * cell.negative;
    }
  }
  return out;
}

RepresentationAudit audit_representation(const Representation& rep, const JointDistribution& dist,
                                         const Rational& alpha, std::size_t cap) {
  require_alpha(alpha);
  const std::size_t n = rep.points.size();
  if (n > cap || n > 62) {
    throw Error(ErrorKind::TooManyPoints, "representation has " + std::to_string(n) +
                                              " points, above the enumeration cap of " +
                                              std::to_string(cap));
  }
  const auto& groups = dist.groups();
  const auto induced = induced_masses(rep, dist);

  // Per-point contribution to each group's notion rate (TPR for EO, since
  // equal FNR is equal TPR) and to the loss above its all-reject baseline.
  std::vector<Rational> flat_rates;
  std::vector<Rational> point_loss;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    Rational denom;
    switch (rep.notion) {
      case Notion::DP: denom = dist.group_mass(groups[g]); break;
      case Notion::PE: denom = dist.group_negative(groups[g]); break;
      case Notion::EO: denom = dist.group_positive(groups[g]); break;
    }
    if (denom == 0) {
      throw Error(ErrorKind::UndefinedMetric, "notion rate is undefined for group '" + groups[g] + "'");
    }
    for (std::size_t p = 0; p < n; ++p) {
      const auto& m = induced[p][g];
      Rational part;
      switch (rep.notion) {
        case Notion::DP: part = m.positive + m.negative; break;
        case Notion::PE: part = m.negative; break;
        case Notion::EO: part = m.positive; break;
      }
      flat_rates.push_back(part / denom);
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    Rational w = 0;
    for (const auto& m : induced[p]) w += alpha * m.negative - (1 - alpha) * m.positive;
    point_loss.push_back(w);
  }

  const ScaledIntegers rates = scale_to_integers(flat_rates);
  const ScaledIntegers losses = scale_to_integers(point_loss);
  std::vector<std::vector<Integer>> rate_rows(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    rate_rows[g].assign(rates.values.begin() + static_cast<std::ptrdiff_t>(g * n),
                        rates.values.begin() + static_cast<std::ptrdiff_t>((g + 1) * n));
  }

  const AuditBest best = detail::fits_small(rates.values) && detail::fits_small(losses.values)
                             ? run_audit<std::int64_t>(rate_rows, losses.values)
                             : run_audit<Integer>(rate_rows, losses.values);

  std::vector<std::uint8_t> g(n, 0);
  for (std::size_t p = 0; p < n; ++p) g[p] = static_cast<std::uint8_t>((best.mask >> p) & 1U);

  RepresentationAudit audit;
  audit.notion = rep.notion;
  audit.n_points = n;
  audit.classifiers_checked = std::uint64_t{1} << n;
  audit.all_fair = best.all_fair;
  audit.best_assignment = best.mask;
  audit.best_loss = loss(apply_representation(rep, g, dist), dist, alpha);
  audit.solver_loss = solve(dist, rep.notion, alpha).loss;
  audit.cfr = audit.best_loss - audit.solver_loss;
  return audit;
}

}  // namespace randfair
