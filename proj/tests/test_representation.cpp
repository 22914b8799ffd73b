#include <random>

#include "doctest.h"
#include "randfair/classifier.hpp"
#include "randfair/error.hpp"
#include "randfair/representation.hpp"
#include "randfair/solvers.hpp"
#include "support.hpp"

using namespace randfair;
using randfair::testing::ex1;
using randfair::testing::q;

namespace {

constexpr Notion kNotions[] = {Notion::DP, Notion::PE, Notion::EO};

std::vector<std::uint8_t> bits(std::uint64_t mask, std::size_t n) {
  std::vector<std::uint8_t> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = (mask >> i) & 1U;
  return g;
}

Rational prob(const RepMapEntry& e, std::size_t point) {
  for (const auto& a : e.assignments) {
    if (a.point == point) return a.probability;
  }
  return 0;
}

}  // namespace

TEST_CASE("DP representation of the example") {
  const auto d = ex1();
  const auto rep = build_representation(d, Notion::DP, q("1/2"));
  REQUIRE(rep.points.size() == 2);
  CHECK(rep.points[0].lower == 0);
  CHECK(rep.points[0].upper == q("1/2"));
  CHECK(rep.points[1].lower == q("1/2"));
  CHECK(rep.points[1].upper == 1);
  CHECK_FALSE(rep.points[0].boundary_block);
  CHECK(prob(rep.entry("x1", "A"), 0) == q("1/2"));
  CHECK(prob(rep.entry("x1", "A"), 1) == q("1/2"));
  CHECK(prob(rep.entry("x1", "D"), 0) == 1);
  CHECK(prob(rep.entry("x2", "D"), 1) == 1);

  const std::vector<std::uint8_t> first = {1, 0};
  const auto f = apply_representation(rep, first, d);
  CHECK(f == testing::ex1_randomized());
  CHECK(error_probability(f, d) == q("3/8"));
  CHECK(apply_representation(rep, bits(0, 2), d) == constant_classifier(d, false));
  CHECK(apply_representation(rep, bits(3, 2), d) == constant_classifier(d, true));

  const auto audit = audit_representation(rep, d, q("1/2"));
  CHECK(audit.n_points == 2);
  CHECK(audit.classifiers_checked == 4);
  CHECK(audit.all_fair);
  CHECK(audit.best_loss * 2 == q("3/8"));
  CHECK(audit.best_assignment == 1);
  CHECK(audit.cfr == 0);
}

TEST_CASE("PE representation of the example has no score-1 block") {
  const auto d = ex1();
  const auto rep = build_representation(d, Notion::PE, q("1/2"));
  REQUIRE(rep.points.size() == 2);
  CHECK(rep.points[0].upper == q("1/3"));
  CHECK(rep.points[1].lower == q("1/3"));
  for (const auto& p : rep.points) CHECK_FALSE(p.boundary_block);
  const auto audit = audit_representation(rep, d, q("1/2"));
  CHECK(audit.classifiers_checked == 4);
  CHECK(audit.all_fair);
  CHECK(audit.best_loss * 2 == q("5/12"));
  CHECK(audit.cfr == 0);
}

TEST_CASE("EO representation of the example has a score-0 block") {
  const auto d = ex1();
  const auto rep = build_representation(d, Notion::EO, q("1/2"));
  REQUIRE(rep.points.size() == 2);
  CHECK(rep.points[0].boundary_block);
  CHECK(rep.points[0].lower == 0);
  CHECK(rep.points[0].upper == 0);
  CHECK(prob(rep.entry("x2", "D"), 0) == 1);
  const auto audit = audit_representation(rep, d, q("1/2"));
  CHECK(audit.all_fair);
  CHECK(audit.best_loss * 2 == q("1/4"));
  CHECK(audit.cfr == 0);
}

TEST_CASE("single-point representation") {
  const auto d = testing::from_weights({{"a", "A", 1, 2}, {"a", "D", 2, 4}});
  const auto rep = build_representation(d, Notion::DP, q("1/2"));
  REQUIRE(rep.points.size() == 1);
  for (const auto& e : rep.map) {
    REQUIRE(e.assignments.size() == 1);
    CHECK(e.assignments[0].point == 0);
    CHECK(e.assignments[0].probability == 1);
  }
  const auto audit = audit_representation(rep, d, q("1/2"));
  CHECK(audit.classifiers_checked == 2);
  CHECK(audit.all_fair);
}

TEST_CASE("representation errors") {
  const auto d = ex1();
  const auto rep = build_representation(d, Notion::DP, q("1/2"));
  const std::vector<std::uint8_t> short_g = {1};
  CHECK_THROWS_AS(apply_representation(rep, short_g, d), Error);
  try {
    apply_representation(rep, short_g, d);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompleteAssignment);
  }
  try {
    audit_representation(rep, d, q("1/2"), 1);
    FAIL("cap ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooManyPoints);
  }
  const auto no_neg = testing::from_weights({{"a", "A", 1, 0}, {"b", "D", 2, 2}});
  try {
    build_representation(no_neg, Notion::PE, q("1/2"));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedMetric);
  }
}

// Property tests over random distributions.

TEST_CASE("maps are stochastic and bands carry equal rate in every group") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t groups = trial % 3 == 0 ? 3 : 2;
    const auto d = testing::random_distribution(rng, {groups, 1, 6, 9, true});
    for (Notion n : kNotions) {
      const auto rep = build_representation(d, n, q("1/2"));
      for (const auto& e : rep.map) {
        Rational total = 0;
        for (const auto& a : e.assignments) {
          CHECK(a.probability > 0);
          total += a.probability;
        }
        CHECK(total == 1);
      }
      const auto induced = induced_masses(rep, d);
      Rational all = 0;
      for (std::size_t g = 0; g < groups; ++g) {
        const auto& name = d.groups()[g];
        Rational group_total = 0;
        for (std::size_t p = 0; p < rep.points.size(); ++p) {
          const auto& m = induced[p][g];
          group_total += m.positive + m.negative;
          const Rational width = rep.points[p].upper - rep.points[p].lower;
          switch (n) {
            case Notion::DP: CHECK((m.positive + m.negative) / d.group_mass(name) == width); break;
            case Notion::PE: CHECK(m.negative / d.group_negative(name) == width); break;
            case Notion::EO: CHECK(m.positive / d.group_positive(name) == width); break;
          }
        }
        CHECK(group_total == d.group_mass(name));
        all += group_total;
      }
      CHECK(all == 1);
    }
  }
}

TEST_CASE("audits agree with direct composition and certify zero cost") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t groups = trial % 4 == 0 ? 3 : 2;
    const auto d = testing::random_distribution(rng, {groups, 1, 4, 9, true});
    const Rational alpha = trial % 2 ? q("1/2") : q("3/5");
    for (Notion n : kNotions) {
      const auto rep = build_representation(d, n, alpha);
      if (rep.points.size() > 10) continue;
      const auto audit = audit_representation(rep, d, alpha);
      CHECK(audit.all_fair);
      CHECK(audit.cfr == 0);
      CHECK(audit.classifiers_checked == (std::uint64_t{1} << rep.points.size()));
      Rational best = -1;
      std::uint64_t best_mask = 0;
      for (std::uint64_t mask = 0; mask < audit.classifiers_checked; ++mask) {
        const auto f = apply_representation(rep, bits(mask, rep.points.size()), d);
        CHECK(check_fairness(f, d, n).fair);
        const Rational l = loss(f, d, alpha);
        if (best < 0 || l < best) {
          best = l;
          best_mask = mask;
        }
      }
      CHECK(best == audit.best_loss);
      CHECK(best_mask == audit.best_assignment);
    }
  }
}

TEST_CASE("the optimal threshold classifier is expressible over the representation") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = testing::random_distribution(rng, {2 + static_cast<std::size_t>(trial % 2), 1, 6, 9, true});
    for (Notion n : kNotions) {
      const auto sol = solve(d, n, q("1/2"));
      const auto rep = build_representation(d, n, q("1/2"));
      std::vector<std::uint8_t> g(rep.points.size());
      for (std::size_t p = 0; p < g.size(); ++p) {
        const auto& pt = rep.points[p];
        if (n == Notion::EO) g[p] = !pt.boundary_block && pt.lower >= sol.rate;
        else g[p] = pt.boundary_block || pt.upper <= sol.rate;
      }
      CHECK(apply_representation(rep, g, d) == sol.classifier);
    }
  }
}

TEST_CASE("large audits take the parallel path and still certify zero cost") {
  // Distinct cell masses per group give interleaved boundaries.
  std::vector<testing::Weights> ws;
  for (long i = 0; i < 9; ++i) {
    ws.push_back({"x" + std::to_string(i), "A", (9 - i) * (i + 1), (i + 1) * (i + 1)});
    ws.push_back({"x" + std::to_string(i), "B", (2 * (9 - i) + 1) * (i + 2), (2 * i + 3) * (i + 2)});
  }
  const auto d = testing::from_weights(ws);
  const auto rep = build_representation(d, Notion::DP, q("1/2"));
  REQUIRE(rep.points.size() >= 16);
  const auto audit = audit_representation(rep, d, q("1/2"));
  CHECK(audit.all_fair);
  CHECK(audit.cfr == 0);
  CHECK(audit.classifiers_checked == (std::uint64_t{1} << rep.points.size()));
}
