#pragma once

// Shared fixtures and generators for the test suites.

#include <random>
#include <string>
#include <vector>

#include "randfair/distribution.hpp"
#include "randfair/rational.hpp"

namespace randfair::testing {

inline Rational q(const char* text) { return parse_rational(text); }

// Canonical num/den; GMP arithmetic needs lowest terms.
inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// The two-feature, two-group example distribution used throughout.
inline JointDistribution ex1() {
  const std::vector<Record> rows = {
      {"x1", "A", 1, q("3/8")}, {"x1", "A", 0, q("1/8")}, {"x1", "D", 1, q("1/8")},
      {"x1", "D", 0, q("1/8")}, {"x2", "D", 0, q("1/4")},
  };
  return JointDistribution::from_records(rows);
}

// Classifier accepting (x1,A) w.p. 1/2 and (x1,D) always.
inline RandomizedClassifier ex1_randomized() {
  RandomizedClassifier f;
  f.set("x1", "A", q("1/2"));
  f.set("x1", "D", 1);
  f.set("x2", "D", 0);
  return f;
}

// Builds a distribution from unnormalized integer weights
// {feature, group, positive weight, negative weight}.
struct Weights {
  std::string feature, group;
  long positive, negative;
};

inline JointDistribution from_weights(const std::vector<Weights>& weights,
                                      const std::vector<std::string>& groups = {}) {
  long total = 0;
  for (const auto& w : weights) total += w.positive + w.negative;
  std::vector<Record> rows;
  for (const auto& w : weights) {
    rows.push_back({w.feature, w.group, 1, Rational(w.positive, total)});
    rows.push_back({w.feature, w.group, 0, Rational(w.negative, total)});
  }
  for (auto& r : rows) r.mass.canonicalize();
  return JointDistribution::from_records(rows, groups);
}

struct RandomSpec {
  std::size_t groups = 2;
  std::size_t min_features = 2;
  std::size_t max_features = 6;
  long max_weight = 12;
  // Every group gets both labels, so FPR and FNR are defined everywhere.
  bool both_labels = true;
};

// Random rational distribution. Small integer weights make score ties (and so
// merged cells), score-0 and score-1 cells reasonably common.
inline JointDistribution random_distribution(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  std::uniform_int_distribution<std::size_t> nfeat(spec.min_features, spec.max_features);
  std::uniform_int_distribution<long> weight(0, spec.max_weight);
  std::bernoulli_distribution zero(0.2);
  while (true) {
    std::vector<Weights> ws;
    std::vector<std::string> groups;
    for (std::size_t g = 0; g < spec.groups; ++g) {
      const std::string group = std::string(1, static_cast<char>('A' + g));
      groups.push_back(group);
      const std::size_t n = nfeat(rng);
      for (std::size_t i = 0; i < n; ++i) {
        long pos = zero(rng) ? 0 : weight(rng);
        long neg = zero(rng) ? 0 : weight(rng);
        if (pos + neg == 0) pos = 1;
        ws.push_back({"x" + std::to_string(i), group, pos, neg});
      }
    }
    bool ok = true;
    for (const auto& g : groups) {
      long pos = 0, neg = 0;
      for (const auto& w : ws) {
        if (w.group == g) {
          pos += w.positive;
          neg += w.negative;
        }
      }
      if (spec.both_labels && (pos == 0 || neg == 0)) ok = false;
    }
    if (ok) return from_weights(ws, groups);
  }
}

// Random rational in [0,1] with a denominator up to `max_den`.
inline Rational random_unit_rational(std::mt19937_64& rng, long max_den = 97) {
  std::uniform_int_distribution<long> den_dist(1, max_den);
  const long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(0, den);
  Rational r(num_dist(rng), den);
  r.canonicalize();
  return r;
}

}  // namespace randfair::testing
