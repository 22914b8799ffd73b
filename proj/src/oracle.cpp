#include "randfair/oracle.hpp"

#include <cmath>

#include "enumeration.hpp"
#include "randfair/error.hpp"

namespace randfair {
namespace {

// The hyperplane sum_i coeff[i] * a[i] = 0 and the objective
// base + sum_i weight[i] * a[i], both over the distribution's cells.
struct Problem {
  std::vector<Rational> coeff;
  std::vector<Rational> weight;
  Rational base;
};

Problem make_problem(const JointDistribution& dist, Notion notion, const Rational& alpha,
                     std::size_t cap) {
  require_alpha(alpha);
  if (dist.groups().size() != 2) {
    throw Error(ErrorKind::UnsupportedGroupCount,
                "the vertex-enumeration oracle handles exactly 2 groups, got " +
                    std::to_string(dist.groups().size()));
  }
  const std::size_t n = dist.cells().size();
  if (n > cap || n > 62) {
    throw Error(ErrorKind::TooManyCells, std::to_string(n) + " cells exceed the oracle cap of " +
                                             std::to_string(cap));
  }
  auto measure = [&](const CellMass& c) -> Rational {
    switch (notion) {
      case Notion::DP: return c.total();
      case Notion::PE: return c.negative;
      case Notion::EO: return c.positive;
    }
    return 0;
  };
  std::vector<Rational> denom(2, Rational(0));
  for (const auto& c : dist.cells()) denom[dist.group_index(c.group)] += measure(c);
  for (std::size_t g = 0; g < 2; ++g) {
    if (denom[g] == 0) {
      throw Error(ErrorKind::UndefinedMetric, std::string(notion == Notion::PE ? "FPR" : "FNR") +
                                                  " is undefined for group '" + dist.groups()[g] + "'");
    }
  }
  Problem p;
  p.base = (1 - alpha) * prior_positive(dist);
  for (const auto& c : dist.cells()) {
    const std::size_t g = dist.group_index(c.group);
    Rational share = measure(c) / denom[g];
    p.coeff.push_back(g == 0 ? share : Rational(-share));
    p.weight.push_back(alpha * c.negative - (1 - alpha) * c.positive);
  }
  return p;
}

// A candidate point: binary mask, optionally with one free coordinate set to
// `fraction`. `value` is the scaled objective (without base).
struct Candidate {
  bool has = false;
  std::uint64_t mask = 0;
  int free = -1;
  Rational fraction;
  Rational value;
  double approx = 0;
  std::uint64_t count = 0;
};

std::vector<Rational> point_of(const Candidate& c, std::size_t n) {
  std::vector<Rational> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = (c.mask >> i) & 1U ? 1 : 0;
  if (c.free >= 0) v[static_cast<std::size_t>(c.free)] = c.fraction;
  return v;
}

bool better(const Candidate& a, const Candidate& b, std::size_t n) {
  if (!b.has) return a.has;
  if (!a.has) return false;
  if (a.value != b.value) return a.value < b.value;
  return point_of(a, n) < point_of(b, n);
}

void offer(Candidate& best, Candidate&& cand, std::size_t n) {
  // Skip the exact comparison when the float estimate is clearly worse.
  if (best.has && cand.approx > best.approx + 1e-9 * (1.0 + std::fabs(best.approx))) return;
  if (better(cand, best, n)) {
    const std::uint64_t count = best.count;
    best = std::move(cand);
    best.count = count;
  }
}

__extension__ typedef __int128 int128;
__extension__ typedef unsigned __int128 uint128;

template <class Int>
using Wide = std::conditional_t<std::is_same_v<Int, Integer>, Integer, int128>;

template <class Int>
Integer to_integer(const Int& v) {
  if constexpr (std::is_same_v<Int, Integer>) {
    return v;
  } else {
    // No direct mpz conversion for 128-bit values; go through two halves.
    const bool neg = v < 0;
    uint128 u = neg ? static_cast<uint128>(-(v + 1)) + 1 : static_cast<uint128>(v);
    Integer hi(static_cast<unsigned long>(u >> 64));
    Integer lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
    Integer r = hi * Integer("18446744073709551616") + lo;
    return neg ? Integer(-r) : r;
  }
}

template <class Int>
double to_double(const Int& v) {
  if constexpr (std::is_same_v<Int, Integer>) {
    return v.get_d();
  } else {
    return static_cast<double>(v);
  }
}

template <class Int>
struct Tables {
  std::vector<Int> coeff;
  std::vector<Int> weight;
  Integer weight_scale;
};

// Binary points on the hyperplane.
template <class Int>
Candidate scan_binary(const Tables<Int>& t) {
  const std::size_t n = t.coeff.size();
  Candidate best;
  Int s{0}, w{0};
  detail::gray_walk(
      static_cast<unsigned>(n),
      [&](unsigned bit, bool on) {
        if (on) { s += t.coeff[bit]; w += t.weight[bit]; }
        else { s -= t.coeff[bit]; w -= t.weight[bit]; }
      },
      [&](std::uint64_t mask) {
        if (s != 0) return;
        ++best.count;
        Candidate c;
        c.has = true;
        c.mask = mask;
        c.value = Rational(to_integer(w), t.weight_scale);
        c.value.canonicalize();
        c.approx = c.value.get_d();
        offer(best, std::move(c), n);
      });
  return best;
}

// Points with coordinate j strictly fractional and all others binary.
template <class Int>
Candidate scan_free(const Tables<Int>& t, std::size_t j) {
  const std::size_t n = t.coeff.size();
  Candidate best;
  const Int cj = t.coeff[j];
  if (cj == 0) return best;
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != j) others.push_back(i);
  }
  const double scale_d = t.weight_scale.get_d();
  Int s{0}, w{0};
  detail::gray_walk(
      static_cast<unsigned>(others.size()),
      [&](unsigned bit, bool on) {
        const std::size_t i = others[bit];
        if (on) { s += t.coeff[i]; w += t.weight[i]; }
        else { s -= t.coeff[i]; w -= t.weight[i]; }
      },
      [&](std::uint64_t sub) {
        // a_j = -s / cj must lie strictly inside (0, 1).
        const bool inside = cj > 0 ? (s < 0 && -s < cj) : (s > 0 && s < -cj);
        if (!inside) return;
        ++best.count;
        // value * cj = w * cj - weight_j * s
        const Wide<Int> num = Wide<Int>(w) * Wide<Int>(cj) - Wide<Int>(t.weight[j]) * Wide<Int>(s);
        Candidate c;
        c.has = true;
        c.approx = to_double(num) / to_double(cj) / scale_d;
        if (best.has && c.approx > best.approx + 1e-9 * (1.0 + std::fabs(best.approx))) return;
        std::uint64_t mask = 0;
        for (std::size_t b = 0; b < others.size(); ++b) {
          if ((sub >> b) & 1U) mask |= std::uint64_t{1} << others[b];
        }
        c.mask = mask;
        c.free = static_cast<int>(j);
        c.fraction = Rational(to_integer(Int(-s)), to_integer(cj));
        c.fraction.canonicalize();
        c.value = Rational(to_integer(num), Integer(to_integer(cj) * t.weight_scale));
        c.value.canonicalize();
        offer(best, std::move(c), n);
      });
  return best;
}

template <class Int>
Candidate enumerate(const ScaledIntegers& coeff, const ScaledIntegers& weight, bool vertices) {
  Tables<Int> t{detail::convert<Int>(coeff.values), detail::convert<Int>(weight.values), weight.scale};
  const std::size_t n = t.coeff.size();
  const std::size_t tasks = vertices ? n + 1 : 1;
  std::vector<Candidate> results(tasks);
  const bool parallel = vertices && n >= 16;
  detail::parallel_tasks(tasks, parallel, [&](std::size_t k) {
    results[k] = k == 0 ? scan_binary(t) : scan_free(t, k - 1);
  });
  Candidate best;
  std::uint64_t total = 0;
  for (auto& r : results) {
    total += r.count;
    if (better(r, best, n)) best = std::move(r);
  }
  best.count = total;
  return best;
}

OracleResult run(const JointDistribution& dist, Notion notion, const Rational& alpha,
                 std::size_t cap, bool vertices) {
  const Problem p = make_problem(dist, notion, alpha, cap);
  const ScaledIntegers coeff = scale_to_integers(p.coeff);
  const ScaledIntegers weight = scale_to_integers(p.weight);
  const Candidate best = detail::fits_small(coeff.values) && detail::fits_small(weight.values)
                             ? enumerate<std::int64_t>(coeff, weight, vertices)
                             : enumerate<Integer>(coeff, weight, vertices);

  OracleResult r{notion, alpha, 0, std::nullopt, best.count, best.has};
  if (!best.has) {
    if (vertices) {
      throw Error(ErrorKind::Infeasible, "no classifier satisfies the fairness constraint");
    }
    return r;
  }
  const auto point = point_of(best, dist.cells().size());
  RandomizedClassifier f;
  for (std::size_t i = 0; i < point.size(); ++i) {
    f.set(dist.cells()[i].feature, dist.cells()[i].group, point[i]);
  }
  r.optimal_loss = loss(f, dist, alpha);
  r.witness = std::move(f);
  return r;
}

}  // namespace

OracleResult vertex_enumerate_optimal(const JointDistribution& dist, Notion notion,
                                      const Rational& alpha, std::size_t cap) {
  return run(dist, notion, alpha, cap, true);
}

OracleResult best_deterministic_fair(const JointDistribution& dist, Notion notion,
                                     const Rational& alpha, std::size_t cap) {
  return run(dist, notion, alpha, cap, false);
}

}  // namespace randfair
