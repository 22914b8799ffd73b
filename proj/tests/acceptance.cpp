// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "randfair/classifier.hpp"
#include "randfair/oracle.hpp"
#include "randfair/representation.hpp"
#include "randfair/serialize.hpp"
#include "randfair/solvers.hpp"
#include "support.hpp"

using namespace randfair;
using randfair::testing::q;

namespace {

constexpr Notion kNotions[] = {Notion::DP, Notion::PE, Notion::EO};
constexpr std::uint64_t kSeed = 20240601;
constexpr int kInstances = 200;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << ", " << checks_ << " checks";
    if (failures_ > 0) s << ", " << failures_ << " failed; first: " << first_;
    return {failures_ == 0, s.str()};
  }

 private:
  std::uint64_t checks_ = 0, failures_ = 0;
  std::string first_;
};

// 2 groups, 2 to 6 features per group, random integer weights normalized to 1.
std::vector<JointDistribution> make_instances(std::mt19937_64& rng, int count) {
  std::vector<JointDistribution> out;
  for (int i = 0; i < count; ++i) out.push_back(testing::random_distribution(rng, {2, 2, 6, 12, true}));
  return out;
}

std::string label(const std::string& what, std::size_t instance, Notion n, const Rational& alpha) {
  return what + " (instance " + std::to_string(instance) + ", " + std::string(notion_name(n)) + ", alpha " +
         format_rational(alpha) + ")";
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(RANDFAIR_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string distribution_json(const JointDistribution& d) {
  Json records = Json::array();
  for (const auto& c : d.cells()) {
    records.push_back(Json{{"x", c.feature}, {"z", c.group}, {"y", 1}, {"p", format_rational(c.positive)}});
    records.push_back(Json{{"x", c.feature}, {"z", c.group}, {"y", 0}, {"p", format_rational(c.negative)}});
  }
  return Json{{"groups", d.groups()}, {"records", records}}.dump();
}

const std::vector<Rational>& alphas() {
  static const std::vector<Rational> a = {q("1/4"), q("1/2"), q("3/4")};
  return a;
}

// Example distribution: randomized DP optimum 3/8 against 1/2 for every
// deterministic DP-fair classifier.
Outcome criterion_example() {
  Check c;
  const auto d = testing::ex1();
  const auto sol = solve_dp(d, q("1/2"));
  c.require(sol.error_probability == q("3/8"), "solve_dp 0-1 loss is not 3/8");
  c.require(sol.rate == q("1/2"), "solve_dp selection rate is not 1/2");
  const auto det = best_deterministic_fair(d, Notion::DP, q("1/2"));
  c.require(det.feasible && 2 * det.optimal_loss == q("1/2"), "deterministic DP optimum is not 1/2");
  return c.outcome("0-1 loss " + format_rational(sol.error_probability) + " at rate " +
                   format_rational(sol.rate) + " vs deterministic " + format_rational(2 * det.optimal_loss));
}

Outcome criterion_oracle(const std::vector<JointDistribution>& instances) {
  Check c;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (Notion n : kNotions) {
      for (const auto& a : alphas()) {
        const auto sol = solve(instances[i], n, a);
        const auto oracle = vertex_enumerate_optimal(instances[i], n, a);
        c.require(oracle.feasible && sol.loss == oracle.optimal_loss, label("solver != oracle", i, n, a));
      }
    }
  }
  return c.outcome(std::to_string(instances.size()) + " instances x 3 notions x 3 alphas");
}

Outcome criterion_convexity(const std::vector<JointDistribution>& instances) {
  Check c;
  std::size_t curves = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& d = instances[i];
    for (Notion n : kNotions) {
      for (const auto& a : alphas()) {
        const auto curve = loss_curve(d, n, a);
        ++curves;
        c.require(curve.is_convex(), label("slopes decrease", i, n, a));
        for (std::size_t b = 0; b < curve.breakpoints.size(); ++b) {
          c.require(loss(threshold_classifier(d, n, curve.breakpoints[b]), d, a) == curve.values[b],
                    label("breakpoint value differs from direct evaluation", i, n, a));
        }
        for (int k = 0; k <= 100; ++k) {
          const Rational r = testing::frac(k, 100);
          const Rational grid = loss(threshold_classifier(d, n, r), d, a);
          c.require(grid >= curve.value_at(r), label("grid value below interpolated curve", i, n, a));
        }
      }
    }
  }
  return c.outcome(std::to_string(curves) + " curves, 101-point grid each");
}

Outcome criterion_fair_by_construction(const std::vector<JointDistribution>& instances, std::mt19937_64& rng) {
  Check c;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& d = instances[i];
    for (Notion n : kNotions) {
      for (int k = 0; k < 20; ++k) {
        const Rational r = testing::random_unit_rational(rng, 1000);
        const auto rep = check_fairness(threshold_classifier(d, n, r), d, n);
        c.require(rep.fair && rep.max_gap == 0,
                  label("threshold classifier at r = " + format_rational(r) + " unfair", i, n, q("1/2")));
      }
    }
  }
  return c.outcome(std::to_string(instances.size()) + " instances x 20 rates x 3 notions");
}

Outcome criterion_zero_cfr(const std::vector<JointDistribution>& instances) {
  Check c;
  std::size_t audited = 0, skipped = 0;
  std::uint64_t classifiers = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (Notion n : kNotions) {
      for (const auto& a : alphas()) {
        const auto rep = build_representation(instances[i], n, a);
        if (rep.points.size() > 12) {
          ++skipped;
          continue;
        }
        const auto audit = audit_representation(rep, instances[i], a);
        ++audited;
        classifiers += audit.classifiers_checked;
        c.require(audit.classifiers_checked == (std::uint64_t{1} << rep.points.size()),
                  label("not every labeling enumerated", i, n, a));
        c.require(audit.all_fair, label("unfair labeling", i, n, a));
        c.require(audit.cfr == 0, label("nonzero cost of fair representation", i, n, a));
      }
    }
  }
  c.require(audited > 0, "no representation within 12 points");
  return c.outcome(std::to_string(audited) + " audits, " + std::to_string(classifiers) + " labelings, " +
                   std::to_string(skipped) + " above 12 points");
}

Outcome criterion_randomization_gap(const std::vector<JointDistribution>& instances) {
  Check c;
  std::ostringstream found;
  const auto scratch = std::filesystem::temp_directory_path() /
                       ("randfair_acceptance_" + std::to_string(::getpid()) + ".json");

  auto cli_reports_gap = [&](const JointDistribution& d, Notion n, const std::string& what) {
    {
      std::ofstream out(scratch);
      out << distribution_json(d);
    }
    const auto r = run_cli(std::string("oracle --notion ") + std::string(notion_name(n)) + " --alpha 1/2 --input " +
                           scratch.string());
    bool ok = r.code == 0;
    if (ok) {
      try {
        const auto j = nlohmann::json::parse(r.out);
        ok = j.at("agree") == true && j.at("strict_gap") == true;
      } catch (const std::exception&) {
        ok = false;
      }
    }
    c.require(ok, "CLI oracle does not report a strict gap for " + what);
  };

  const auto ex1 = testing::ex1();
  const auto v = vertex_enumerate_optimal(ex1, Notion::DP, q("1/2"));
  const auto det = best_deterministic_fair(ex1, Notion::DP, q("1/2"));
  c.require(v.optimal_loss < det.optimal_loss, "no strict gap on the example");
  cli_reports_gap(ex1, Notion::DP, "the example");

  for (Notion n : kNotions) {
    bool seen = false;
    for (std::size_t i = 0; i < instances.size() && !seen; ++i) {
      const auto rand = vertex_enumerate_optimal(instances[i], n, q("1/2"));
      const auto detf = best_deterministic_fair(instances[i], n, q("1/2"));
      if (rand.optimal_loss < detf.optimal_loss) {
        seen = true;
        found << " " << notion_name(n) << "@" << i;
        cli_reports_gap(instances[i], n, "instance " + std::to_string(i));
      }
    }
    c.require(seen, "no instance with a strict gap for " + std::string(notion_name(n)));
  }
  std::filesystem::remove(scratch);
  return c.outcome("example dp, generated" + found.str());
}

Outcome criterion_duality(std::mt19937_64& rng) {
  Check c;
  const auto instances = make_instances(rng, 50);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    Rational alpha = testing::random_unit_rational(rng, 50);
    if (alpha == 0 || alpha == 1) alpha = q("1/3");
    const auto pe = solve_pe(instances[i], alpha);
    const auto eo = solve_eo(instances[i].flip_labels(), 1 - alpha);
    c.require(pe.loss == eo.loss, label("PE and flipped EO losses differ", i, Notion::PE, alpha));
  }
  return c.outcome("50 instances, random alpha");
}

}  // namespace

int main() {
  std::mt19937_64 rng(kSeed);
  const auto instances = make_instances(rng, kInstances);

  struct Criterion {
    const char* name;
    double limit_seconds;  // 0 = no time limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 example reproduction", 1, [] { return criterion_example(); }},
      {"2 oracle equivalence", 120, [&] { return criterion_oracle(instances); }},
      {"3 convexity and dense grid", 0, [&] { return criterion_convexity(instances); }},
      {"4 fairness by construction", 0, [&] { return criterion_fair_by_construction(instances, rng); }},
      {"5 zero cost of fair representation", 300, [&] { return criterion_zero_cfr(instances); }},
      {"6 randomization advantage", 0, [&] { return criterion_randomization_gap(instances); }},
      {"7 label-flip duality", 0, [&] { return criterion_duality(rng); }},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    std::string timing;
    {
      std::ostringstream s;
      s.setf(std::ios::fixed);
      s.precision(3);
      s << secs << "s";
      if (cr.limit_seconds > 0) s << " (limit " << std::defaultfloat << cr.limit_seconds << "s)";
      timing = s.str();
    }
    if (cr.limit_seconds > 0 && secs >= cr.limit_seconds) {
      pass = false;
      o.detail += "; time limit exceeded";
    }
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << cr.name << ": " << o.detail << " [" << timing
              << "]" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
