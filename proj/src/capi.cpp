#include "randfair/randfair.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "randfair/error.hpp"
#include "randfair/serialize.hpp"

struct rf_distribution {
  randfair::JointDistribution dist;
};

struct rf_solution {
  randfair::Solution solution;
};

namespace {

using namespace randfair;

struct LastError {
  std::string kind;
  std::string message;
  std::string json;
};

thread_local LastError last_error;

rf_status record(std::string_view kind, const std::string& message, rf_status status) {
  last_error.kind = std::string(kind);
  last_error.message = message;
  last_error.json = Json{{"error", last_error.kind}, {"message", message}}.dump();
  return status;
}

rf_status status_of(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Validation: return RF_ERROR_VALIDATION;
    case ErrorCategory::Undefined: return RF_ERROR_UNDEFINED;
    case ErrorCategory::ResourceCap: return RF_ERROR_RESOURCE;
  }
  return RF_ERROR_INTERNAL;
}

template <class Fn>
rf_status guarded(Fn&& fn) {
  try {
    fn();
    last_error = {};
    return RF_OK;
  } catch (const Error& e) {
    return record(kind_name(e.kind()), e.what(), status_of(e));
  } catch (const std::bad_alloc&) {
    return record("OutOfMemory", "allocation failed", RF_ERROR_INTERNAL);
  } catch (const std::exception& e) {
    return record("InternalError", e.what(), RF_ERROR_INTERNAL);
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must not be null");
}

Notion to_notion(rf_notion n) {
  switch (n) {
    case RF_NOTION_DP: return Notion::DP;
    case RF_NOTION_PE: return Notion::PE;
    case RF_NOTION_EO: return Notion::EO;
    case RF_NOTION_ALL: break;
  }
  throw Error(ErrorKind::InvalidArgument, "a single fairness notion is required");
}

Rational to_alpha(const char* alpha) {
  const Rational a = alpha == nullptr ? Rational(1, 2) : parse_rational(alpha);
  require_alpha(a);
  return a;
}

const Rational kHalf(1, 2);

}  // namespace

extern "C" {

const char* rf_version(void) { return "0.1.0"; }
const char* rf_last_error_kind(void) { return last_error.kind.c_str(); }
const char* rf_last_error_message(void) { return last_error.message.c_str(); }
const char* rf_last_error_json(void) { return last_error.json.c_str(); }

rf_status rf_parse_notion(const char* text, rf_notion* out) {
  return guarded([&] {
    require(text, "notion");
    require(out, "out");
    *out = static_cast<rf_notion>(static_cast<int>(parse_notion(text)));
  });
}

rf_status rf_check_alpha(const char* alpha) {
  return guarded([&] {
    require(alpha, "alpha");
    to_alpha(alpha);
  });
}

rf_status rf_distribution_parse(const char* text, rf_format format, rf_distribution** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    auto* handle = new rf_distribution{format == RF_FORMAT_CSV ? parse_distribution_csv(text)
                                                               : parse_distribution_json(text)};
    *out = handle;
  });
}

rf_status rf_distribution_flip_labels(const rf_distribution* dist, rf_distribution** out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    *out = new rf_distribution{dist->dist.flip_labels()};
  });
}

void rf_distribution_free(rf_distribution* dist) { delete dist; }

size_t rf_distribution_group_count(const rf_distribution* dist) {
  return dist == nullptr ? 0 : dist->dist.groups().size();
}

size_t rf_distribution_cell_count(const rf_distribution* dist) {
  return dist == nullptr ? 0 : dist->dist.cells().size();
}

rf_status rf_solve(const rf_distribution* dist, rf_notion notion, const char* alpha,
                   rf_solution** out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    *out = nullptr;
    *out = new rf_solution{solve(dist->dist, to_notion(notion), to_alpha(alpha))};
  });
}

void rf_solution_free(rf_solution* solution) { delete solution; }

rf_status rf_solution_json(const rf_solution* solution, char** out) {
  return guarded([&] {
    require(solution, "solution");
    require(out, "out");
    *out = dup_string(solution_json(solution->solution).dump(2) + "\n");
  });
}

rf_status rf_solution_curve(const rf_solution* solution, rf_format format, char** out) {
  return guarded([&] {
    require(solution, "solution");
    require(out, "out");
    const auto& s = solution->solution;
    *out = dup_string(format == RF_FORMAT_CSV ? curve_csv(s.curve, s.alpha)
                                              : curve_json(s.curve, s.alpha).dump(2) + "\n");
  });
}

rf_status rf_solution_rate(const rf_solution* solution, char** out) {
  return guarded([&] {
    require(solution, "solution");
    require(out, "out");
    *out = dup_string(format_rational(solution->solution.rate));
  });
}

rf_status rf_solution_loss(const rf_solution* solution, char** out) {
  return guarded([&] {
    require(solution, "solution");
    require(out, "out");
    *out = dup_string(format_rational(solution->solution.loss));
  });
}

rf_status rf_represent(const rf_distribution* dist, rf_notion notion, const char* alpha,
                       unsigned cap, char** out) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    const Notion n = to_notion(notion);
    const Rational a = to_alpha(alpha);
    const Representation rep = build_representation(dist->dist, n, a);
    const RepresentationAudit audit = audit_representation(rep, dist->dist, a, cap);
    Json j{{"representation", representation_json(rep)}, {"audit", audit_json(audit, a)}};
    *out = dup_string(j.dump(2) + "\n");
  });
}

rf_status rf_verify(const rf_distribution* dist, const char* classifier_json, rf_notion notion,
                    const char* alpha, char** out) {
  return guarded([&] {
    require(dist, "dist");
    require(classifier_json, "classifier_json");
    require(out, "out");
    const Rational a = to_alpha(alpha);
    const RandomizedClassifier f = parse_classifier_json(classifier_json);
    Json j;
    j["alpha"] = format_rational(a);
    j["loss"] = format_rational(loss(f, dist->dist, a));
    if (a == kHalf) j["loss01"] = format_rational(error_probability(f, dist->dist));
    Json reports = Json::object();
    if (notion == RF_NOTION_ALL) {
      for (Notion n : {Notion::DP, Notion::PE, Notion::EO}) {
        try {
          reports[std::string(notion_name(n))] = fairness_json(check_fairness(f, dist->dist, n));
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::UndefinedMetric) throw;
          reports[std::string(notion_name(n))] = nullptr;
        }
      }
    } else {
      const Notion n = to_notion(notion);
      reports[std::string(notion_name(n))] = fairness_json(check_fairness(f, dist->dist, n));
    }
    j["fairness"] = std::move(reports);
    *out = dup_string(j.dump(2) + "\n");
  });
}

rf_status rf_oracle(const rf_distribution* dist, rf_notion notion, const char* alpha, unsigned cap,
                    char** out, int* agree) {
  return guarded([&] {
    require(dist, "dist");
    require(out, "out");
    const Notion n = to_notion(notion);
    const Rational a = to_alpha(alpha);
    const Solution sol = solve(dist->dist, n, a);
    const OracleResult randomized = vertex_enumerate_optimal(dist->dist, n, a, cap);
    const OracleResult deterministic = best_deterministic_fair(dist->dist, n, a, cap);
    const bool same = randomized.optimal_loss == sol.loss &&
                      check_fairness(sol.classifier, dist->dist, n).fair;

    Json solver{{"rate", format_rational(sol.rate)}, {"loss", format_rational(sol.loss)}};
    if (a == kHalf) solver["loss01"] = format_rational(sol.error_probability);
    Json j;
    j["notion"] = std::string(notion_name(n));
    j["alpha"] = format_rational(a);
    j["solver"] = std::move(solver);
    j["randomized"] = oracle_json(randomized);
    j["deterministic"] = oracle_json(deterministic);
    j["agree"] = same;
    if (deterministic.feasible) {
      const Rational gap = deterministic.optimal_loss - randomized.optimal_loss;
      j["randomization_gap"] = format_rational(gap);
      j["strict_gap"] = gap > 0;
    } else {
      j["randomization_gap"] = nullptr;
      j["strict_gap"] = true;
    }
    *out = dup_string(j.dump(2) + "\n");
    if (agree != nullptr) *agree = same ? 1 : 0;
  });
}

void rf_string_free(char* s) { std::free(s); }

}  // extern "C"
