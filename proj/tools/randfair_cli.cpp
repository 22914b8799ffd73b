// randfair command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "randfair/randfair.h"

namespace {

struct RunConfig {
  std::string input;
  std::string notion;
  std::string alpha = "1/2";
  std::string output;
  std::string format = "json";
  std::string classifier;
  unsigned cap = 0;
};

// Escapes a message for the single-line JSON diagnostic.
std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

int fail(int code, const std::string& kind, const std::string& message) {
  std::cerr << "{\"error\":\"" << json_escape(kind) << "\",\"message\":\"" << json_escape(message)
            << "\"}" << std::endl;
  return code;
}

int fail_last(rf_status status) {
  std::cerr << rf_last_error_json() << std::endl;
  return static_cast<int>(status);
}

struct StringDeleter {
  void operator()(char* s) const { rf_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct DistributionDeleter {
  void operator()(rf_distribution* d) const { rf_distribution_free(d); }
};
struct SolutionDeleter {
  void operator()(rf_solution* s) const { rf_solution_free(s); }
};

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int emit(const RunConfig& cfg, const char* text) {
  if (cfg.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return 0;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) return fail(2, "IOError", "cannot write " + cfg.output);
  out << text;
  return 0;
}

class Runner {
 public:
  explicit Runner(const RunConfig& cfg) : cfg_(cfg) {}

  int run(const std::string& command) {
    if (int rc = load(); rc != 0) return rc;
    if (command == "verify") return verify();

    rf_notion notion{};
    if (auto st = rf_parse_notion(cfg_.notion.c_str(), &notion); st != RF_OK) return fail_last(st);
    if (command == "solve" || command == "curve") return solve(notion, command == "curve");
    if (command == "represent") return represent(notion);
    if (command == "oracle") return oracle(notion);
    return fail(2, "UsageError", "unknown command " + command);
  }

 private:
  int load() {
    if (auto st = rf_check_alpha(cfg_.alpha.c_str()); st != RF_OK) return fail_last(st);
    std::string text;
    if (!read_file(cfg_.input, text)) return fail(2, "IOError", "cannot read " + cfg_.input);
    const rf_format format = ends_with(cfg_.input, ".csv") ? RF_FORMAT_CSV : RF_FORMAT_JSON;
    rf_distribution* raw = nullptr;
    if (auto st = rf_distribution_parse(text.c_str(), format, &raw); st != RF_OK) return fail_last(st);
    dist_.reset(raw);
    return 0;
  }

  int solve(rf_notion notion, bool curve_only) {
    rf_solution* raw = nullptr;
    if (auto st = rf_solve(dist_.get(), notion, cfg_.alpha.c_str(), &raw); st != RF_OK) {
      return fail_last(st);
    }
    std::unique_ptr<rf_solution, SolutionDeleter> sol(raw);
    char* text = nullptr;
    const rf_status st = curve_only
                             ? rf_solution_curve(sol.get(), cfg_.format == "csv" ? RF_FORMAT_CSV : RF_FORMAT_JSON, &text)
                             : rf_solution_json(sol.get(), &text);
    if (st != RF_OK) return fail_last(st);
    OwnedString owned(text);
    return emit(cfg_, owned.get());
  }

  int represent(rf_notion notion) {
    char* text = nullptr;
    const unsigned cap = cfg_.cap == 0 ? 20 : cfg_.cap;
    if (auto st = rf_represent(dist_.get(), notion, cfg_.alpha.c_str(), cap, &text); st != RF_OK) {
      return fail_last(st);
    }
    OwnedString owned(text);
    return emit(cfg_, owned.get());
  }

  int oracle(rf_notion notion) {
    char* text = nullptr;
    int agree = 0;
    const unsigned cap = cfg_.cap == 0 ? 24 : cfg_.cap;
    if (auto st = rf_oracle(dist_.get(), notion, cfg_.alpha.c_str(), cap, &text, &agree); st != RF_OK) {
      return fail_last(st);
    }
    OwnedString owned(text);
    if (int rc = emit(cfg_, owned.get()); rc != 0) return rc;
    if (!agree) return fail(1, "OracleDisagreement", "solver and oracle optima differ");
    return 0;
  }

  int verify() {
    rf_notion notion = RF_NOTION_ALL;
    if (!cfg_.notion.empty()) {
      if (auto st = rf_parse_notion(cfg_.notion.c_str(), &notion); st != RF_OK) return fail_last(st);
    }
    std::string classifier;
    if (!read_file(cfg_.classifier, classifier)) return fail(2, "IOError", "cannot read " + cfg_.classifier);
    char* text = nullptr;
    if (auto st = rf_verify(dist_.get(), classifier.c_str(), notion, cfg_.alpha.c_str(), &text); st != RF_OK) {
      return fail_last(st);
    }
    OwnedString owned(text);
    return emit(cfg_, owned.get());
  }

  const RunConfig& cfg_;
  std::unique_ptr<rf_distribution, DistributionDeleter> dist_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal randomized group-fair classifiers and fair representations over finite distributions"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool notion_required) {
    sub->add_option("--input", cfg.input, "Distribution file (.json, or .csv with header x,z,y,p)")
        ->required();
    auto* notion = sub->add_option("--notion", cfg.notion, "Fairness notion: dp, pe or eo");
    if (notion_required) notion->required();
    sub->add_option("--alpha", cfg.alpha, "False-positive cost weight in (0,1)")->capture_default_str();
    sub->add_option("--output", cfg.output, "Write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  add_common(app.add_subcommand("solve", "Optimal randomized fair classifier"), true);
  add_common(app.add_subcommand("curve", "Loss curve over the candidate rates"), true);
  auto* represent = app.add_subcommand("represent", "Fair representation with exhaustive audit");
  add_common(represent, true);
  represent->add_option("--cap", cfg.cap, "Maximum representation points to audit (default 20)");
  auto* verify = app.add_subcommand("verify", "Loss and fairness of a classifier file");
  add_common(verify, false);
  verify->add_option("--classifier", cfg.classifier, "Classifier JSON (or a solve report)")->required();
  auto* oracle = app.add_subcommand("oracle", "Cross-check the solver against brute force");
  add_common(oracle, true);
  oracle->add_option("--cap", cfg.cap, "Maximum (feature, group) cells to enumerate (default 24)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "UsageError", e.what());
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return Runner(cfg).run(command);
}
