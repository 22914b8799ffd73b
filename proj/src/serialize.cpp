#include "randfair/serialize.hpp"

#include <sstream>

#include "randfair/error.hpp"

namespace randfair {
namespace {

const Rational kHalf(1, 2);

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

std::string token(const Json& j, const char* key) {
  if (!j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  parse_fail(std::string("field '") + key + "' must be a string");
}

Rational rational_field(const Json& j, const char* key) {
  if (!j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  parse_fail(std::string("field '") + key + "' must be a fraction or decimal string");
}

int label_of(std::string_view text) {
  if (text == "0") return 0;
  if (text == "1") return 1;
  parse_fail("label must be 0 or 1, got '" + std::string(text) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                              : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

JointDistribution parse_distribution_json(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("records") || !doc.at("records").is_array()) {
    parse_fail("distribution JSON needs a \"records\" array");
  }
  std::vector<std::string> groups;
  if (doc.contains("groups")) {
    if (!doc.at("groups").is_array()) parse_fail("\"groups\" must be an array");
    for (const auto& g : doc.at("groups")) {
      if (!g.is_string()) parse_fail("group ids must be strings");
      groups.push_back(g.get<std::string>());
    }
  }
  std::vector<Record> rows;
  for (const auto& r : doc.at("records")) {
    if (!r.is_object()) parse_fail("each record must be an object");
    Record row;
    row.feature = token(r, "x");
    row.group = token(r, "z");
    if (!r.contains("y")) parse_fail("missing field 'y'");
    const Json& y = r.at("y");
    if (y.is_number_integer()) {
      const auto v = y.get<long long>();
      if (v != 0 && v != 1) parse_fail("label must be 0 or 1");
      row.label = static_cast<int>(v);
    } else if (y.is_string()) {
      row.label = label_of(y.get<std::string>());
    } else {
      parse_fail("label must be 0 or 1");
    }
    row.mass = rational_field(r, "p");
    rows.push_back(std::move(row));
  }
  return JointDistribution::from_records(rows, groups);
}

JointDistribution parse_distribution_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    if (!trim(line).empty()) header = split_csv_line(line);
  }
  int cx = -1, cz = -1, cy = -1, cp = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const int idx = static_cast<int>(i);
    if (header[i] == "x") cx = idx;
    else if (header[i] == "z") cz = idx;
    else if (header[i] == "y") cy = idx;
    else if (header[i] == "p") cp = idx;
  }
  if (cx < 0 || cz < 0 || cy < 0 || cp < 0) parse_fail("CSV header must name columns x,z,y,p");

  std::vector<Record> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      parse_fail("CSV line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                 " fields, expected " + std::to_string(header.size()));
    }
    rows.push_back(Record{fields[static_cast<std::size_t>(cx)], fields[static_cast<std::size_t>(cz)],
                          label_of(fields[static_cast<std::size_t>(cy)]),
                          parse_rational(fields[static_cast<std::size_t>(cp)])});
  }
  return JointDistribution::from_records(rows);
}

RandomizedClassifier parse_classifier_json(std::string_view text) {
  Json doc = parse_json(text);
  if (doc.is_object() && !doc.contains("accept") && doc.contains("classifier")) doc = doc.at("classifier");
  if (!doc.is_object() || !doc.contains("accept") || !doc.at("accept").is_array()) {
    parse_fail("classifier JSON needs an \"accept\" array");
  }
  RandomizedClassifier f;
  for (const auto& e : doc.at("accept")) {
    if (!e.is_object()) parse_fail("each accept entry must be an object");
    f.set(token(e, "x"), token(e, "z"), rational_field(e, "p"));
  }
  return f;
}

Json rational_array(const std::vector<Rational>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(format_rational(v));
  return arr;
}

Json classifier_json(const RandomizedClassifier& f) {
  Json accept = Json::array();
  for (const auto& e : f.entries()) {
    accept.push_back(Json{{"x", e.feature}, {"z", e.group}, {"p", format_rational(e.accept)}});
  }
  return Json{{"accept", std::move(accept)}};
}

Json boundary_json(const BoundarySet& set) {
  const char* kind = set.kind == BoundaryKind::Score ? "score"
                     : set.kind == BoundaryKind::FalsePositive ? "fp"
                                                               : "fn";
  return Json{{"kind", kind}, {"points", rational_array(set.points)}};
}

Json curve_json(const PiecewiseLinearCurve& curve, const Rational& alpha) {
  Json j{{"breakpoints", rational_array(curve.breakpoints)}, {"values", rational_array(curve.values)}};
  if (alpha == kHalf) {
    std::vector<Rational> doubled;
    for (const auto& v : curve.values) doubled.push_back(2 * v);
    j["values01"] = rational_array(doubled);
  }
  return j;
}

std::string curve_csv(const PiecewiseLinearCurve& curve, const Rational& alpha) {
  const bool zero_one = alpha == kHalf;
  std::string out = zero_one ? "rate,loss01\n" : "rate,loss\n";
  for (std::size_t i = 0; i < curve.breakpoints.size(); ++i) {
    out += format_rational(curve.breakpoints[i]);
    out += ',';
    out += format_rational(zero_one ? Rational(2 * curve.values[i]) : curve.values[i]);
    out += '\n';
  }
  return out;
}

Json solution_json(const Solution& sol) {
  Json thresholds = Json::object();
  for (const auto& t : sol.group_thresholds) thresholds[t.group] = format_rational(t.threshold);
  Json j;
  j["notion"] = std::string(notion_name(sol.notion));
  j["alpha"] = format_rational(sol.alpha);
  j["rate"] = format_rational(sol.rate);
  j["group_thresholds"] = std::move(thresholds);
  j["loss"] = format_rational(sol.loss);
  if (sol.alpha == kHalf) j["loss01"] = format_rational(sol.error_probability);
  j["unique"] = sol.unique;
  j["classifier"] = classifier_json(sol.classifier);
  j["curve"] = curve_json(sol.curve, sol.alpha);
  return j;
}

Json fairness_json(const FairnessReport& report) {
  Json rates = Json::object();
  for (const auto& [g, r] : report.per_group_rate) rates[g] = format_rational(r);
  return Json{{"notion", std::string(notion_name(report.notion))},
              {"per_group_rate", std::move(rates)},
              {"fair", report.fair},
              {"max_gap", format_rational(report.max_gap)}};
}

Json representation_json(const Representation& rep) {
  Json points = Json::array();
  for (const auto& p : rep.points) {
    points.push_back(Json{{"id", p.id},
                          {"lower", format_rational(p.lower)},
                          {"upper", format_rational(p.upper)},
                          {"boundary_block", p.boundary_block}});
  }
  Json map = Json::array();
  for (const auto& e : rep.map) {
    for (const auto& a : e.assignments) {
      map.push_back(Json{{"x", e.feature}, {"z", e.group}, {"point", a.point},
                         {"p", format_rational(a.probability)}});
    }
  }
  return Json{{"notion", std::string(notion_name(rep.notion))},
              {"points", std::move(points)},
              {"map", std::move(map)}};
}

Json audit_json(const RepresentationAudit& audit, const Rational& alpha) {
  Json assignment = Json::array();
  for (std::size_t p = 0; p < audit.n_points; ++p) assignment.push_back((audit.best_assignment >> p) & 1U);
  Json j;
  j["notion"] = std::string(notion_name(audit.notion));
  j["alpha"] = format_rational(alpha);
  j["n_points"] = audit.n_points;
  j["classifiers_checked"] = audit.classifiers_checked;
  j["all_fair"] = audit.all_fair;
  j["best_loss"] = format_rational(audit.best_loss);
  if (alpha == kHalf) j["best_loss01"] = format_rational(2 * audit.best_loss);
  j["best_assignment"] = std::move(assignment);
  j["solver_loss"] = format_rational(audit.solver_loss);
  j["cfr"] = format_rational(audit.cfr);
  return j;
}

Json oracle_json(const OracleResult& result) {
  Json j;
  j["notion"] = std::string(notion_name(result.notion));
  j["alpha"] = format_rational(result.alpha);
  j["feasible"] = result.feasible;
  if (result.feasible) {
    j["optimal_loss"] = format_rational(result.optimal_loss);
    if (result.alpha == kHalf) j["optimal_loss01"] = format_rational(2 * result.optimal_loss);
  } else {
    j["optimal_loss"] = nullptr;
  }
  j["n_candidates"] = result.n_candidates;
  j["witness"] = result.witness ? classifier_json(*result.witness) : Json(nullptr);
  return j;
}

}  // namespace randfair
