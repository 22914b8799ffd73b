#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "randfair/cells.hpp"
#include "randfair/classifier.hpp"
#include "randfair/oracle.hpp"
#include "randfair/representation.hpp"
#include "randfair/solvers.hpp"

namespace randfair {

using Json = nlohmann::ordered_json;

// {"groups": [...optional...], "records": [{"x": .., "z": .., "y": 0|1, "p": "3/8"}]}
JointDistribution parse_distribution_json(std::string_view text);
// Header naming columns x,z,y,p in any order.
JointDistribution parse_distribution_csv(std::string_view text);

// {"accept": [{"x": .., "z": .., "p": ..}]}, or any object holding one under
// "classifier" (so a solve report can be fed back in).
RandomizedClassifier parse_classifier_json(std::string_view text);

Json rational_array(const std::vector<Rational>& values);
Json classifier_json(const RandomizedClassifier& f);
Json boundary_json(const BoundarySet& set);
// Adds "values01" (the 0-1 loss) when alpha = 1/2.
Json curve_json(const PiecewiseLinearCurve& curve, const Rational& alpha);
// Two columns: rate and the 0-1 loss ("loss01") when alpha = 1/2, otherwise
// rate and the cost-sensitive loss ("loss").
std::string curve_csv(const PiecewiseLinearCurve& curve, const Rational& alpha);
Json solution_json(const Solution& sol);
Json fairness_json(const FairnessReport& report);
Json representation_json(const Representation& rep);
Json audit_json(const RepresentationAudit& audit, const Rational& alpha);
Json oracle_json(const OracleResult& result);

}  // namespace randfair
