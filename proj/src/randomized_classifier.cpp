#include "randfair/randomized_classifier.hpp"

#include <algorithm>
#include <cctype>

#include "randfair/error.hpp"

namespace randfair {

std::string_view notion_name(Notion notion) {
  switch (notion) {
    case Notion::DP: return "dp";
    case Notion::PE: return "pe";
    case Notion::EO: return "eo";
  }
  return "?";
}

Notion parse_notion(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "dp") return Notion::DP;
  if (lower == "pe") return Notion::PE;
  if (lower == "eo") return Notion::EO;
  throw Error(ErrorKind::InvalidArgument, "unknown fairness notion '" + std::string(text) + "'");
}

void RandomizedClassifier::set(std::string_view feature, std::string_view group,
                               const Rational& accept) {
  if (!in_unit_interval(accept)) {
    throw Error(ErrorKind::InvalidArgument, "acceptance probability " + format_rational(accept) +
                                                " for (" + std::string(feature) + ", " +
                                                std::string(group) + ") is outside [0,1]");
  }
  auto key = std::make_pair(std::string(feature), std::string(group));
  if (auto it = index_.find(key); it != index_.end()) {
    entries_[it->second].accept = accept;
    return;
  }
  index_.emplace(key, entries_.size());
  entries_.push_back(Entry{std::move(key.first), std::move(key.second), accept});
}

const Rational* RandomizedClassifier::find(std::string_view feature, std::string_view group) const {
  auto it = index_.find(std::make_pair(std::string(feature), std::string(group)));
  return it == index_.end() ? nullptr : &entries_[it->second].accept;
}

const Rational& RandomizedClassifier::at(std::string_view feature, std::string_view group) const {
  if (const Rational* p = find(feature, group)) return *p;
  throw Error(ErrorKind::IncompleteClassifier, "classifier has no entry for (" +
                                                   std::string(feature) + ", " + std::string(group) + ")");
}

bool RandomizedClassifier::is_deterministic() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Entry& e) { return e.accept == 0 || e.accept == 1; });
}

bool operator==(const RandomizedClassifier& a, const RandomizedClassifier& b) {
  if (a.size() != b.size()) return false;
  for (const auto& e : a.entries_) {
    const Rational* other = b.find(e.feature, e.group);
    if (other == nullptr || *other != e.accept) return false;
  }
  return true;
}

}  // namespace randfair
