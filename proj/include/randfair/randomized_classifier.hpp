#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "randfair/rational.hpp"

namespace randfair {

enum class Notion { DP, PE, EO };

std::string_view notion_name(Notion notion);  // "dp", "pe", "eo"
Notion parse_notion(std::string_view text);    // case-insensitive

// Map (feature, group) -> probability of predicting 1. Entries keep their
// insertion order so serialized output is stable.
class RandomizedClassifier {
 public:
  struct Entry {
    std::string feature;
    std::string group;
    Rational accept;
  };

  // Inserts or overwrites. Throws InvalidArgument outside [0,1].
  void set(std::string_view feature, std::string_view group, const Rational& accept);

  const Rational* find(std::string_view feature, std::string_view group) const;
  // Throws IncompleteClassifier when the pair has no entry.
  const Rational& at(std::string_view feature, std::string_view group) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool is_deterministic() const;

  friend bool operator==(const RandomizedClassifier& a, const RandomizedClassifier& b);

 private:
  std::vector<Entry> entries_;
  std::map<std::pair<std::string, std::string>, std::size_t, std::less<>> index_;
};

}  // namespace randfair
