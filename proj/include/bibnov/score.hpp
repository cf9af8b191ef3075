#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bibnov {

struct NamedScore {
  std::string name;
  std::optional<double> value;  // nullopt = undefined for this document

  bool operator==(const NamedScore&) const = default;
};

/// One (document, indicator, parameter set) result.
struct ScoreRecord {
  std::string doc_id;
  std::string indicator;
  std::string entity;  // journals | keywords | citations | title | abstract
  int year = 0;
  std::string params;  // parameter fingerprint
  std::vector<NamedScore> scores;
  std::vector<double> percentiles;   // at kStandardPercentiles, or empty
  std::vector<double> distribution;  // raw per-pair values, sorted
  std::vector<std::pair<std::string, double>> diagnostics;

  const std::optional<double>* score(const std::string& name) const {
    for (const auto& s : scores)
      if (s.name == name) return &s.value;
    return nullptr;
  }

  bool operator==(const ScoreRecord&) const = default;
};

}  // namespace bibnov
