#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bibnov/graph.hpp"
#include "bibnov/score.hpp"

namespace bibnov {

/// I / J^l / K sets of one focal paper. A citer c belongs to J^l when it
/// shares at least l references with the focal paper and to I otherwise; K
/// holds non-citers (other than the focal paper) that cite one of its
/// references.
struct CiterClassification {
  std::string doc_id;
  std::map<int, std::uint32_t> i_counts;  // per l
  std::map<int, std::uint32_t> j_counts;  // per l
  std::uint32_t k_count = 0;
  std::uint32_t citer_count = 0;
  std::uint32_t ref_count = 0;
  std::uint64_t shared_ref_total = 0;
  std::uint32_t deep_citers = 0;  // citers that also cite another citer
};

struct DisruptionRecord {
  std::string doc_id;
  int year = 0;
  std::map<int, std::optional<double>> di;      // DI_l, with K
  std::map<int, std::optional<double>> di_nok;  // DI_l without K
  std::optional<double> depth;
  std::optional<double> breadth;
  std::optional<double> dependence;
  std::optional<double> independence;
  std::uint32_t citer_count = 0;
  std::uint32_t resolved_refs = 0;
  std::uint32_t total_refs = 0;
};

/// Reusable per-thread scratch space for repeated classification.
class CiterScratch {
 public:
  explicit CiterScratch(std::size_t nodes = 0) : mark_(nodes, 0) {}

 private:
  friend CiterClassification classify_citers(std::uint32_t, const CitationGraph&, const std::vector<int>&,
                                             CiterScratch&);
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

CiterClassification classify_citers(std::uint32_t focal, const CitationGraph& graph, const std::vector<int>& l_values,
                                    CiterScratch& scratch);
CiterClassification classify_citers(const std::string& focal_id, const CitationGraph& graph,
                                    const std::vector<int>& l_values);

DisruptionRecord disruption_from(const CiterClassification& c);
DisruptionRecord disruption_scores(const std::string& focal_id, const CitationGraph& graph,
                                   const std::vector<int>& l_values = {1, 5});

/// Scores the given nodes (all nodes when empty) in node order.
std::vector<DisruptionRecord> disruption_batch(const CitationGraph& graph, const std::vector<std::uint32_t>& nodes,
                                               const std::vector<int>& l_values = {1, 5}, int threads = 1);

inline const std::vector<std::string>& all_disruption_measures() {
  static const std::vector<std::string> measures{"di1",   "di5",     "dinok1",     "dinok5",
                                                 "depth", "breadth", "dependence", "independence"};
  return measures;
}

/// Serialises a record as a ScoreRecord with the requested measures
/// ("di<l>", "dinok<l>", "depth", "breadth", "dependence", "independence").
ScoreRecord to_score_record(const DisruptionRecord& record, const std::vector<std::string>& measures,
                            const std::string& params);

/// The l values needed by a measure list.
std::vector<int> l_values_for(const std::vector<std::string>& measures);

}  // namespace bibnov
