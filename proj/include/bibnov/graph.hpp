#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "bibnov/corpus.hpp"

namespace bibnov {

enum class EntityKind { Journals, Keywords };

std::string_view to_string(EntityKind kind);
EntityKind parse_entity_kind(std::string_view text);

/// Distinct entities of a document, sorted. Journals come from reference
/// sources, keywords from the keyword list.
std::vector<std::string> document_entities(const DocumentRecord& doc, EntityKind kind);

struct DocumentCombinations {
  std::string doc_id;
  std::vector<std::pair<std::string, std::string>> pairs;  // first < second, sorted
};

/// All unordered pairs over the document's distinct entities.
DocumentCombinations extract_combinations(const DocumentRecord& doc, EntityKind kind);

using NodeIndex = std::int32_t;
using Weight = std::int64_t;
using WeightMatrix = Eigen::SparseMatrix<Weight, Eigen::RowMajor, NodeIndex>;
using DegreeVector = Eigen::Matrix<Weight, Eigen::Dynamic, 1>;

inline std::uint64_t pair_key(NodeIndex i, NodeIndex j) {
  if (i > j) std::swap(i, j);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) | static_cast<std::uint32_t>(j);
}
inline NodeIndex key_first(std::uint64_t key) { return static_cast<NodeIndex>(key >> 32); }
inline NodeIndex key_second(std::uint64_t key) { return static_cast<NodeIndex>(key & 0xffffffffULL); }

/// Symmetric weighted co-occurrence graph with zero diagonal. Nodes are the
/// entity strings in lexicographic order; the weight matrix keeps both
/// triangles so rows double as sorted neighbour lists.
class CoocGraph {
 public:
  CoocGraph() = default;
  /// `edges` holds (pair_key, weight) with first < second; duplicates are summed.
  CoocGraph(EntityKind kind, std::optional<YearRange> span, std::vector<std::string> nodes,
            const std::vector<std::pair<std::uint64_t, Weight>>& edges);

  EntityKind kind() const { return kind_; }
  const std::optional<YearRange>& year_span() const { return span_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return static_cast<std::size_t>(weights_.nonZeros() / 2); }
  std::optional<NodeIndex> index_of(std::string_view entity) const;

  const WeightMatrix& weights() const { return weights_; }
  Weight weight(NodeIndex i, NodeIndex j) const;
  const DegreeVector& degrees() const { return degrees_; }
  /// N: sum of upper-triangle weights.
  Weight total_weight() const { return total_; }

  /// f(i, j, w) for every edge with i < j, in row-major order.
  template <typename F>
  void for_each_edge(F&& f) const {
    for (NodeIndex i = 0; i < weights_.outerSize(); ++i)
      for (WeightMatrix::InnerIterator it(weights_, i); it; ++it)
        if (it.col() > i) f(i, static_cast<NodeIndex>(it.col()), it.value());
  }

  bool operator==(const CoocGraph& other) const;

 private:
  EntityKind kind_ = EntityKind::Journals;
  std::optional<YearRange> span_;
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, NodeIndex> index_;
  WeightMatrix weights_;
  DegreeVector degrees_;
  Weight total_ = 0;
};

/// Per-document distinct entity indices into `graph` (sorted). Entities not
/// in the graph are dropped.
std::vector<NodeIndex> entity_indices(const DocumentRecord& doc, const CoocGraph& graph);

CoocGraph build_cooc_graph(std::span<const DocumentRecord* const> docs, EntityKind kind, int threads = 1);

enum class Bound { Inclusive, Exclusive };

/// Graph over every document with year <= up_to (or < up_to for Exclusive).
CoocGraph cumulative_graph(const CorpusStore& store, EntityKind kind, int up_to, Bound bound = Bound::Inclusive,
                           int threads = 1);
/// Graph over documents with lo <= year <= hi.
CoocGraph window_graph(const CorpusStore& store, EntityKind kind, int lo, int hi, int threads = 1);

/// Text graph file: a header line with kind, span, v and N, the node list,
/// then one "i j w" line per upper-triangle edge.
void write_graph_file(const CoocGraph& graph, const std::string& path);
CoocGraph read_graph_file(const std::string& path);

/// Directed citing -> cited graph over in-corpus documents. Node indices are
/// the store's document indices.
class CitationGraph {
 public:
  CitationGraph() = default;

  std::size_t node_count() const { return ids_.size(); }
  const std::string& id(std::uint32_t node) const { return ids_[node]; }
  std::optional<std::uint32_t> index_of(std::string_view id) const;

  /// In_d: documents cited by d (sorted).
  std::span<const std::uint32_t> references(std::uint32_t node) const {
    return {refs_.data() + ref_offsets_[node], refs_.data() + ref_offsets_[node + 1]};
  }
  /// Out_d: documents citing d (sorted).
  std::span<const std::uint32_t> citers(std::uint32_t node) const {
    return {citers_.data() + citer_offsets_[node], citers_.data() + citer_offsets_[node + 1]};
  }
  std::size_t edge_count() const { return refs_.size(); }

  std::uint32_t resolved_ref_count(std::uint32_t node) const { return resolved_[node]; }
  std::uint32_t total_ref_count(std::uint32_t node) const { return total_[node]; }
  std::size_t dropped_self_citations() const { return dropped_self_; }

  friend CitationGraph build_citation_graph(const CorpusStore& store);

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::uint32_t> by_id_;
  std::vector<std::size_t> ref_offsets_{0};
  std::vector<std::uint32_t> refs_;
  std::vector<std::size_t> citer_offsets_{0};
  std::vector<std::uint32_t> citers_;
  std::vector<std::uint32_t> resolved_;
  std::vector<std::uint32_t> total_;
  std::size_t dropped_self_ = 0;
};

CitationGraph build_citation_graph(const CorpusStore& store);

}  // namespace bibnov
