#include "bibnov/graph.hpp"

#include <algorithm>

namespace bibnov {

std::optional<std::uint32_t> CitationGraph::index_of(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

CitationGraph build_citation_graph(const CorpusStore& store) {
  CitationGraph g;
  const auto n = static_cast<std::uint32_t>(store.size());
  g.ids_.reserve(n);
  g.by_id_.reserve(n);
  g.resolved_.assign(n, 0);
  g.total_.assign(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    g.ids_.push_back(store[i].id);
    g.by_id_.emplace(store[i].id, i);
  }

  std::vector<std::uint32_t> in_degree(n, 0);
  std::vector<std::uint32_t> cited;
  g.ref_offsets_.reserve(n + 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    cited.clear();
    const auto& doc = store[i];
    g.total_[i] = static_cast<std::uint32_t>(doc.references.size());
    for (const auto& r : doc.references) {
      if (!r.ref_id) continue;
      auto it = g.by_id_.find(*r.ref_id);
      if (it == g.by_id_.end()) continue;
      if (it->second == i) {
        ++g.dropped_self_;
        continue;
      }
      cited.push_back(it->second);
    }
    std::sort(cited.begin(), cited.end());
    cited.erase(std::unique(cited.begin(), cited.end()), cited.end());
    g.resolved_[i] = static_cast<std::uint32_t>(cited.size());
    for (auto c : cited) ++in_degree[c];
    g.refs_.insert(g.refs_.end(), cited.begin(), cited.end());
    g.ref_offsets_.push_back(g.refs_.size());
  }

  g.citer_offsets_.assign(n + 1, 0);
  for (std::uint32_t i = 0; i < n; ++i) g.citer_offsets_[i + 1] = g.citer_offsets_[i] + in_degree[i];
  g.citers_.resize(g.refs_.size());
  std::vector<std::size_t> fill(g.citer_offsets_.begin(), g.citer_offsets_.end() - 1);
  // Citing nodes are visited in ascending order, so each citer list ends up sorted.
  for (std::uint32_t i = 0; i < n; ++i)
    for (auto c : g.references(i)) g.citers_[fill[c]++] = i;
  return g;
}

}  // namespace bibnov
