#pragma once

#include <cstdint>
#include <vector>

#include "bibnov/graph.hpp"

namespace bibnov {

struct CommunityPartition {
  std::vector<std::int32_t> community;  // per node, numbered by first appearance
  std::int32_t community_count = 0;
  double modularity = 0.0;
  double resolution = 1.0;
  std::uint64_t seed = 0;
};

/// Multi-level Louvain. Nodes are swept in index order; a node moves only
/// for a strictly positive gain over staying, and equal gains go to the
/// lowest community id. The result is a pure function of the graph and the
/// resolution; `seed` is carried for provenance.
CommunityPartition detect_communities(const CoocGraph& graph, double resolution = 1.0, std::uint64_t seed = 0);

/// Generalised modularity of `community` on `graph`.
double modularity(const CoocGraph& graph, const std::vector<std::int32_t>& community, double resolution = 1.0);

}  // namespace bibnov
