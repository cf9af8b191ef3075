#include "bibnov/louvain.hpp"

#include <algorithm>

#include "bibnov/errors.hpp"

namespace bibnov {

namespace {

constexpr int kMaxPasses = 10000;

// Weights are integer counts stored in doubles, so sums below 2^53 are exact
// and the move decisions do not depend on summation order.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::int32_t, double>>> adjacency;  // no self entries
  std::vector<double> self_loop;
  std::vector<double> degree;  // includes self_loop
  double two_m = 0.0;

  std::int32_t size() const { return static_cast<std::int32_t>(adjacency.size()); }
};

LevelGraph from_cooc(const CoocGraph& graph) {
  LevelGraph g;
  const auto n = static_cast<std::int32_t>(graph.node_count());
  g.adjacency.resize(n);
  g.self_loop.assign(n, 0.0);
  g.degree.assign(n, 0.0);
  for (std::int32_t i = 0; i < n; ++i) {
    for (WeightMatrix::InnerIterator it(graph.weights(), i); it; ++it) {
      g.adjacency[i].emplace_back(static_cast<std::int32_t>(it.col()), static_cast<double>(it.value()));
      g.degree[i] += static_cast<double>(it.value());
    }
    g.two_m += g.degree[i];
  }
  return g;
}

// Renumbers by first appearance; returns the number of communities.
std::int32_t renumber(std::vector<std::int32_t>& community) {
  std::vector<std::int32_t> map(community.size(), -1);
  std::int32_t next = 0;
  for (auto& c : community) {
    if (map[c] < 0) map[c] = next++;
    c = map[c];
  }
  return next;
}

bool one_level(const LevelGraph& g, double resolution, std::vector<std::int32_t>& community) {
  const std::int32_t n = g.size();
  community.resize(n);
  std::vector<double> total(n);
  for (std::int32_t i = 0; i < n; ++i) {
    community[i] = i;
    total[i] = g.degree[i];
  }
  std::vector<double> link(n, -1.0);
  std::vector<std::int32_t> touched;
  bool moved_any = false;

  for (int pass = 0; pass < kMaxPasses; ++pass) {
    bool moved = false;
    for (std::int32_t i = 0; i < n; ++i) {
      touched.clear();
      for (const auto& [j, w] : g.adjacency[i]) {
        const auto c = community[j];
        if (link[c] < 0) {
          link[c] = 0.0;
          touched.push_back(c);
        }
        link[c] += w;
      }
      const auto old = community[i];
      const double k = g.degree[i];
      total[old] -= k;

      auto gain = [&](std::int32_t c) {
        const double k_in = link[c] < 0 ? 0.0 : link[c];
        return g.two_m * k_in - resolution * total[c] * k;
      };
      std::int32_t best = old;
      double best_gain = gain(old);
      std::sort(touched.begin(), touched.end());
      for (auto c : touched) {
        if (c == old) continue;
        const double candidate = gain(c);
        if (candidate > best_gain) {
          best = c;
          best_gain = candidate;
        }
      }
      total[best] += k;
      community[i] = best;
      if (best != old) moved = true;
      for (auto c : touched) link[c] = -1.0;
    }
    if (!moved) break;
    moved_any = true;
  }
  return moved_any;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<std::int32_t>& community, std::int32_t count) {
  LevelGraph out;
  out.adjacency.resize(count);
  out.self_loop.assign(count, 0.0);
  out.degree.assign(count, 0.0);
  out.two_m = g.two_m;
  std::vector<std::vector<std::pair<std::int32_t, double>>> raw(count);
  for (std::int32_t i = 0; i < g.size(); ++i) {
    const auto ci = community[i];
    out.self_loop[ci] += g.self_loop[i];
    out.degree[ci] += g.degree[i];
    for (const auto& [j, w] : g.adjacency[i]) {
      const auto cj = community[j];
      if (cj == ci)
        out.self_loop[ci] += w;
      else
        raw[ci].emplace_back(cj, w);
    }
  }
  for (std::int32_t c = 0; c < count; ++c) {
    auto& r = raw[c];
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [d, w] : r) {
      if (!out.adjacency[c].empty() && out.adjacency[c].back().first == d)
        out.adjacency[c].back().second += w;
      else
        out.adjacency[c].emplace_back(d, w);
    }
  }
  return out;
}

}  // namespace

double modularity(const CoocGraph& graph, const std::vector<std::int32_t>& community, double resolution) {
  const double two_m = 2.0 * static_cast<double>(graph.total_weight());
  if (two_m == 0.0) return 0.0;
  std::int32_t count = 0;
  for (auto c : community) count = std::max(count, c + 1);
  std::vector<double> inside(count, 0.0), total(count, 0.0);
  for (NodeIndex i = 0; i < static_cast<NodeIndex>(graph.node_count()); ++i) {
    total[community[i]] += static_cast<double>(graph.degrees()[i]);
    for (WeightMatrix::InnerIterator it(graph.weights(), i); it; ++it)
      if (community[it.col()] == community[i]) inside[community[i]] += static_cast<double>(it.value());
  }
  double q = 0.0;
  for (std::int32_t c = 0; c < count; ++c) q += inside[c] / two_m - resolution * (total[c] / two_m) * (total[c] / two_m);
  return q;
}

CommunityPartition detect_communities(const CoocGraph& graph, double resolution, std::uint64_t seed) {
  if (graph.node_count() == 0) throw Error(ErrorCode::EmptyGraph, "cannot detect communities on an empty graph");
  CommunityPartition result;
  result.resolution = resolution;
  result.seed = seed;

  std::vector<std::int32_t> membership(graph.node_count());
  for (std::size_t i = 0; i < membership.size(); ++i) membership[i] = static_cast<std::int32_t>(i);

  LevelGraph level = from_cooc(graph);
  std::vector<std::int32_t> community;
  while (one_level(level, resolution, community)) {
    const auto count = renumber(community);
    for (auto& m : membership) m = community[m];
    if (count == level.size()) break;
    level = aggregate(level, community, count);
  }
  result.community_count = renumber(membership);
  result.community = std::move(membership);
  result.modularity = modularity(graph, result.community, resolution);
  return result;
}

}  // namespace bibnov
