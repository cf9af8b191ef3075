#include <gtest/gtest.h>

#include <random>

#include "bibnov/errors.hpp"
#include "bibnov/louvain.hpp"
#include "bibnov/oracle.hpp"

using namespace bibnov;

namespace {

CoocGraph from_edges(int n, const std::vector<std::tuple<int, int, Weight>>& edges) {
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back("n" + std::string(1, static_cast<char>('a' + i)));
  std::vector<std::pair<std::uint64_t, Weight>> e;
  for (auto [i, j, w] : edges) e.emplace_back(pair_key(i, j), w);
  return CoocGraph(EntityKind::Journals, std::nullopt, nodes, e);
}

Eigen::MatrixXd dense(const CoocGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  g.for_each_edge([&](NodeIndex i, NodeIndex j, Weight w) { a(i, j) = a(j, i) = static_cast<double>(w); });
  return a;
}

CoocGraph random_graph(std::mt19937_64& rng, int n, double density, int max_w) {
  std::vector<std::tuple<int, int, Weight>> edges;
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> w(1, max_w);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u(rng) < density) edges.emplace_back(i, j, w(rng));
  return from_edges(n, edges);
}

}  // namespace

TEST(Louvain, TwoCliquesJoinedByWeakEdge) {
  auto g = from_edges(6, {{0, 1, 5}, {0, 2, 5}, {1, 2, 5}, {3, 4, 5}, {3, 5, 5}, {4, 5, 5}, {2, 3, 1}});
  auto p = detect_communities(g);
  EXPECT_EQ(p.community, (std::vector<std::int32_t>{0, 0, 0, 1, 1, 1}));
  auto best = oracle::best_partition(dense(g), 1.0);
  EXPECT_NEAR(p.modularity, best.first, 1e-12);
  EXPECT_NEAR(p.modularity, modularity(g, p.community), 1e-12);
}

TEST(Louvain, CompleteGraphMatchesExhaustiveOptimum) {
  for (int n = 2; n <= 8; ++n) {
    std::vector<std::tuple<int, int, Weight>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j, 1);
    auto g = from_edges(n, edges);
    auto p = detect_communities(g);
    auto best = oracle::best_partition(dense(g), 1.0);
    EXPECT_GE(p.modularity, -1e-12) << n;
    EXPECT_NEAR(p.modularity, best.first, 1e-12) << n;
  }
}

TEST(Louvain, DeterministicAndErrors) {
  std::mt19937_64 rng(1);
  auto g = random_graph(rng, 30, 0.2, 4);
  auto a = detect_communities(g, 1.0, 5);
  auto b = detect_communities(g, 1.0, 5);
  EXPECT_EQ(a.community, b.community);
  EXPECT_EQ(a.modularity, b.modularity);
  try {
    detect_communities(CoocGraph());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyGraph);
  }
}

TEST(Louvain, MatchesDenseReference) {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 40; ++round) {
    const int n = 4 + static_cast<int>(rng() % 20);
    const double resolution = round % 3 == 0 ? 0.5 : (round % 3 == 1 ? 1.0 : 1.5);
    auto g = random_graph(rng, n, 0.3, 5);
    auto p = detect_communities(g, resolution);
    EXPECT_EQ(p.community, oracle::louvain(dense(g), resolution)) << "round " << round;
    EXPECT_NEAR(p.modularity, oracle::dense_modularity(dense(g), p.community, resolution), 1e-12);
  }
}

TEST(Louvain, NeverBeatsExhaustiveSearch) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 15; ++round) {
    auto g = random_graph(rng, 7, 0.5, 3);
    if (g.total_weight() == 0) continue;
    auto p = detect_communities(g);
    auto best = oracle::best_partition(dense(g), 1.0);
    EXPECT_LE(p.modularity, best.first + 1e-12);
    EXPECT_GE(p.modularity, best.first - 0.1);
  }
}

TEST(Louvain, IsolatedNodesKeepOwnCommunity) {
  auto g = from_edges(4, {{0, 1, 2}});
  auto p = detect_communities(g);
  ASSERT_EQ(p.community.size(), 4u);
  EXPECT_EQ(p.community[0], p.community[1]);
  EXPECT_NE(p.community[2], p.community[3]);
}
