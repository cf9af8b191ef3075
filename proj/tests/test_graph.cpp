#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bibnov/graph.hpp"
#include "fixtures.hpp"

using namespace bibnov;
using namespace bibnov::test;

namespace {

CoocGraph graph_of(const std::vector<DocumentRecord>& docs, EntityKind kind = EntityKind::Journals, int threads = 1) {
  std::vector<const DocumentRecord*> view;
  for (const auto& d : docs) view.push_back(&d);
  return build_cooc_graph(view, kind, threads);
}

Weight w(const CoocGraph& g, const char* a, const char* b) { return g.weight(*g.index_of(a), *g.index_of(b)); }

void expect_handshake(const CoocGraph& g) {
  EXPECT_EQ(g.degrees().sum(), 2 * g.total_weight());
  Weight upper = 0;
  g.for_each_edge([&](NodeIndex i, NodeIndex j, Weight x) {
    EXPECT_EQ(g.weight(j, i), x);
    upper += x;
    (void)i;
  });
  EXPECT_EQ(upper, g.total_weight());
  for (NodeIndex i = 0; i < static_cast<NodeIndex>(g.node_count()); ++i) EXPECT_EQ(g.weight(i, i), 0);
}

}  // namespace

TEST(Combinations, BinaryPerDocument) {
  auto c = extract_combinations(journals("p", 2000, {"A", "B", "B"}), EntityKind::Journals);
  ASSERT_EQ(c.pairs.size(), 1u);
  EXPECT_EQ(c.pairs[0], (std::pair<std::string, std::string>{"A", "B"}));
  EXPECT_TRUE(extract_combinations(doc("p", 2000, {}, {"k1"}), EntityKind::Keywords).pairs.empty());
  auto three = extract_combinations(doc("p", 2000, {}, {"x", "y", "z"}), EntityKind::Keywords);
  EXPECT_EQ(three.pairs.size(), 3u);
}

TEST(CoocGraph, HandWorkedWeights) {
  auto g = graph_of({journals("P1", 2000, {"A", "B"}), journals("P2", 2000, {"A", "B"}), journals("P3", 2000, {"A", "C"})});
  EXPECT_EQ(w(g, "A", "B"), 2);
  EXPECT_EQ(w(g, "A", "C"), 1);
  EXPECT_EQ(w(g, "B", "C"), 0);
  EXPECT_EQ(g.total_weight(), 3);
  EXPECT_EQ(g.degrees()[*g.index_of("A")], 3);
  EXPECT_EQ(g.degrees()[*g.index_of("B")], 2);
  EXPECT_EQ(g.degrees()[*g.index_of("C")], 1);
  expect_handshake(g);
}

TEST(CoocGraph, EmptyAndSingle) {
  auto empty = graph_of({});
  EXPECT_EQ(empty.node_count(), 0u);
  EXPECT_EQ(empty.total_weight(), 0);
  auto one = graph_of({journals("P", 2000, {"A", "B"})});
  EXPECT_EQ(one.total_weight(), 1);
  // Single-entity documents still register their node.
  auto iso = graph_of({journals("P", 2000, {"A", "B"}), journals("Q", 2000, {"Z"})});
  EXPECT_EQ(iso.node_count(), 3u);
  EXPECT_EQ(iso.degrees()[*iso.index_of("Z")], 0);
}

TEST(CoocGraph, PermutationInvarianceAndThreads) {
  auto corpus = small_corpus(5, 200);
  auto docs = corpus.documents;
  auto base = graph_of(docs);
  expect_handshake(base);
  std::mt19937 rng(3);
  for (int round = 0; round < 3; ++round) {
    std::shuffle(docs.begin(), docs.end(), rng);
    EXPECT_EQ(graph_of(docs), base);
  }
  EXPECT_EQ(graph_of(docs, EntityKind::Journals, 4), base);
  auto kw = graph_of(docs, EntityKind::Keywords, 3);
  EXPECT_EQ(kw, graph_of(docs, EntityKind::Keywords, 1));
  expect_handshake(kw);
}

TEST(CoocGraph, WeightBoundedByContributingDocuments) {
  auto corpus = small_corpus(6, 150);
  auto g = graph_of(corpus.documents);
  g.for_each_edge([&](NodeIndex, NodeIndex, Weight x) { EXPECT_LE(x, static_cast<Weight>(corpus.documents.size())); });
}

TEST(CumulativeGraph, AdditivityOverYears) {
  auto store = store_of({journals("P1", 2004, {"A", "B"}), journals("P2", 2005, {"A", "B"})});
  EXPECT_EQ(w(cumulative_graph(store, EntityKind::Journals, 2005), "A", "B"), 2);
  EXPECT_EQ(w(cumulative_graph(store, EntityKind::Journals, 2004), "A", "B"), 1);
  EXPECT_EQ(cumulative_graph(store, EntityKind::Journals, 2005, Bound::Exclusive).total_weight(), 1);
  EXPECT_EQ(cumulative_graph(store, EntityKind::Journals, 1990).node_count(), 0u);

  auto corpus = small_corpus(7, 200);
  CorpusStore big(corpus.documents);
  auto cum = cumulative_graph(big, EntityKind::Journals, 2005);
  std::map<std::pair<std::string, std::string>, Weight> summed;
  for (int y = 2000; y <= 2005; ++y) {
    auto g = window_graph(big, EntityKind::Journals, y, y);
    g.for_each_edge([&](NodeIndex i, NodeIndex j, Weight x) { summed[{g.nodes()[i], g.nodes()[j]}] += x; });
  }
  std::size_t edges = 0;
  cum.for_each_edge([&](NodeIndex i, NodeIndex j, Weight x) {
    EXPECT_EQ((summed[{cum.nodes()[i], cum.nodes()[j]}]), x);
    ++edges;
  });
  EXPECT_EQ(edges, summed.size());
}

TEST(GraphFile, RoundTrip) {
  TempDir dir;
  auto corpus = small_corpus(8, 100);
  CorpusStore store(corpus.documents);
  auto g = window_graph(store, EntityKind::Keywords, 2001, 2004);
  write_graph_file(g, dir.file("g.tsv"));
  EXPECT_EQ(read_graph_file(dir.file("g.tsv")), g);
}

TEST(CitationGraph, ResolutionAndSelfLoops) {
  auto d1 = doc("P1", 2001, {cite("P2"), cite("X"), cite("P1")});
  auto store = store_of({d1, doc("P2", 2000, {src("J")})});
  auto g = build_citation_graph(store);
  auto p1 = *g.index_of("P1"), p2 = *g.index_of("P2");
  ASSERT_EQ(g.references(p1).size(), 1u);
  EXPECT_EQ(g.references(p1)[0], p2);
  EXPECT_EQ(g.resolved_ref_count(p1), 1u);
  EXPECT_EQ(g.total_ref_count(p1), 3u);
  EXPECT_EQ(g.dropped_self_citations(), 1u);
  EXPECT_EQ(build_citation_graph(CorpusStore()).edge_count(), 0u);
}

TEST(CitationGraph, Duality) {
  auto corpus = small_corpus(10, 250);
  CorpusStore store(corpus.documents);
  auto g = build_citation_graph(store);
  std::size_t in_total = 0, out_total = 0;
  for (std::uint32_t d = 0; d < g.node_count(); ++d) {
    in_total += g.references(d).size();
    out_total += g.citers(d).size();
    for (auto c : g.citers(d)) {
      auto refs = g.references(c);
      EXPECT_TRUE(std::binary_search(refs.begin(), refs.end(), d));
    }
    for (auto r : g.references(d)) {
      auto cs = g.citers(r);
      EXPECT_TRUE(std::binary_search(cs.begin(), cs.end(), d));
    }
  }
  EXPECT_EQ(in_total, out_total);
  EXPECT_EQ(in_total, g.edge_count());
}
