#include <gtest/gtest.h>

#include <cmath>

#include "bibnov/errors.hpp"
#include "bibnov/novelty.hpp"
#include "bibnov/oracle.hpp"
#include "fixtures.hpp"

using namespace bibnov;
using namespace bibnov::test;

namespace {

const ScoreRecord* record_for(const std::vector<ScoreRecord>& records, const std::string& id) {
  for (const auto& r : records)
    if (r.doc_id == id) return &r;
  return nullptr;
}

double value(const std::vector<ScoreRecord>& records, const std::string& id, const std::string& name) {
  const auto* r = record_for(records, id);
  EXPECT_NE(r, nullptr) << id;
  if (!r) return NAN;
  const auto* v = r->score(name);
  EXPECT_TRUE(v && v->has_value()) << id << " " << name;
  return v && *v ? **v : NAN;
}

CorpusStore lee_example() {
  return store_of({journals("P1", 2004, {"A", "B"}), journals("P2", 2004, {"A", "B"}), journals("P3", 2004, {"A", "C"}),
                   journals("P4", 2004, {"A", "B"}), journals("P5", 2004, {"B", "C"})});
}

double commonness(const LeeResult& r, const char* a, const char* b) {
  const auto& nodes = r.table.nodes;
  const auto i = static_cast<NodeIndex>(std::find(nodes.begin(), nodes.end(), a) - nodes.begin());
  const auto j = static_cast<NodeIndex>(std::find(nodes.begin(), nodes.end(), b) - nodes.begin());
  for (const auto& e : r.table.commonness)
    if (e.first == std::min(i, j) && e.second == std::max(i, j)) return e.value;
  ADD_FAILURE() << a << "-" << b;
  return NAN;
}

}  // namespace

TEST(Lee, WorkedExample) {
  auto r = lee_commonness(lee_example(), EntityKind::Journals, 2004);
  EXPECT_NEAR(commonness(r, "A", "B"), 0.9375, 1e-12);
  EXPECT_NEAR(commonness(r, "A", "C"), 0.625, 1e-12);
  EXPECT_NEAR(commonness(r, "B", "C"), 0.625, 1e-12);
  EXPECT_NEAR(value(r.records, "P3", "commonness"), -std::log(0.625), 1e-12);
  EXPECT_NEAR(value(r.records, "P3", "commonness"), 0.4700, 1e-4);
  // Single pair: P10 of a singleton is the value itself.
  EXPECT_NEAR(value(r.records, "P1", "commonness"), -std::log(0.9375), 1e-12);
}

TEST(Lee, SingleDocumentScoresZero) {
  auto r = lee_commonness(store_of({journals("P", 2000, {"A", "B"})}), EntityKind::Journals, 2000);
  EXPECT_EQ(commonness(r, "A", "B"), 1.0);
  EXPECT_EQ(value(r.records, "P", "commonness"), 0.0);
}

TEST(Lee, EmptyYearAndPairlessDocuments) {
  auto store = store_of({journals("P", 2000, {"A", "B"}), journals("Q", 2000, {"A"})});
  auto r = lee_commonness(store, EntityKind::Journals, 2000);
  EXPECT_EQ(r.records.size(), 1u);
  try {
    lee_commonness(store, EntityKind::Journals, 1999);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoDocuments);
  }
}

TEST(Lee, CommonnessPositiveAndMonotoneInRawRatio) {
  auto corpus = small_corpus(21, 300, 15);
  CorpusStore store(corpus.documents);
  auto r = lee_commonness(store, EntityKind::Keywords, 2004, 3);
  auto g = window_graph(store, EntityKind::Keywords, 2004, 2004);
  for (const auto& e : r.table.commonness) {
    EXPECT_GT(e.value, 0.0);
    const double raw = static_cast<double>(g.weight(e.first, e.second)) * static_cast<double>(g.total_weight()) /
                       (static_cast<double>(g.degrees()[e.first]) * static_cast<double>(g.degrees()[e.second]));
    EXPECT_DOUBLE_EQ(e.value, raw);
  }
  for (const auto& rec : r.records)
    for (std::size_t i = 1; i < rec.percentiles.size(); ++i) EXPECT_LE(rec.percentiles[i - 1], rec.percentiles[i]);
}

TEST(Uzzi, DegenerateCorpusScoresZero) {
  std::vector<DocumentRecord> docs;
  for (const char* id : {"P", "Q", "R"}) docs.push_back(doc(id, 2000, {src("A", 1998), src("B", 1999)}));
  auto r = uzzi_scores(store_of(docs), {EntityKind::Journals, 2000, 20, 7, 1});
  ASSERT_EQ(r.records.size(), 3u);
  for (const auto& rec : r.records) {
    EXPECT_EQ(value(r.records, rec.doc_id, "novelty"), 0.0);
    EXPECT_EQ(value(r.records, rec.doc_id, "conventionality"), 0.0);
  }
  ASSERT_EQ(r.table.z.size(), 1u);
  EXPECT_EQ(r.table.z[0].value, 0.0);
}

TEST(Uzzi, SampledZNearExactZ) {
  auto store = store_of({doc("P1", 2000, {src("A", 1990), src("B", 1990), src("C", 1991)}),
                         doc("P2", 2000, {src("B", 1990), src("C", 1991), src("D", 1991)}),
                         doc("P3", 2000, {src("A", 1990), src("D", 1991)}),
                         doc("P4", 2000, {src("C", 1990), src("A", 1991), src("B", 1992)}),
                         doc("P5", 2000, {src("D", 1990), src("B", 1992)})});
  auto exact = oracle::exact_uzzi(store, EntityKind::Journals, 2000);
  auto r = uzzi_scores(store, {EntityKind::Journals, 2000, 1000, 7, 1});
  std::size_t checked = 0;
  for (const auto& e : r.table.z) {
    const auto label = oracle::edge_label(r.table.nodes[static_cast<std::size_t>(e.first)],
                                          r.table.nodes[static_cast<std::size_t>(e.second)]);
    const auto& m = exact.moments.at(label);
    if (m.std == 0) continue;
    const double z = (static_cast<double>(exact.observed.at(label)) - m.mean) / m.std;
    EXPECT_NEAR(e.value, z, 0.1) << label;
    ++checked;
  }
  EXPECT_GT(checked, 0u);
}

TEST(Uzzi, ReproducibleAcrossThreads) {
  auto corpus = small_corpus(22, 300, 14);
  CorpusStore store(corpus.documents);
  auto a = uzzi_scores(store, {EntityKind::Journals, 2005, 30, 99, 1});
  auto b = uzzi_scores(store, {EntityKind::Journals, 2005, 30, 99, 6});
  EXPECT_EQ(a.records, b.records);
  auto c = uzzi_scores(store, {EntityKind::Journals, 2005, 30, 100, 1});
  EXPECT_NE(a.records, c.records);
}

TEST(Uzzi, CenteredEdgeHasZeroZ) {
  auto corpus = small_corpus(23, 200, 10);
  CorpusStore store(corpus.documents);
  auto r = uzzi_scores(store, {EntityKind::Journals, 2004, 20, 1, 1});
  for (const auto& e : r.table.z) {
    const auto* m = r.stats.find(e.first, e.second);
    ASSERT_NE(m, nullptr);
    if (static_cast<double>(m->observed) == m->mean) EXPECT_EQ(e.value, 0.0);
    EXPECT_TRUE(std::isfinite(e.value));
  }
}

TEST(Foster, HandCountedFraction) {
  std::vector<DocumentRecord> docs;
  for (int i = 0; i < 5; ++i) {
    docs.push_back(journals("ab" + std::to_string(i), 2000, {"A", "B"}));
    docs.push_back(journals("cd" + std::to_string(i), 2000, {"C", "D"}));
  }
  docs.push_back(journals("FP", 2001, {"A", "B", "C"}));
  docs.push_back(journals("AB", 2001, {"A", "B"}));
  docs.push_back(journals("AC", 2001, {"A", "C"}));
  auto r = foster_bridging(store_of(docs), {EntityKind::Journals, 2001, 1.0, 0, 1});
  EXPECT_NEAR(value(r.records, "FP", "novelty"), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(value(r.records, "AB", "novelty"), 0.0);
  EXPECT_EQ(value(r.records, "AC", "novelty"), 1.0);
  EXPECT_EQ(r.partition.community_count, 2);
}

TEST(Foster, BoundedAndDeterministic) {
  auto corpus = small_corpus(24, 300, 16);
  CorpusStore store(corpus.documents);
  auto a = foster_bridging(store, {EntityKind::Keywords, 2006, 1.0, 3, 1});
  auto b = foster_bridging(store, {EntityKind::Keywords, 2006, 1.0, 3, 4});
  EXPECT_EQ(a.records, b.records);
  for (const auto& r : a.records) {
    const double v = value(a.records, r.doc_id, "novelty");
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Wang, HandCosineContribution) {
  auto store = store_of({journals("b1", 2000, {"A", "B"}), journals("b2", 2000, {"A", "B"}), journals("b3", 2000, {"A", "D"}),
                         journals("b4", 2000, {"C", "D"}), journals("FP", 2001, {"A", "C"}),
                         journals("F1", 2002, {"A", "C"})});
  WangParams p;
  p.year = 2001;
  auto r = wang_novelty(store, p);
  EXPECT_NEAR(value(r.records, "FP", "novelty"), 1.0 - 1.0 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(value(r.records, "FP", "novelty"), 0.5528, 1e-4);
  EXPECT_EQ(r.new_edge_count, 1u);
  EXPECT_FALSE(r.warnings.empty());  // window runs past the corpus span
}

TEST(Wang, ExclusionRules) {
  // (A,B) existed before t; (A,C) is new but never reused.
  auto store = store_of({journals("old", 2000, {"A", "B"}), journals("FP", 2001, {"A", "B"}),
                         journals("FQ", 2001, {"A", "C"}), journals("later", 2002, {"B", "D"})});
  WangParams p;
  p.year = 2001;
  auto r = wang_novelty(store, p);
  EXPECT_EQ(value(r.records, "FP", "novelty"), 0.0);
  EXPECT_EQ(value(r.records, "FQ", "novelty"), 0.0);
  EXPECT_EQ(r.new_edge_count, 0u);
}

TEST(Wang, ZeroProfileCountsAsUnfamiliar) {
  auto store = store_of({journals("b", 2000, {"X", "Y"}), journals("FP", 2001, {"A", "C"}), journals("F", 2002, {"A", "C"})});
  WangParams p;
  p.year = 2001;
  EXPECT_EQ(value(wang_novelty(store, p).records, "FP", "novelty"), 1.0);
}

TEST(Wang, WindowOutOfRange) {
  auto store = store_of({journals("FP", 2001, {"A", "C"}), journals("F", 2002, {"A", "C"})});
  WangParams p;
  p.year = 2001;
  try {
    wang_novelty(store, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowOutOfRange);
  }
}

TEST(Wang, MonotoneInForwardWindow) {
  auto corpus = small_corpus(25, 400, 20);
  CorpusStore store(corpus.documents);
  WangParams p;
  p.kind = EntityKind::Keywords;
  p.year = 2003;
  p.reuse = 2;
  std::vector<double> prev;
  for (int f = 1; f <= 4; ++f) {
    p.forward = f;
    auto r = wang_novelty(store, p);
    std::vector<double> cur;
    for (const auto& rec : r.records) {
      cur.push_back(value(r.records, rec.doc_id, "novelty"));
      EXPECT_GE(cur.back(), 0.0);
    }
    if (!prev.empty()) {
      ASSERT_EQ(prev.size(), cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i) EXPECT_GE(cur[i], prev[i]);
    }
    prev = cur;
  }
}
