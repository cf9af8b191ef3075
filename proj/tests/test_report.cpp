#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "bibnov/bench.hpp"
#include "bibnov/errors.hpp"
#include "bibnov/novelty.hpp"
#include "bibnov/report.hpp"
#include "bibnov/scorefile.hpp"
#include "bibnov/synth.hpp"
#include "bibnov/text.hpp"
#include "fixtures.hpp"

using namespace bibnov;
using namespace bibnov::test;

namespace {

ScoreRecord rec(std::string id, std::string indicator, int year, std::optional<double> v,
                std::string name = "novelty") {
  ScoreRecord r;
  r.doc_id = std::move(id);
  r.indicator = std::move(indicator);
  r.entity = "journals";
  r.year = year;
  r.scores = {{std::move(name), v}};
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ScoreFile, RoundTripWithNullsAndManifest) {
  TempDir dir;
  auto a = rec("d1", "lee", 2000, 0.25);
  a.percentiles = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  a.distribution = {0.1, 0.2};
  a.diagnostics = {{"pair_count", 2}};
  auto b = rec("d2", "lee", 2000, std::nullopt);
  write_score_file(dir.file("s.jsonl"), {a, b});
  auto back = read_score_file(dir.file("s.jsonl"));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], a);
  EXPECT_EQ(back[1], b);
  EXPECT_EQ(to_json_line(back[0]), to_json_line(a));

  RunManifest m;
  m.command_line = "bibnov novelty lee";
  m.fingerprint = "x";
  m.input_digests = {{"c.jsonl", "00ff"}};
  m.seed = 9;
  m.threads = 3;
  m.phase_seconds = {{"load", 0.5}};
  write_manifest(dir.file("s.jsonl"), m);
  auto mb = read_manifest(dir.file("s.jsonl"));
  EXPECT_EQ(mb.fingerprint, "x");
  EXPECT_EQ(mb.seed, 9u);
  EXPECT_EQ(mb.input_digests, m.input_digests);
  EXPECT_EQ(score_file_name("uzzi", "journals", 2004), "uzzi_journals_2004.jsonl");
}

TEST(Trends, Shapes) {
  ScoreSet one{"a", {rec("d1", "lee", 2000, 1.0), rec("d2", "lee", 2000, 3.0)}};
  auto rows = report_trends({one});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].mean, 2.0);
  EXPECT_EQ(rows[0].count, 2u);

  ScoreSet flat{"b", {rec("d1", "lee", 2000, 5.0), rec("d2", "lee", 2000, 5.0), rec("d3", "lee", 2000, std::nullopt)}};
  auto f = report_trends({flat});
  EXPECT_EQ(f[0].std, 0.0);
  EXPECT_EQ(f[0].undefined, 1u);

  ScoreSet four{"c",
                {rec("d1", "lee", 2000, 1.0), rec("d2", "lee", 2001, 1.0), rec("d3", "foster", 2000, 0.5),
                 rec("d4", "foster", 2001, 0.5)}};
  EXPECT_EQ(report_trends({four}).size(), 4u);
  EXPECT_NE(trends_csv(report_trends({four})).find("foster,journals,2000,novelty,1,0,"), std::string::npos);

  try {
    report_trends({ScoreSet{"empty", {rec("d", "lee", 2000, std::nullopt)}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoScores);
  }
}

TEST(Correlation, SelfNegationAndOverlap) {
  auto corpus = small_corpus(61, 300, 12);
  auto lee = lee_commonness(CorpusStore(corpus.documents), EntityKind::Journals, 2005);
  ScoreSet set{"lee", lee.records};
  ScoreSet neg{"neg", lee.records};
  for (auto& r : neg.records)
    for (auto& s : r.scores)
      if (s.value) s.value = -*s.value;
  auto m = report_correlation({series_from(set), series_from(set), series_from(neg)});
  EXPECT_EQ(*m.pearson[0][1], 1.0);
  EXPECT_EQ(*m.pearson[0][2], -1.0);
  EXPECT_EQ(*m.spearman[0][2], -1.0);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(*m.pearson[i][i], 1.0);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m.pearson[i][j], m.pearson[j][i]);
  }

  ScoreSet left{"l", {rec("a", "x", 2000, 1), rec("b", "x", 2000, 2), rec("c", "x", 2000, 3)}};
  ScoreSet right{"r", {rec("b", "y", 2000, 5), rec("c", "y", 2000, 9), rec("d", "y", 2000, 1)}};
  auto lr = report_correlation({series_from(left), series_from(right)});
  EXPECT_EQ(lr.overlap[0][1], 2u);
  EXPECT_EQ(*lr.pearson[0][1], 1.0);

  ScoreSet disjoint{"d", {rec("z", "y", 2000, 1)}};
  try {
    report_correlation({series_from(left), series_from(disjoint)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoOverlap);
  }
}

TEST(Correlation, IndependentRandomScores) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 1);
  ScoreSet a{"a", {}}, b{"b", {}};
  for (int i = 0; i < 10000; ++i) {
    a.records.push_back(rec("d" + std::to_string(i), "x", 2000, u(rng)));
    b.records.push_back(rec("d" + std::to_string(i), "y", 2000, u(rng)));
  }
  auto m = report_correlation({series_from(a), series_from(b)});
  EXPECT_LT(std::abs(*m.pearson[0][1]), 0.05);
  EXPECT_LT(std::abs(*m.spearman[0][1]), 0.05);
}

TEST(DocReport, Blocks) {
  auto lee = lee_commonness(store_of({journals("P", 2000, {"A", "B", "C"}), journals("Q", 2000, {"A", "B"})}),
                            EntityKind::Journals, 2000);
  ScoreSet set{"lee", lee.records};
  auto blocks = report_doc("P", {set});
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].distribution.size(), 3u);
  ScoreSet other{"f", {rec("P", "foster", 2000, 0.5)}};
  EXPECT_EQ(report_doc("P", {set, other}).size(), 2u);
  auto csv = doc_csv("P", report_doc("P", {set}));
  EXPECT_NE(csv.find("P,lee,journals,2000,distribution,2,"), std::string::npos);
  try {
    report_doc("absent", {set});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownDocument);
  }
}

TEST(Synth, DeterministicFiles) {
  TempDir dir;
  SynthParams p;
  p.n_docs = 100;
  p.seed = 1;
  write_synth(synth_corpus(p), dir.file("a"));
  write_synth(synth_corpus(p), dir.file("b"));
  EXPECT_EQ(slurp(dir.file("a.jsonl")), slurp(dir.file("b.jsonl")));
  EXPECT_EQ(slurp(dir.file("a.embeddings.jsonl")), slurp(dir.file("b.embeddings.jsonl")));
  EXPECT_EQ(slurp(dir.file("a.truth.csv")), slurp(dir.file("b.truth.csv")));
  p.seed = 2;
  write_synth(synth_corpus(p), dir.file("c"));
  EXPECT_NE(slurp(dir.file("a.jsonl")), slurp(dir.file("c.jsonl")));
  auto store = load_corpus(dir.file("a.jsonl"));
  EXPECT_EQ(store.size(), 100u);
}

TEST(Synth, SingleYearHasNoCitations) {
  SynthParams p;
  p.n_docs = 200;
  p.year_lo = p.year_hi = 2000;
  auto corpus = synth_corpus(p);
  for (const auto& d : corpus.documents) EXPECT_EQ(d.year, 2000);
  EXPECT_EQ(build_citation_graph(CorpusStore(corpus.documents)).edge_count(), 0u);
}

TEST(Synth, CitationsPointBackwards) {
  auto corpus = small_corpus(62, 300);
  CorpusStore store(corpus.documents);
  auto g = build_citation_graph(store);
  EXPECT_GT(g.edge_count(), 0u);
  for (std::uint32_t d = 0; d < g.node_count(); ++d)
    for (auto r : g.references(d)) EXPECT_LT(store[r].year, store[d].year);
}

TEST(Synth, TwoEntitiesGiveUnitCommonness) {
  SynthParams p;
  p.n_docs = 100;
  p.n_entities = 2;
  p.mean_refs = 6;
  auto corpus = synth_corpus(p);
  auto lee = lee_commonness(CorpusStore(corpus.documents), EntityKind::Journals, 2005);
  ASSERT_EQ(lee.table.commonness.size(), 1u);
  EXPECT_EQ(lee.table.commonness[0].value, 1.0);
  for (const auto& r : lee.records) EXPECT_EQ(**r.score("commonness"), 0.0);
}

TEST(Synth, InvalidParams) {
  SynthParams p;
  p.n_docs = 0;
  EXPECT_THROW(synth_corpus(p), Error);
  p.n_docs = 10;
  p.year_lo = 2001;
  p.year_hi = 2000;
  EXPECT_THROW(synth_corpus(p), Error);
}

TEST(Bench, RowsAndWorkload) {
  BenchParams p;
  p.sizes = {100, 1000};
  p.indicators = {"lee"};
  auto r = run_bench(p);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_LE(r.rows[0].size, r.rows[1].size);
  EXPECT_FALSE(r.rows[0].manifest.empty());

  p.indicators = {};
  EXPECT_TRUE(run_bench(p).rows.empty());

  p.sizes = {2000};
  p.indicators = {"uzzi:1", "uzzi:20"};
  auto u = run_bench(p);
  ASSERT_EQ(u.rows.size(), 2u);
  EXPECT_GE(u.rows[1].seconds, u.rows[0].seconds);

  p.sizes = {1000, 100};
  EXPECT_THROW(run_bench(p), Error);
}

TEST(Bench, ScoresMatchDirectRuns) {
  SynthParams sp;
  sp.n_docs = 500;
  sp.seed = 4;
  auto corpus = synth_corpus(sp);
  CorpusStore store(corpus.documents, Provenance{0, sp.fingerprint()});
  const auto direct = lee_commonness(store, EntityKind::Journals, bench_year(sp)).records.size();
  BenchParams p;
  p.sizes = {500};
  p.indicators = {"lee"};
  p.seed = 4;
  EXPECT_EQ(run_bench(p).rows[0].records, direct);
}
