#include <gtest/gtest.h>

#include <algorithm>

#include "bibnov/corpus.hpp"
#include "bibnov/errors.hpp"
#include "bibnov/text.hpp"
#include "fixtures.hpp"

using namespace bibnov;
using namespace bibnov::test;

namespace {

ErrorCode code_of(const std::string& line) {
  try {
    parse_document(line);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << line;
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ParseDocument, SchemaIdentity) {
  auto d = parse_document(R"({"id":"p1","year":2004,"references":[{"source":"J-A","year":2001}],"keywords":["k1"]})");
  EXPECT_EQ(d.id, "p1");
  EXPECT_EQ(d.year, 2004);
  ASSERT_EQ(d.references.size(), 1u);
  EXPECT_EQ(d.references[0].source, "j-a");
  EXPECT_EQ(d.references[0].year, 2001);
  EXPECT_EQ(d.keywords, std::vector<std::string>{"k1"});
}

TEST(ParseDocument, ValidationErrors) {
  EXPECT_EQ(code_of(R"({"id":"p2","references":[{"source":"A"}]})"), ErrorCode::MissingField);
  EXPECT_EQ(code_of(R"({"year":2001,"keywords":["a"]})"), ErrorCode::MissingField);
  EXPECT_EQ(code_of(R"({"id":"p2","year":"2001","keywords":["a"]})"), ErrorCode::MalformedYear);
  EXPECT_EQ(code_of(R"({"id":"p3","year":2004,"references":[],"keywords":[]})"), ErrorCode::EmptyRecord);
  EXPECT_EQ(code_of("not json"), ErrorCode::MalformedRecord);
}

TEST(ParseDocument, NormalizesLabels) {
  auto d = parse_document(R"({"id":"x","year":2000,"references":[{"source":"  Nature   Physics "}],"keywords":["Deep  Learning","deep learning"," AI"]})");
  EXPECT_EQ(d.references[0].source, "nature physics");
  EXPECT_EQ(d.keywords, (std::vector<std::string>{"deep learning", "ai"}));
  IngestOptions keep_case;
  keep_case.case_fold = false;
  auto e = parse_document(R"({"id":"x","year":2000,"keywords":["Mixed Case"]})", keep_case);
  EXPECT_EQ(e.keywords[0], "Mixed Case");
}

TEST(ParseDocument, ClampsFutureReferenceYears) {
  IngestReport rep;
  auto d = parse_document(
      R"({"id":"x","year":2000,"references":[{"source":"a","year":2001},{"source":"b","year":2005}]})", {}, &rep);
  EXPECT_EQ(d.references[0].year, 2001);  // in press
  EXPECT_EQ(d.references[1].year, 2000);
  EXPECT_EQ(rep.warnings, 1u);
}

TEST(LoadCorpus, FilterAndDuplicates) {
  TempDir dir;
  const auto path = dir.file("c.jsonl");
  write_lines(path, {R"({"id":"a","year":2000,"keywords":["k"]})", R"({"id":"b","year":2001,"keywords":["k"]})",
                     R"({"id":"c","year":2002,"keywords":["k"]})"});
  EXPECT_EQ(load_corpus(path).size(), 3u);
  IngestOptions only2000;
  only2000.year_range = YearRange{2000, 2000};
  EXPECT_EQ(load_corpus(path, only2000).size(), 1u);

  write_lines(path, {R"({"id":"a","year":2000,"keywords":["first"]})", R"({"id":"a","year":2001,"keywords":["second"]})"});
  IngestReport rep;
  auto store = load_corpus(path, {}, &rep);
  ASSERT_EQ(store.size(), 1u);
  EXPECT_EQ(store[0].keywords[0], "second");
  EXPECT_EQ(rep.duplicates, 1u);
  EXPECT_EQ(rep.warnings, 1u);
}

TEST(LoadCorpus, SkipsBadLinesAndFailsWhenNothingRemains) {
  TempDir dir;
  const auto path = dir.file("c.jsonl");
  write_lines(path, {R"({"id":"a","year":2000,"keywords":["k"]})", "garbage", R"({"id":"b"})"});
  IngestReport rep;
  EXPECT_EQ(load_corpus(path, {}, &rep).size(), 1u);
  EXPECT_EQ(rep.skipped, 2u);

  write_lines(path, {"garbage"});
  try {
    load_corpus(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoValidRecords);
  }
  try {
    load_corpus(dir.file("missing.jsonl"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoFailure);
  }
}

TEST(CorpusStore, YearOrderingContract) {
  auto store = store_of({doc("pB", 2004, {src("a")}), doc("pA", 2004, {src("a")}), doc("p1", 2005, {src("a")})});
  auto y = store.docs_in_year(2004);
  ASSERT_EQ(y.size(), 2u);
  EXPECT_EQ(y[0]->id, "pA");
  EXPECT_EQ(y[1]->id, "pB");
  EXPECT_TRUE(store.docs_in_year(1990).empty());
  EXPECT_EQ(store.span(), (YearRange{2004, 2005}));
}

TEST(CorpusStore, YearIndexPartitionsDocuments) {
  auto corpus = small_corpus(4);
  CorpusStore store(corpus.documents);
  std::size_t total = 0;
  std::vector<int> seen(store.size(), 0);
  for (const auto& [year, ids] : store.year_index()) {
    total += ids.size();
    for (auto i : ids) {
      EXPECT_EQ(store[i].year, year);
      ++seen[i];
    }
  }
  EXPECT_EQ(total, store.size());
  EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
}

TEST(CorpusCache, RoundTripAndInvalidation) {
  TempDir dir;
  const auto path = dir.file("c.jsonl");
  auto corpus = small_corpus(9, 80);
  corpus.documents[3].references.push_back({std::nullopt, "undated journal", std::nullopt});
  write_corpus(corpus.documents, path);

  bool hit = true;
  auto first = load_corpus_cached(path, {}, nullptr, &hit);
  EXPECT_FALSE(hit);
  auto second = load_corpus_cached(path, {}, nullptr, &hit);
  EXPECT_TRUE(hit);
  EXPECT_EQ(first, second);
  EXPECT_EQ(first, load_corpus(path));

  IngestOptions other;
  other.year_range = YearRange{2001, 2003};
  load_corpus_cached(path, other, nullptr, &hit);
  EXPECT_FALSE(hit);  // different options

  write_lines(path, {R"({"id":"z","year":2000,"keywords":["k"]})"});
  auto changed = load_corpus_cached(path, {}, nullptr, &hit);
  EXPECT_FALSE(hit);  // different digest
  EXPECT_EQ(changed.size(), 1u);
}

TEST(CorpusIo, JsonLinesRoundTrip) {
  TempDir dir;
  auto corpus = small_corpus(2, 50);
  write_corpus(corpus.documents, dir.file("a.jsonl"));
  auto store = load_corpus(dir.file("a.jsonl"));
  ASSERT_EQ(store.size(), corpus.documents.size());
  for (std::size_t i = 0; i < store.size(); ++i) EXPECT_EQ(store[i], corpus.documents[i]);
}

TEST(Text, NormalizeAndDigest) {
  EXPECT_EQ(normalize_label("  A \t B  "), "a b");
  EXPECT_EQ(normalize_label(""), "");
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(hex64(255), "00000000000000ff");
}
