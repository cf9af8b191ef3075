#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bibnov/corpus.hpp"
#include "bibnov/graph.hpp"
#include "bibnov/semantic.hpp"

namespace bibnov {

struct VerifyOptions {
  EntityKind kind = EntityKind::Journals;
  int year = 0;
  std::uint32_t samples = 20;
  std::uint64_t seed = 0;
  double resolution = 1.0;
  int backward = 3;
  int forward = 3;
  std::int64_t reuse = 1;
  const EmbeddingStore* embeddings = nullptr;
  TextField field = TextField::Title;
  double q = 10.0;
  int threads = 1;
  std::size_t size_guard = 500;
};

struct Mismatch {
  std::string doc_id;
  std::string score;
  std::optional<double> engine;
  std::optional<double> oracle;
  bool missing_in_engine = false;
  bool missing_in_oracle = false;
};

struct VerifyResult {
  std::string indicator;
  bool exact = false;  // integer-derived scores compared with ==
  std::size_t documents = 0;
  std::size_t values = 0;
  std::vector<Mismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Floating scores agree when |a - b| <= 1e-9 * max(1, |a|, |b|).
bool scores_agree(double a, double b, bool exact);

/// Runs one indicator through the engine and the oracle on the same corpus
/// and lists every per-document score that differs. Uzzi uses the oracle's
/// sampling mode with the same seed so both see identical draws.
VerifyResult verify_indicator(const std::string& indicator, const CorpusStore& store, const VerifyOptions& options);

std::string describe(const VerifyResult& result, std::size_t max_lines = 20);

}  // namespace bibnov
