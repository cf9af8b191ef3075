#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bibnov/corpus.hpp"
#include "bibnov/graph.hpp"
#include "bibnov/louvain.hpp"
#include "bibnov/resampling.hpp"
#include "bibnov/score.hpp"

namespace bibnov {

struct EdgeValue {
  NodeIndex first = 0;
  NodeIndex second = 0;
  double value = 0.0;
};

struct ZScoreTable {
  int year = 0;
  std::uint32_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> nodes;
  std::vector<EdgeValue> z;  // observed edges with a finite z, sorted
  std::vector<std::pair<NodeIndex, NodeIndex>> degenerate;  // std = 0, obs != mean
};

struct UzziParams {
  EntityKind kind = EntityKind::Journals;
  int year = 0;
  std::uint32_t samples = 20;
  std::uint64_t seed = 0;
  int threads = 1;

  std::string fingerprint() const;
};

struct UzziResult {
  ZScoreTable table;
  EdgeStats stats;
  std::vector<ScoreRecord> records;
};

/// z = (w_t - mean) / std per observed edge. std = 0 gives z = 0 when the
/// observation equals the mean and otherwise drops the edge from document
/// distributions (counted in the "degenerate_pairs" diagnostic).
/// Scores: novelty = P10(Z_FP), conventionality = P50(Z_FP).
UzziResult uzzi_scores(const CorpusStore& store, const UzziParams& params);

struct CommonnessTable {
  int year = 0;
  std::vector<std::string> nodes;
  std::vector<EdgeValue> commonness;  // sorted
};

struct LeeResult {
  CommonnessTable table;
  std::vector<ScoreRecord> records;
};

/// Commonness = w_t N_t / (k_i k_j); document score -ln(P10(C_FP)).
LeeResult lee_commonness(const CorpusStore& store, EntityKind kind, int year, int threads = 1);

struct FosterParams {
  EntityKind kind = EntityKind::Journals;
  int year = 0;
  double resolution = 1.0;
  std::uint64_t seed = 0;
  int threads = 1;

  std::string fingerprint() const;
};

struct FosterResult {
  CommunityPartition partition;
  std::vector<std::string> nodes;
  std::vector<ScoreRecord> records;
};

/// Fraction of a document's pairs that span two communities of the
/// cumulative (years <= t) graph.
FosterResult foster_bridging(const CorpusStore& store, const FosterParams& params);

struct WangParams {
  EntityKind kind = EntityKind::Journals;
  int year = 0;
  int backward = 3;
  int forward = 3;
  Weight reuse = 1;
  int threads = 1;

  std::string fingerprint() const;
};

struct WangResult {
  std::size_t new_edge_count = 0;  // |E_N|
  std::vector<std::string> warnings;
  std::vector<ScoreRecord> records;
};

/// Sum of (1 - cosine of backward-window co-occurrence profiles) over the
/// document's pairs that are new at t (absent from every earlier year) and
/// reused at least `reuse` times in t+1..t+forward. An all-zero profile
/// counts as cosine 0.
WangResult wang_novelty(const CorpusStore& store, const WangParams& params);

}  // namespace bibnov
