#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bibnov/corpus.hpp"
#include "bibnov/graph.hpp"
#include "bibnov/semantic.hpp"

namespace bibnov::oracle {

// Naive dense transcriptions of every indicator, used to cross-check the
// engine on small corpora. Apart from the resampling draw in Sample mode, no
// engine code below the corpus parser is used here.

enum class UzziMode { Auto, Enumerate, Sample };

struct Params {
  EntityKind kind = EntityKind::Journals;
  int year = 0;
  std::uint32_t samples = 20;
  std::uint64_t seed = 0;
  UzziMode uzzi_mode = UzziMode::Auto;
  std::uint64_t enumeration_limit = 1'000'000;
  double resolution = 1.0;
  int backward = 3;
  int forward = 3;
  std::int64_t reuse = 1;
  const EmbeddingStore* embeddings = nullptr;
  TextField field = TextField::Title;
  double q = 10.0;
  std::vector<int> l_values{1, 5};
  std::size_t size_guard = 500;
};

using ScoreMap = std::map<std::string, std::optional<double>>;

struct Result {
  std::string indicator;
  std::map<std::string, ScoreMap> scores;  // doc id -> score name -> value
  std::map<std::string, double> edge_values;  // "a|b" -> z / commonness / contribution
  std::map<std::string, std::map<std::string, double>> cardinalities;  // doc id -> set sizes
};

/// indicator: uzzi | lee | foster | wang | shibayama | disruption.
Result score(std::string_view indicator, const CorpusStore& store, const Params& params);

std::string edge_label(const std::string& a, const std::string& b);

struct ExactEdgeMoments {
  double mean = 0.0;
  double std = 0.0;
  double fourth_central = 0.0;
};

struct ExactUzzi {
  std::uint64_t arrangements = 0;
  std::map<std::string, Weight> observed;          // edge label -> w_t
  std::map<std::string, ExactEdgeMoments> moments;  // every edge reachable by some arrangement
};

/// Number of distinct label arrangements of the year's strata, saturating
/// at UINT64_MAX.
std::uint64_t arrangement_count(const CorpusStore& store, EntityKind kind, int year);

/// Exact per-edge moments over every distinct arrangement. Throws
/// CorpusTooLarge beyond `limit` arrangements.
ExactUzzi exact_uzzi(const CorpusStore& store, EntityKind kind, int year, std::uint64_t limit = 1'000'000);

/// Dense multi-level Louvain with the engine's move rules. `adjacency` is
/// symmetric; diagonal entries are self-loop weights.
std::vector<std::int32_t> louvain(const Eigen::MatrixXd& adjacency, double resolution);

double dense_modularity(const Eigen::MatrixXd& adjacency, const std::vector<std::int32_t>& community,
                        double resolution);

/// Maximum modularity over every set partition (restricted growth strings).
/// Feasible up to about 10 nodes.
std::pair<double, std::vector<std::int32_t>> best_partition(const Eigen::MatrixXd& adjacency, double resolution);

double percentile(std::vector<double> values, double q);

}  // namespace bibnov::oracle
