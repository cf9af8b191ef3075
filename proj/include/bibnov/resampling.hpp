#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "bibnov/corpus.hpp"
#include "bibnov/graph.hpp"

namespace bibnov {

/// Stratum year used for references without a publication year.
inline constexpr int kUndatedStratum = std::numeric_limits<int>::min();

/// Reference occurrences sharing one publication year. Position p pairs the
/// document slot `slots[p]` with the entity `labels[p]`.
struct Stratum {
  int year = kUndatedStratum;
  std::vector<std::uint32_t> slots;
  std::vector<NodeIndex> labels;

  bool undated() const { return year == kUndatedStratum; }
};

/// Shuffle plan for one focal year. Entities are indexed in lexicographic
/// order, which matches the year's CoocGraph built from the same documents.
/// Keywords carry no year, so keyword plans have a single undated stratum.
struct ResamplePlan {
  int focal_year = 0;
  EntityKind kind = EntityKind::Journals;
  std::uint32_t sample_count = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::string> doc_ids;
  std::vector<std::string> entities;
  std::vector<Stratum> strata;  // ascending year, undated first

  std::size_t occurrence_count() const;
};

ResamplePlan build_plan(const DocumentView& docs, EntityKind kind, std::uint32_t samples, std::uint64_t master_seed);

/// Seed of the stream that permutes one stratum in one sample.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint32_t sample_index, int stratum_year);

/// Uniform integer in [0, bound) without modulo bias.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

/// Per document slot, the entity labels it holds after shuffling (not
/// deduplicated; one label per reference occurrence, grouped by stratum).
using SampleAssignment = std::vector<std::vector<NodeIndex>>;

SampleAssignment draw_sample(const ResamplePlan& plan, std::uint32_t sample_index);

struct EdgeMoments {
  NodeIndex first = 0;
  NodeIndex second = 0;
  Weight observed = 0;
  Weight sample_sum = 0;
  Weight sample_sum_squares = 0;
  double mean = 0.0;
  double std = 0.0;  // population std across samples
};

class EdgeStats {
 public:
  EdgeStats() = default;
  EdgeStats(std::uint32_t samples, std::vector<EdgeMoments> edges);

  std::uint32_t sample_count() const { return samples_; }
  const std::vector<EdgeMoments>& edges() const { return edges_; }
  const EdgeMoments* find(NodeIndex i, NodeIndex j) const;

 private:
  std::uint32_t samples_ = 0;
  std::vector<EdgeMoments> edges_;  // sorted by (first, second)
};

/// Mean and population std of each edge weight over the plan's samples, for
/// the union of observed and sampled edges. Identical for any thread count.
EdgeStats resample_stats(const ResamplePlan& plan, const CoocGraph& observed, int threads = 1);

}  // namespace bibnov
