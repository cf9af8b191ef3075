#include "bibnov/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "bibnov/errors.hpp"
#include "bibnov/parallel.hpp"

namespace bibnov {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::size_t ResamplePlan::occurrence_count() const {
  std::size_t n = 0;
  for (const auto& s : strata) n += s.labels.size();
  return n;
}

ResamplePlan build_plan(const DocumentView& docs, EntityKind kind, std::uint32_t samples, std::uint64_t master_seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
  if (docs.empty()) throw Error(ErrorCode::NoDocuments, "no documents for resampling plan");

  ResamplePlan plan;
  plan.focal_year = docs.front()->year;
  plan.kind = kind;
  plan.sample_count = samples;
  plan.master_seed = master_seed;

  for (const auto* d : docs) {
    auto e = document_entities(*d, kind);
    plan.entities.insert(plan.entities.end(), e.begin(), e.end());
  }
  std::sort(plan.entities.begin(), plan.entities.end());
  plan.entities.erase(std::unique(plan.entities.begin(), plan.entities.end()), plan.entities.end());
  std::unordered_map<std::string_view, NodeIndex> index;
  for (NodeIndex i = 0; i < static_cast<NodeIndex>(plan.entities.size()); ++i) index.emplace(plan.entities[i], i);

  std::map<int, Stratum> strata;
  for (std::uint32_t slot = 0; slot < docs.size(); ++slot) {
    const auto* d = docs[slot];
    plan.doc_ids.push_back(d->id);
    auto add = [&](int year, const std::string& entity) {
      auto& s = strata[year];
      s.year = year;
      s.slots.push_back(slot);
      s.labels.push_back(index.at(entity));
    };
    if (kind == EntityKind::Journals) {
      for (const auto& r : d->references)
        if (r.source) add(r.year.value_or(kUndatedStratum), *r.source);
    } else {
      for (const auto& k : d->keywords) add(kUndatedStratum, k);
    }
  }
  for (auto& [year, s] : strata) plan.strata.push_back(std::move(s));
  return plan;
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint32_t sample_index, int stratum_year) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(sample_index));
  h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(stratum_year)));
  return h;
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

SampleAssignment draw_sample(const ResamplePlan& plan, std::uint32_t sample_index) {
  if (sample_index >= plan.sample_count) throw Error(ErrorCode::InvalidArgument, "sample index out of range");
  SampleAssignment out(plan.doc_ids.size());
  std::vector<NodeIndex> labels;
  for (const auto& s : plan.strata) {
    labels = s.labels;
    std::mt19937_64 rng(stream_seed(plan.master_seed, sample_index, s.year));
    for (std::size_t k = labels.size(); k > 1; --k) {
      auto pick = bounded_draw(rng, k);
      std::swap(labels[k - 1], labels[pick]);
    }
    for (std::size_t p = 0; p < labels.size(); ++p) out[s.slots[p]].push_back(labels[p]);
  }
  return out;
}

EdgeStats::EdgeStats(std::uint32_t samples, std::vector<EdgeMoments> edges)
    : samples_(samples), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second) < std::tie(b.first, b.second);
  });
}

const EdgeMoments* EdgeStats::find(NodeIndex i, NodeIndex j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{i, j}, [](const EdgeMoments& e, const auto& p) {
    return std::tie(e.first, e.second) < std::tie(p.first, p.second);
  });
  if (it == edges_.end() || it->first != i || it->second != j) return nullptr;
  return &*it;
}

EdgeStats resample_stats(const ResamplePlan& plan, const CoocGraph& observed, int threads) {
  if (plan.entities != observed.nodes())
    throw Error(ErrorCode::InvalidArgument, "plan and graph were built from different documents");
  const std::uint32_t s = plan.sample_count;

  struct Accum {
    Weight sum = 0;
    Weight sum_sq = 0;
  };
  unsigned workers = std::min<unsigned>(resolve_threads(threads), s);
  std::vector<std::unordered_map<std::uint64_t, Accum>> partial(workers);

  // Integer accumulation keeps the merge exact, hence order independent.
  parallel_blocks(s, static_cast<int>(workers), [&](std::size_t begin, std::size_t end, unsigned w) {
    auto& acc = partial[w];
    std::vector<std::uint64_t> keys;
    for (std::size_t k = begin; k < end; ++k) {
      auto sample = draw_sample(plan, static_cast<std::uint32_t>(k));
      keys.clear();
      for (auto& labels : sample) {
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        for (std::size_t a = 0; a < labels.size(); ++a)
          for (std::size_t b = a + 1; b < labels.size(); ++b) keys.push_back(pair_key(labels[a], labels[b]));
      }
      std::sort(keys.begin(), keys.end());
      for (std::size_t a = 0; a < keys.size();) {
        std::size_t b = a;
        while (b < keys.size() && keys[b] == keys[a]) ++b;
        const auto w_k = static_cast<Weight>(b - a);
        auto& e = acc[keys[a]];
        e.sum += w_k;
        e.sum_sq += w_k * w_k;
        a = b;
      }
    }
  });

  std::unordered_map<std::uint64_t, Accum> total = std::move(partial[0]);
  for (std::size_t w = 1; w < partial.size(); ++w)
    for (const auto& [key, a] : partial[w]) {
      auto& t = total[key];
      t.sum += a.sum;
      t.sum_sq += a.sum_sq;
    }
  observed.for_each_edge([&](NodeIndex i, NodeIndex j, Weight) { total.try_emplace(pair_key(i, j)); });

  std::vector<EdgeMoments> edges;
  edges.reserve(total.size());
  const auto sd = static_cast<double>(s);
  for (const auto& [key, a] : total) {
    EdgeMoments m;
    m.first = key_first(key);
    m.second = key_second(key);
    m.observed = observed.weight(m.first, m.second);
    m.sample_sum = a.sum;
    m.sample_sum_squares = a.sum_sq;
    m.mean = static_cast<double>(a.sum) / sd;
    // s * sum_sq - sum^2 is an exact integer, zero iff every sample agrees.
    const Weight numerator = static_cast<Weight>(s) * a.sum_sq - a.sum * a.sum;
    m.std = std::sqrt(static_cast<double>(numerator)) / sd;
    edges.push_back(m);
  }
  return EdgeStats(s, std::move(edges));
}

}  // namespace bibnov
