#include "bibnov/novelty.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "bibnov/errors.hpp"
#include "bibnov/parallel.hpp"
#include "bibnov/stats.hpp"

namespace bibnov {

namespace {

DocumentView focal_documents(const CorpusStore& store, int year) {
  auto docs = store.docs_in_year(year);
  if (docs.empty()) throw Error(ErrorCode::NoDocuments, "no documents in year " + std::to_string(year));
  return docs;
}

template <typename F>
std::vector<ScoreRecord> score_documents(const DocumentView& docs, int threads, F&& score_one) {
  std::vector<std::optional<ScoreRecord>> slots(docs.size());
  parallel_for(docs.size(), threads, [&](std::size_t d) { slots[d] = score_one(*docs[d]); });
  std::vector<ScoreRecord> out;
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

ScoreRecord make_record(const DocumentRecord& doc, std::string indicator, EntityKind kind, int year,
                        std::string params) {
  ScoreRecord r;
  r.doc_id = doc.id;
  r.indicator = std::move(indicator);
  r.entity = std::string(to_string(kind));
  r.year = year;
  r.params = std::move(params);
  return r;
}

std::vector<std::uint64_t> document_pairs(const DocumentRecord& doc, const CoocGraph& graph) {
  auto ids = entity_indices(doc, graph);
  std::vector<std::uint64_t> keys;
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b) keys.push_back(pair_key(ids[a], ids[b]));
  return keys;
}

}  // namespace

std::string UzziParams::fingerprint() const {
  return "samples=" + std::to_string(samples) + ";seed=" + std::to_string(seed);
}

UzziResult uzzi_scores(const CorpusStore& store, const UzziParams& params) {
  auto docs = focal_documents(store, params.year);
  auto graph = build_cooc_graph(docs, params.kind, params.threads);
  if (graph.edge_count() == 0)
    throw Error(ErrorCode::NoDocuments, "no document with two distinct entities in year " + std::to_string(params.year));
  auto plan = build_plan(docs, params.kind, params.samples, params.seed);

  UzziResult result;
  result.stats = resample_stats(plan, graph, params.threads);
  auto& table = result.table;
  table.year = params.year;
  table.samples = params.samples;
  table.seed = params.seed;
  table.nodes = graph.nodes();

  std::unordered_map<std::uint64_t, double> z_of;
  std::unordered_set<std::uint64_t> degenerate;
  graph.for_each_edge([&](NodeIndex i, NodeIndex j, Weight w) {
    const auto* m = result.stats.find(i, j);
    double z = 0.0;
    if (m->std > 0.0) {
      z = (static_cast<double>(w) - m->mean) / m->std;
    } else if (w * static_cast<Weight>(params.samples) != m->sample_sum) {
      degenerate.insert(pair_key(i, j));
      table.degenerate.emplace_back(i, j);
      return;
    }
    z_of.emplace(pair_key(i, j), z);
    table.z.push_back({i, j, z});
  });

  const auto fp = params.fingerprint();
  result.records = score_documents(docs, params.threads, [&](const DocumentRecord& doc) -> std::optional<ScoreRecord> {
    auto pairs = document_pairs(doc, graph);
    if (pairs.empty()) return std::nullopt;
    auto rec = make_record(doc, "uzzi", params.kind, params.year, fp);
    double skipped = 0;
    for (auto key : pairs) {
      if (degenerate.count(key)) {
        ++skipped;
        continue;
      }
      rec.distribution.push_back(z_of.at(key));
    }
    std::sort(rec.distribution.begin(), rec.distribution.end());
    if (rec.distribution.empty()) {
      rec.scores = {{"novelty", std::nullopt}, {"conventionality", std::nullopt}};
    } else {
      rec.scores = {{"novelty", percentile_sorted(rec.distribution, 10)},
                    {"conventionality", percentile_sorted(rec.distribution, 50)}};
      rec.percentiles = standard_percentiles(rec.distribution);
    }
    rec.diagnostics = {{"pair_count", static_cast<double>(pairs.size())}, {"degenerate_pairs", skipped}};
    return rec;
  });
  return result;
}

LeeResult lee_commonness(const CorpusStore& store, EntityKind kind, int year, int threads) {
  auto docs = focal_documents(store, year);
  auto graph = build_cooc_graph(docs, kind, threads);

  LeeResult result;
  result.table.year = year;
  result.table.nodes = graph.nodes();
  std::unordered_map<std::uint64_t, double> value_of;
  const auto n_t = static_cast<double>(graph.total_weight());
  const auto& k = graph.degrees();
  graph.for_each_edge([&](NodeIndex i, NodeIndex j, Weight w) {
    const double c = static_cast<double>(w) * n_t / (static_cast<double>(k[i]) * static_cast<double>(k[j]));
    result.table.commonness.push_back({i, j, c});
    value_of.emplace(pair_key(i, j), c);
  });

  result.records = score_documents(docs, threads, [&](const DocumentRecord& doc) -> std::optional<ScoreRecord> {
    auto pairs = document_pairs(doc, graph);
    if (pairs.empty()) return std::nullopt;
    auto rec = make_record(doc, "lee", kind, year, "");
    for (auto key : pairs) rec.distribution.push_back(value_of.at(key));
    std::sort(rec.distribution.begin(), rec.distribution.end());
    rec.scores = {{"commonness", -std::log(percentile_sorted(rec.distribution, 10))}};
    rec.percentiles = standard_percentiles(rec.distribution);
    rec.diagnostics = {{"pair_count", static_cast<double>(pairs.size())}};
    return rec;
  });
  return result;
}

std::string FosterParams::fingerprint() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "resolution=%.17g;seed=", resolution);
  return buf + std::to_string(seed);
}

FosterResult foster_bridging(const CorpusStore& store, const FosterParams& params) {
  auto docs = focal_documents(store, params.year);
  auto graph = cumulative_graph(store, params.kind, params.year, Bound::Inclusive, params.threads);

  FosterResult result;
  result.nodes = graph.nodes();
  if (graph.node_count() == 0) return result;
  result.partition = detect_communities(graph, params.resolution, params.seed);
  const auto& community = result.partition.community;

  const auto fp = params.fingerprint();
  result.records = score_documents(docs, params.threads, [&](const DocumentRecord& doc) -> std::optional<ScoreRecord> {
    auto pairs = document_pairs(doc, graph);
    if (pairs.empty()) return std::nullopt;
    auto rec = make_record(doc, "foster", params.kind, params.year, fp);
    std::size_t bridging = 0;
    for (auto key : pairs) {
      const bool across = community[key_first(key)] != community[key_second(key)];
      bridging += across ? 1 : 0;
      rec.distribution.push_back(across ? 1.0 : 0.0);
    }
    std::sort(rec.distribution.begin(), rec.distribution.end());
    rec.scores = {{"novelty", static_cast<double>(bridging) / static_cast<double>(pairs.size())}};
    rec.diagnostics = {{"pair_count", static_cast<double>(pairs.size())},
                       {"community_count", static_cast<double>(result.partition.community_count)}};
    return rec;
  });
  return result;
}

std::string WangParams::fingerprint() const {
  return "b=" + std::to_string(backward) + ";f=" + std::to_string(forward) + ";reuse=" + std::to_string(reuse);
}

WangResult wang_novelty(const CorpusStore& store, const WangParams& params) {
  if (params.backward < 1 || params.forward < 1 || params.reuse < 1)
    throw Error(ErrorCode::InvalidArgument, "wang windows and reuse threshold must be >= 1");
  auto docs = focal_documents(store, params.year);
  const int t = params.year;
  const auto span = *store.span();

  WangResult result;
  if (t - 1 < span.first || t + 1 > span.second)
    throw Error(ErrorCode::WindowOutOfRange, "corpus span " + std::to_string(span.first) + ":" +
                                                 std::to_string(span.second) + " leaves no " +
                                                 (t - 1 < span.first ? "backward" : "forward") + " window for " +
                                                 std::to_string(t));
  if (t - params.backward < span.first) result.warnings.push_back("backward window truncated by corpus start");
  if (t + params.forward > span.second) result.warnings.push_back("forward window truncated by corpus end");

  const auto g_t = build_cooc_graph(docs, params.kind, params.threads);
  const auto g_p = cumulative_graph(store, params.kind, t, Bound::Exclusive, params.threads);
  const auto g_f = window_graph(store, params.kind, t + 1, t + params.forward, params.threads);
  const auto g_b = window_graph(store, params.kind, t - params.backward, t - 1, params.threads);

  const auto& profile = g_b.weights();
  Eigen::VectorXd norms(static_cast<Eigen::Index>(g_b.node_count()));
  for (NodeIndex i = 0; i < static_cast<NodeIndex>(g_b.node_count()); ++i)
    norms[i] = std::sqrt(static_cast<double>(profile.row(i).squaredNorm()));

  auto cosine = [&](const std::string& a, const std::string& b) {
    auto ia = g_b.index_of(a), ib = g_b.index_of(b);
    if (!ia || !ib || norms[*ia] == 0.0 || norms[*ib] == 0.0) return 0.0;
    const auto dot = static_cast<double>(profile.row(*ia).dot(profile.row(*ib)));
    return dot / (norms[*ia] * norms[*ib]);
  };
  auto weight_in = [](const CoocGraph& g, const std::string& a, const std::string& b) -> Weight {
    auto ia = g.index_of(a), ib = g.index_of(b);
    return ia && ib ? g.weight(*ia, *ib) : 0;
  };

  std::unordered_map<std::uint64_t, double> contribution;
  const auto& names = g_t.nodes();
  g_t.for_each_edge([&](NodeIndex i, NodeIndex j, Weight) {
    if (weight_in(g_p, names[i], names[j]) > 0) return;
    if (weight_in(g_f, names[i], names[j]) < params.reuse) return;
    contribution.emplace(pair_key(i, j), 1.0 - cosine(names[i], names[j]));
  });
  result.new_edge_count = contribution.size();

  const auto fp = params.fingerprint();
  result.records = score_documents(docs, params.threads, [&](const DocumentRecord& doc) -> std::optional<ScoreRecord> {
    auto pairs = document_pairs(doc, g_t);
    if (pairs.empty()) return std::nullopt;
    auto rec = make_record(doc, "wang", params.kind, params.year, fp);
    double sum = 0.0;
    for (auto key : pairs) {
      auto it = contribution.find(key);
      if (it == contribution.end()) continue;
      sum += it->second;
      rec.distribution.push_back(it->second);
    }
    std::sort(rec.distribution.begin(), rec.distribution.end());
    rec.scores = {{"novelty", sum}};
    rec.diagnostics = {{"pair_count", static_cast<double>(pairs.size())},
                       {"new_pairs", static_cast<double>(rec.distribution.size())}};
    return rec;
  });
  return result;
}

}  // namespace bibnov
