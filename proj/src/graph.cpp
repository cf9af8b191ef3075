#include "bibnov/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bibnov/errors.hpp"
#include "bibnov/parallel.hpp"

namespace bibnov {

std::string_view to_string(EntityKind kind) {
  return kind == EntityKind::Journals ? "journals" : "keywords";
}

EntityKind parse_entity_kind(std::string_view text) {
  if (text == "journals") return EntityKind::Journals;
  if (text == "keywords") return EntityKind::Keywords;
  throw Error(ErrorCode::InvalidArgument, "entity kind must be journals|keywords, got " + std::string(text));
}

std::vector<std::string> document_entities(const DocumentRecord& doc, EntityKind kind) {
  std::vector<std::string> out;
  if (kind == EntityKind::Journals) {
    out.reserve(doc.references.size());
    for (const auto& r : doc.references)
      if (r.source) out.push_back(*r.source);
  } else {
    out = doc.keywords;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DocumentCombinations extract_combinations(const DocumentRecord& doc, EntityKind kind) {
  DocumentCombinations combos{doc.id, {}};
  auto entities = document_entities(doc, kind);
  for (std::size_t a = 0; a < entities.size(); ++a)
    for (std::size_t b = a + 1; b < entities.size(); ++b) combos.pairs.emplace_back(entities[a], entities[b]);
  return combos;
}

CoocGraph::CoocGraph(EntityKind kind, std::optional<YearRange> span, std::vector<std::string> nodes,
                     const std::vector<std::pair<std::uint64_t, Weight>>& edges)
    : kind_(kind), span_(span), nodes_(std::move(nodes)) {
  const auto v = static_cast<NodeIndex>(nodes_.size());
  index_.reserve(nodes_.size());
  for (NodeIndex i = 0; i < v; ++i) index_.emplace(nodes_[i], i);

  std::vector<Eigen::Triplet<Weight, NodeIndex>> triplets;
  triplets.reserve(edges.size() * 2);
  for (const auto& [key, w] : edges) {
    NodeIndex i = key_first(key), j = key_second(key);
    if (i == j || w == 0) continue;
    if (i < 0 || j < 0 || i >= v || j >= v) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    triplets.emplace_back(i, j, w);
    triplets.emplace_back(j, i, w);
  }
  weights_.resize(v, v);
  weights_.setFromTriplets(triplets.begin(), triplets.end());
  weights_.makeCompressed();
  degrees_ = DegreeVector::Zero(v);
  for (NodeIndex i = 0; i < v; ++i)
    for (WeightMatrix::InnerIterator it(weights_, i); it; ++it) degrees_[i] += it.value();
  total_ = degrees_.sum() / 2;
}

std::optional<NodeIndex> CoocGraph::index_of(std::string_view entity) const {
  auto it = index_.find(std::string(entity));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Weight CoocGraph::weight(NodeIndex i, NodeIndex j) const {
  if (i == j) return 0;
  return weights_.coeff(i, j);
}

bool CoocGraph::operator==(const CoocGraph& other) const {
  if (kind_ != other.kind_ || span_ != other.span_ || nodes_ != other.nodes_ || total_ != other.total_ ||
      weights_.nonZeros() != other.weights_.nonZeros())
    return false;
  std::vector<std::tuple<NodeIndex, NodeIndex, Weight>> a, b;
  for_each_edge([&](NodeIndex i, NodeIndex j, Weight w) { a.emplace_back(i, j, w); });
  other.for_each_edge([&](NodeIndex i, NodeIndex j, Weight w) { b.emplace_back(i, j, w); });
  return a == b;
}

std::vector<NodeIndex> entity_indices(const DocumentRecord& doc, const CoocGraph& graph) {
  std::vector<NodeIndex> out;
  auto add = [&](const std::string& e) {
    if (auto idx = graph.index_of(e)) out.push_back(*idx);
  };
  if (graph.kind() == EntityKind::Journals) {
    for (const auto& r : doc.references)
      if (r.source) add(*r.source);
  } else {
    for (const auto& k : doc.keywords) add(k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Sorted (key, count) run-length encoding of a key list.
std::vector<std::pair<std::uint64_t, Weight>> count_keys(std::vector<std::uint64_t>& keys) {
  std::sort(keys.begin(), keys.end());
  std::vector<std::pair<std::uint64_t, Weight>> out;
  for (std::size_t a = 0; a < keys.size();) {
    std::size_t b = a;
    while (b < keys.size() && keys[b] == keys[a]) ++b;
    out.emplace_back(keys[a], static_cast<Weight>(b - a));
    a = b;
  }
  return out;
}

}  // namespace

CoocGraph build_cooc_graph(std::span<const DocumentRecord* const> docs, EntityKind kind, int threads) {
  std::optional<YearRange> span;
  std::vector<std::string> nodes;
  for (const auto* d : docs) {
    span = span ? YearRange{std::min(span->first, d->year), std::max(span->second, d->year)}
                : YearRange{d->year, d->year};
    auto entities = document_entities(*d, kind);
    nodes.insert(nodes.end(), std::make_move_iterator(entities.begin()), std::make_move_iterator(entities.end()));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::unordered_map<std::string_view, NodeIndex> index;
  index.reserve(nodes.size());
  for (NodeIndex i = 0; i < static_cast<NodeIndex>(nodes.size()); ++i) index.emplace(nodes[i], i);

  unsigned workers = std::max(1U, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(docs.size())));
  std::vector<std::vector<std::pair<std::uint64_t, Weight>>> partial(workers);
  parallel_blocks(docs.size(), static_cast<int>(workers), [&](std::size_t begin, std::size_t end, unsigned w) {
    std::vector<std::uint64_t> keys;
    std::vector<NodeIndex> ids;
    for (std::size_t d = begin; d < end; ++d) {
      ids.clear();
      for (const auto& e : document_entities(*docs[d], kind)) ids.push_back(index.at(e));
      for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b) keys.push_back(pair_key(ids[a], ids[b]));
    }
    partial[w] = count_keys(keys);
  });

  std::vector<std::pair<std::uint64_t, Weight>> edges;
  if (partial.size() == 1) {
    edges = std::move(partial[0]);
  } else {
    for (auto& p : partial) edges.insert(edges.end(), p.begin(), p.end());
    std::sort(edges.begin(), edges.end());
    std::size_t out = 0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (out > 0 && edges[out - 1].first == edges[k].first)
        edges[out - 1].second += edges[k].second;
      else
        edges[out++] = edges[k];
    }
    edges.resize(out);
  }
  return CoocGraph(kind, span, std::move(nodes), edges);
}

CoocGraph cumulative_graph(const CorpusStore& store, EntityKind kind, int up_to, Bound bound, int threads) {
  int hi = bound == Bound::Inclusive ? up_to : up_to - 1;
  auto span = store.span();
  if (!span || hi < span->first) return build_cooc_graph({}, kind, threads);
  auto docs = store.docs_in_years(span->first, hi);
  return build_cooc_graph(docs, kind, threads);
}

CoocGraph window_graph(const CorpusStore& store, EntityKind kind, int lo, int hi, int threads) {
  auto docs = store.docs_in_years(lo, hi);
  return build_cooc_graph(docs, kind, threads);
}

void write_graph_file(const CoocGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path);
  out << "bibnov-cooc\t" << to_string(graph.kind()) << '\t';
  if (graph.year_span())
    out << graph.year_span()->first << '\t' << graph.year_span()->second;
  else
    out << "-\t-";
  out << '\t' << graph.node_count() << '\t' << graph.total_weight() << '\t' << graph.edge_count() << '\n';
  for (const auto& n : graph.nodes()) out << n << '\n';
  graph.for_each_edge([&](NodeIndex i, NodeIndex j, Weight w) { out << i << ' ' << j << ' ' << w << '\n'; });
  if (!out) throw Error(ErrorCode::IoFailure, "short write " + path);
}

CoocGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic, kind, lo, hi;
  std::size_t v = 0, e = 0;
  Weight total = 0;
  if (!(hs >> magic >> kind >> lo >> hi >> v >> total >> e) || magic != "bibnov-cooc")
    throw Error(ErrorCode::IoFailure, "bad graph header in " + path);
  std::optional<YearRange> span;
  if (lo != "-") span = YearRange{std::stoi(lo), std::stoi(hi)};
  std::vector<std::string> nodes(v);
  for (auto& n : nodes)
    if (!std::getline(in, n)) throw Error(ErrorCode::IoFailure, "truncated node list in " + path);
  std::vector<std::pair<std::uint64_t, Weight>> edges;
  edges.reserve(e);
  for (std::size_t k = 0; k < e; ++k) {
    NodeIndex i = 0, j = 0;
    Weight w = 0;
    if (!(in >> i >> j >> w)) throw Error(ErrorCode::IoFailure, "truncated edge list in " + path);
    edges.emplace_back(pair_key(i, j), w);
  }
  CoocGraph graph(parse_entity_kind(kind), span, std::move(nodes), edges);
  if (graph.total_weight() != total) throw Error(ErrorCode::IoFailure, "N mismatch in " + path);
  return graph;
}

}  // namespace bibnov
