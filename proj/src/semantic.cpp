#include "bibnov/semantic.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "binary_io.hpp"
#include "bibnov/parallel.hpp"
#include "bibnov/stats.hpp"

namespace bibnov {

namespace {
constexpr char kEmbeddingMagic[8] = {'B', 'N', 'E', 'M', 'B', '0', '0', '1'};
}

void EmbeddingStore::add(std::string id, const Eigen::Ref<const Eigen::VectorXd>& vector) {
  if (ids_.empty() && dimension_ == 0) dimension_ = vector.size();
  if (vector.size() != dimension_)
    throw Error(ErrorCode::DimensionMismatch, id + " has dimension " + std::to_string(vector.size()) +
                                                  ", store has " + std::to_string(dimension_));
  if (!vector.allFinite()) throw Error(ErrorCode::InvalidArgument, id + " has non-finite components");
  if (index_.count(id)) throw Error(ErrorCode::DuplicateId, id);
  index_.emplace(id, static_cast<Eigen::Index>(ids_.size()));
  ids_.push_back(std::move(id));
  data_.insert(data_.end(), vector.data(), vector.data() + vector.size());
}

std::optional<Eigen::Index> EmbeddingStore::row_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingStore load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  EmbeddingStore store;
  std::string line;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::IoFailure, std::string("bad embedding record: ") + e.what());
    }
    if (!obj.contains("id") || !obj["id"].is_string() || !obj.contains("vector") || !obj["vector"].is_array())
      throw Error(ErrorCode::IoFailure, "embedding record needs string id and array vector");
    values = obj["vector"].get<std::vector<double>>();
    store.add(obj["id"].get<std::string>(), Eigen::Map<const Eigen::VectorXd>(values.data(), values.size()));
  }
  return store;
}

void write_embeddings(const EmbeddingStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path);
  for (std::size_t r = 0; r < store.size(); ++r) {
    nlohmann::ordered_json obj;
    obj["id"] = store.ids()[r];
    auto row = store.row(static_cast<Eigen::Index>(r));
    obj["vector"] = std::vector<double>(row.data(), row.data() + row.size());
    out << obj.dump() << '\n';
  }
}

void save_embedding_cache(const EmbeddingStore& store, const std::string& path) {
  detail::BinaryWriter w(path);
  w.put_bytes(kEmbeddingMagic, sizeof(kEmbeddingMagic));
  std::uint32_t width = 0;
  for (const auto& id : store.ids()) width = std::max<std::uint32_t>(width, static_cast<std::uint32_t>(id.size()));
  w.put<std::uint64_t>(static_cast<std::uint64_t>(store.dimension()));
  w.put<std::uint64_t>(store.size());
  w.put<std::uint32_t>(width);
  std::vector<char> id_buf(width);
  for (std::size_t r = 0; r < store.size(); ++r) {
    std::fill(id_buf.begin(), id_buf.end(), '\0');
    std::memcpy(id_buf.data(), store.ids()[r].data(), store.ids()[r].size());
    w.put_bytes(id_buf.data(), id_buf.size());
    auto row = store.row(static_cast<Eigen::Index>(r));
    w.put_bytes(row.data(), sizeof(double) * static_cast<std::size_t>(row.size()));
  }
  w.finish();
}

EmbeddingStore load_embedding_cache(const std::string& path) {
  detail::BinaryReader r(path);
  if (!r.ok()) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  char magic[sizeof(kEmbeddingMagic)];
  r.get_bytes(magic, sizeof(magic));
  if (!std::equal(std::begin(magic), std::end(magic), std::begin(kEmbeddingMagic)))
    throw Error(ErrorCode::IoFailure, "not an embedding cache: " + path);
  const auto dim = r.get<std::uint64_t>();
  const auto count = r.get<std::uint64_t>();
  const auto width = r.get<std::uint32_t>();
  EmbeddingStore store;
  std::vector<char> id_buf(width);
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  for (std::uint64_t k = 0; k < count; ++k) {
    r.get_bytes(id_buf.data(), width);
    r.get_bytes(v.data(), sizeof(double) * dim);
    std::string id(id_buf.data(), strnlen(id_buf.data(), width));
    store.add(std::move(id), v);
  }
  return store;
}

std::string_view to_string(TextField field) { return field == TextField::Title ? "title" : "abstract"; }

TextField parse_text_field(std::string_view text) {
  if (text == "title") return TextField::Title;
  if (text == "abstract") return TextField::Abstract;
  throw Error(ErrorCode::InvalidArgument, "field must be title|abstract, got " + std::string(text));
}

DistanceDistribution reference_distances(const DocumentRecord& doc, const CorpusStore& store,
                                         const EmbeddingStore& embeddings, TextField field) {
  DistanceDistribution dist;
  dist.doc_id = doc.id;
  std::vector<std::string> refs;
  for (const auto& r : doc.references)
    if (r.ref_id && *r.ref_id != doc.id) refs.push_back(*r.ref_id);
  std::sort(refs.begin(), refs.end());
  refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
  dist.reference_count = refs.size();

  std::vector<Eigen::Index> rows;
  for (const auto& id : refs) {
    const auto* cited = store.find(id);
    if (!cited) continue;
    const auto& vid = field == TextField::Title ? cited->title_vector_id : cited->abstract_vector_id;
    if (!vid) continue;
    if (auto row = embeddings.row_of(*vid)) {
      rows.push_back(*row);
      dist.resolved.push_back(id);
    }
  }
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b)
      dist.distances.push_back(cosine_distance(embeddings.row(rows[a]), embeddings.row(rows[b])));
  std::sort(dist.distances.begin(), dist.distances.end());
  return dist;
}

ScoreRecord shibayama_novelty(const DocumentRecord& doc, const CorpusStore& store, const EmbeddingStore& embeddings,
                              TextField field, double q) {
  auto dist = reference_distances(doc, store, embeddings, field);
  if (dist.resolved.size() < 2)
    throw Error(ErrorCode::InsufficientReferences,
                doc.id + " has " + std::to_string(dist.resolved.size()) + " references with vectors");
  ScoreRecord rec;
  rec.doc_id = doc.id;
  rec.indicator = "shibayama";
  rec.entity = std::string(to_string(field));
  rec.year = doc.year;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "q=%.17g", q);
  rec.params = buf;
  rec.scores = {{"novelty", percentile_sorted(dist.distances, q)}};
  rec.percentiles = standard_percentiles(dist.distances);
  rec.distribution = std::move(dist.distances);
  const auto m = static_cast<double>(dist.resolved.size());
  rec.diagnostics = {{"resolved_references", m},
                     {"coverage", dist.reference_count ? m / static_cast<double>(dist.reference_count) : 0.0}};
  return rec;
}

std::vector<ScoreRecord> shibayama_year(const CorpusStore& store, const EmbeddingStore& embeddings, TextField field,
                                        double q, int year, int threads, std::size_t* skipped) {
  auto docs = store.docs_in_year(year);
  std::vector<std::optional<ScoreRecord>> slots(docs.size());
  parallel_for(docs.size(), threads, [&](std::size_t d) {
    try {
      slots[d] = shibayama_novelty(*docs[d], store, embeddings, field, q);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientReferences) throw;
    }
  });
  std::vector<ScoreRecord> out;
  std::size_t missing = 0;
  for (auto& s : slots) {
    if (s)
      out.push_back(std::move(*s));
    else
      ++missing;
  }
  if (skipped) *skipped = missing;
  return out;
}

}  // namespace bibnov
