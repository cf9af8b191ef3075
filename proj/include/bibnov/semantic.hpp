#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "bibnov/corpus.hpp"
#include "bibnov/errors.hpp"
#include "bibnov/score.hpp"

namespace bibnov {

/// Dense document vectors of one shared dimension, one row per id.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;

  Eigen::Index dimension() const { return dimension_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }

  /// Throws DimensionMismatch, DuplicateId, or InvalidArgument (non-finite).
  void add(std::string id, const Eigen::Ref<const Eigen::VectorXd>& vector);
  std::optional<Eigen::Index> row_of(std::string_view id) const;
  Eigen::Map<const Eigen::VectorXd> row(Eigen::Index r) const {
    return Eigen::Map<const Eigen::VectorXd>(data_.data() + r * dimension_, dimension_);
  }

 private:
  Eigen::Index dimension_ = 0;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, Eigen::Index> index_;
  std::vector<double> data_;  // row-major, size() x dimension()
};

/// JSON-lines file of {"id": string, "vector": [reals]}.
EmbeddingStore load_embeddings(const std::string& path);
void write_embeddings(const EmbeddingStore& store, const std::string& path);

/// Packed cache: magic, dimension, count, id width, then fixed-width records
/// (zero-padded id bytes followed by `dimension` doubles).
void save_embedding_cache(const EmbeddingStore& store, const std::string& path);
EmbeddingStore load_embedding_cache(const std::string& path);

/// 1 - cos(u, v), with cos := 0 when either norm is zero. Result in [0, 2].
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_distance(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v) {
  using Scalar = typename DerivedA::Scalar;
  if (u.size() != v.size())
    throw Error(ErrorCode::DimensionMismatch,
                "cosine of vectors with sizes " + std::to_string(u.size()) + " and " + std::to_string(v.size()));
  const Scalar nu = u.norm();
  const Scalar nv = v.norm();
  if (nu == Scalar(0) || nv == Scalar(0)) return Scalar(1);
  const Scalar cos = u.dot(v) / (nu * nv);
  return Scalar(1) - std::clamp(cos, Scalar(-1), Scalar(1));
}

enum class TextField { Title, Abstract };
std::string_view to_string(TextField field);
TextField parse_text_field(std::string_view text);

struct DistanceDistribution {
  std::string doc_id;
  std::size_t reference_count = 0;  // distinct references
  std::vector<std::string> resolved;  // references with a vector, in id order
  std::vector<double> distances;      // C(m, 2) values, sorted
};

/// Pairwise cosine distances between the document's cited documents, using
/// each cited document's title or abstract vector.
DistanceDistribution reference_distances(const DocumentRecord& doc, const CorpusStore& store,
                                         const EmbeddingStore& embeddings, TextField field);

/// Score = P_q of the distance distribution. Throws InsufficientReferences
/// when fewer than two references resolve to vectors.
ScoreRecord shibayama_novelty(const DocumentRecord& doc, const CorpusStore& store, const EmbeddingStore& embeddings,
                              TextField field, double q = 10.0);

/// Scores every document of `year`, skipping those with fewer than two
/// resolvable references (their count goes to `*skipped`).
std::vector<ScoreRecord> shibayama_year(const CorpusStore& store, const EmbeddingStore& embeddings, TextField field,
                                        double q, int year, int threads = 1, std::size_t* skipped = nullptr);

}  // namespace bibnov
