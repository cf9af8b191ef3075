#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bibnov {

struct ReferenceEntry {
  std::optional<std::string> ref_id;  // in-corpus document id
  std::optional<std::string> source;  // journal / venue of the cited work
  std::optional<int> year;

  bool operator==(const ReferenceEntry&) const = default;
};

struct DocumentRecord {
  std::string id;
  int year = 0;
  std::vector<ReferenceEntry> references;
  std::vector<std::string> keywords;
  std::optional<std::string> title_vector_id;
  std::optional<std::string> abstract_vector_id;

  bool operator==(const DocumentRecord&) const = default;
};

using YearRange = std::pair<int, int>;

struct IngestOptions {
  bool case_fold = true;
  /// References may postdate the citing document by at most this many years
  /// (in-press citations); anything later is clamped to the citing year.
  int max_reference_lead = 1;
  std::optional<YearRange> year_range;

  std::string fingerprint() const;
};

struct IngestReport {
  std::size_t lines = 0;
  std::size_t accepted = 0;
  std::size_t skipped = 0;
  std::size_t duplicates = 0;
  std::size_t warnings = 0;
  std::vector<std::string> messages;  // first few warnings, verbatim

  void warn(std::string message);
};

/// Parses one line of the corpus JSON-lines schema. Clamping of future
/// reference years is reported through `report` when given.
DocumentRecord parse_document(std::string_view line, const IngestOptions& options = {},
                              IngestReport* report = nullptr);

struct Provenance {
  std::uint64_t input_digest = 0;
  std::string ingest_params;

  bool operator==(const Provenance&) const = default;
};

/// Non-owning, id-ordered list of documents.
using DocumentView = std::vector<const DocumentRecord*>;

/// Immutable id-indexed document collection partitioned by year. Documents
/// are kept sorted by id, so every year bucket lists indices in id order.
class CorpusStore {
 public:
  CorpusStore() = default;
  /// Duplicate ids: the later entry wins.
  explicit CorpusStore(std::vector<DocumentRecord> documents, Provenance provenance = {},
                       std::size_t* duplicates = nullptr);

  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }
  const std::vector<DocumentRecord>& documents() const { return documents_; }
  const DocumentRecord& operator[](std::size_t index) const { return documents_[index]; }

  const DocumentRecord* find(std::string_view id) const;
  std::optional<std::size_t> index_of(std::string_view id) const;

  const std::map<int, std::vector<std::uint32_t>>& year_index() const { return year_index_; }
  std::optional<YearRange> span() const;
  const Provenance& provenance() const { return provenance_; }

  DocumentView docs_in_year(int year) const;
  /// Documents with lo <= year <= hi, in (year, id) order.
  DocumentView docs_in_years(int lo, int hi) const;

  bool operator==(const CorpusStore& other) const {
    return documents_ == other.documents_ && year_index_ == other.year_index_ &&
           provenance_ == other.provenance_;
  }

 private:
  std::vector<DocumentRecord> documents_;
  std::unordered_map<std::string, std::uint32_t> by_id_;
  std::map<int, std::vector<std::uint32_t>> year_index_;
  Provenance provenance_;
};

CorpusStore load_corpus(const std::string& path, const IngestOptions& options = {},
                        IngestReport* report = nullptr);

/// Binary columnar cache. `load_corpus_cache` returns nullopt when the file
/// is absent, unreadable, or was built from a different input or options.
void save_corpus_cache(const CorpusStore& store, const std::string& cache_path);
std::optional<CorpusStore> load_corpus_cache(const std::string& cache_path,
                                             std::uint64_t expected_digest,
                                             const std::string& expected_params);

/// load_corpus with a `<path>.bncache` sidecar. Sets `*cache_hit` accordingly.
CorpusStore load_corpus_cached(const std::string& path, const IngestOptions& options = {},
                               IngestReport* report = nullptr, bool* cache_hit = nullptr);

std::string to_json_line(const DocumentRecord& doc);
void write_corpus(const std::vector<DocumentRecord>& docs, const std::string& path);

}  // namespace bibnov
