#include "bibnov/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "binary_io.hpp"
#include "bibnov/errors.hpp"
#include "bibnov/text.hpp"

namespace bibnov {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxKeptMessages = 20;
constexpr char kCacheMagic[8] = {'B', 'N', 'C', 'O', 'R', 'P', '0', '1'};

std::optional<std::string> optional_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw Error(ErrorCode::MalformedRecord, std::string(key) + " must be a string");
  auto value = it->get<std::string>();
  if (value.empty()) return std::nullopt;
  return value;
}

}  // namespace

std::string IngestOptions::fingerprint() const {
  std::string s = "case_fold=" + std::to_string(case_fold) +
                  ";max_reference_lead=" + std::to_string(max_reference_lead);
  if (year_range) s += ";years=" + std::to_string(year_range->first) + ":" + std::to_string(year_range->second);
  return s;
}

void IngestReport::warn(std::string message) {
  ++warnings;
  if (messages.size() < kMaxKeptMessages) messages.push_back(std::move(message));
}

DocumentRecord parse_document(std::string_view line, const IngestOptions& options, IngestReport* report) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
  if (!obj.is_object()) throw Error(ErrorCode::MalformedRecord, "record is not a JSON object");

  DocumentRecord doc;
  auto id = obj.find("id");
  if (id == obj.end() || id->is_null()) throw Error(ErrorCode::MissingField, "id");
  if (!id->is_string() || id->get_ref<const std::string&>().empty())
    throw Error(ErrorCode::MissingField, "id must be a non-empty string");
  doc.id = id->get<std::string>();

  auto year = obj.find("year");
  if (year == obj.end() || year->is_null()) throw Error(ErrorCode::MissingField, "year (document " + doc.id + ")");
  if (!year->is_number_integer()) throw Error(ErrorCode::MalformedYear, "document " + doc.id);
  doc.year = year->get<int>();

  auto refs = obj.find("references");
  if (refs != obj.end() && !refs->is_null()) {
    if (!refs->is_array()) throw Error(ErrorCode::MalformedRecord, "references must be an array");
    for (const auto& r : *refs) {
      if (!r.is_object()) throw Error(ErrorCode::MalformedRecord, "reference must be an object");
      ReferenceEntry entry;
      entry.ref_id = optional_string(r, "ref_id");
      if (auto src = optional_string(r, "source")) {
        auto normalized = normalize_label(*src, options.case_fold);
        if (!normalized.empty()) entry.source = std::move(normalized);
      }
      if (auto ry = r.find("year"); ry != r.end() && !ry->is_null()) {
        if (!ry->is_number_integer()) {
          if (report) report->warn(doc.id + ": non-integer reference year dropped");
        } else {
          entry.year = ry->get<int>();
          if (*entry.year > doc.year + options.max_reference_lead) {
            if (report)
              report->warn(doc.id + ": reference year " + std::to_string(*entry.year) + " clamped to " +
                           std::to_string(doc.year));
            entry.year = doc.year;
          }
        }
      }
      if (!entry.ref_id && !entry.source) {
        if (report) report->warn(doc.id + ": reference without ref_id or source dropped");
        continue;
      }
      doc.references.push_back(std::move(entry));
    }
  }

  auto kws = obj.find("keywords");
  if (kws != obj.end() && !kws->is_null()) {
    if (!kws->is_array()) throw Error(ErrorCode::MalformedRecord, "keywords must be an array");
    std::unordered_set<std::string> seen;
    for (const auto& k : *kws) {
      if (!k.is_string()) throw Error(ErrorCode::MalformedRecord, "keyword must be a string");
      auto normalized = normalize_label(k.get_ref<const std::string&>(), options.case_fold);
      if (normalized.empty() || !seen.insert(normalized).second) continue;
      doc.keywords.push_back(std::move(normalized));
    }
  }

  doc.title_vector_id = optional_string(obj, "title_vector_id");
  doc.abstract_vector_id = optional_string(obj, "abstract_vector_id");

  if (doc.references.empty() && doc.keywords.empty())
    throw Error(ErrorCode::EmptyRecord, "document " + doc.id + " has no references and no keywords");
  return doc;
}

CorpusStore::CorpusStore(std::vector<DocumentRecord> documents, Provenance provenance, std::size_t* duplicates)
    : provenance_(std::move(provenance)) {
  // Stable sort keeps input order among equal ids, so "last wins" below.
  std::stable_sort(documents.begin(), documents.end(),
                   [](const auto& a, const auto& b) { return a.id < b.id; });
  std::size_t dups = 0;
  documents_.reserve(documents.size());
  for (auto& doc : documents) {
    if (!documents_.empty() && documents_.back().id == doc.id) {
      documents_.back() = std::move(doc);
      ++dups;
    } else {
      documents_.push_back(std::move(doc));
    }
  }
  if (duplicates) *duplicates = dups;
  by_id_.reserve(documents_.size());
  for (std::uint32_t i = 0; i < documents_.size(); ++i) {
    by_id_.emplace(documents_[i].id, i);
    year_index_[documents_[i].year].push_back(i);
  }
}

const DocumentRecord* CorpusStore::find(std::string_view id) const {
  auto idx = index_of(id);
  return idx ? &documents_[*idx] : nullptr;
}

std::optional<std::size_t> CorpusStore::index_of(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<YearRange> CorpusStore::span() const {
  if (year_index_.empty()) return std::nullopt;
  return YearRange{year_index_.begin()->first, year_index_.rbegin()->first};
}

DocumentView CorpusStore::docs_in_year(int year) const {
  DocumentView out;
  auto it = year_index_.find(year);
  if (it == year_index_.end()) return out;
  out.reserve(it->second.size());
  for (auto idx : it->second) out.push_back(&documents_[idx]);
  return out;
}

DocumentView CorpusStore::docs_in_years(int lo, int hi) const {
  DocumentView out;
  for (auto it = year_index_.lower_bound(lo); it != year_index_.end() && it->first <= hi; ++it)
    for (auto idx : it->second) out.push_back(&documents_[idx]);
  return out;
}

CorpusStore load_corpus(const std::string& path, const IngestOptions& options, IngestReport* report) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  IngestReport local;
  IngestReport& rep = report ? *report : local;

  std::vector<DocumentRecord> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++rep.lines;
    try {
      auto doc = parse_document(line, options, &rep);
      if (options.year_range && (doc.year < options.year_range->first || doc.year > options.year_range->second))
        continue;
      docs.push_back(std::move(doc));
    } catch (const Error& e) {
      ++rep.skipped;
      rep.warn("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (docs.empty()) throw Error(ErrorCode::NoValidRecords, path);

  std::size_t dups = 0;
  CorpusStore store(std::move(docs), Provenance{file_digest(path), options.fingerprint()}, &dups);
  rep.duplicates += dups;
  for (std::size_t i = 0; i < dups; ++i) rep.warn("duplicate document id (last record kept)");
  rep.accepted = store.size();
  return store;
}

namespace {

void put_optional_strings(detail::BinaryWriter& w, const std::vector<const std::optional<std::string>*>& col) {
  std::vector<std::uint8_t> present;
  std::vector<const std::string*> values;
  present.reserve(col.size());
  for (const auto* v : col) {
    present.push_back(v->has_value() ? 1 : 0);
    if (v->has_value()) values.push_back(&**v);
  }
  w.put_array(present);
  w.put_string_column(values);
}

std::vector<std::optional<std::string>> get_optional_strings(detail::BinaryReader& r) {
  auto present = r.get_array<std::uint8_t>();
  auto values = r.get_string_column();
  std::vector<std::optional<std::string>> out(present.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < present.size(); ++i) {
    if (!present[i]) continue;
    if (next >= values.size()) throw Error(ErrorCode::IoFailure, "corrupt optional column");
    out[i] = std::move(values[next++]);
  }
  return out;
}

}  // namespace

void save_corpus_cache(const CorpusStore& store, const std::string& cache_path) {
  detail::BinaryWriter w(cache_path);
  w.put_bytes(kCacheMagic, sizeof(kCacheMagic));
  w.put<std::uint64_t>(store.provenance().input_digest);
  w.put_string(store.provenance().ingest_params);

  const auto& docs = store.documents();
  std::vector<const std::string*> ids;
  std::vector<std::int32_t> years;
  std::vector<const std::optional<std::string>*> title_ids, abstract_ids, ref_ids, sources;
  std::vector<std::uint64_t> ref_offsets{0}, kw_offsets{0};
  std::vector<std::uint8_t> ref_year_present;
  std::vector<std::int32_t> ref_years;
  std::vector<const std::string*> keywords;
  for (const auto& d : docs) {
    ids.push_back(&d.id);
    years.push_back(d.year);
    title_ids.push_back(&d.title_vector_id);
    abstract_ids.push_back(&d.abstract_vector_id);
    for (const auto& r : d.references) {
      ref_ids.push_back(&r.ref_id);
      sources.push_back(&r.source);
      ref_year_present.push_back(r.year ? 1 : 0);
      ref_years.push_back(r.year.value_or(0));
    }
    ref_offsets.push_back(ref_offsets.back() + d.references.size());
    for (const auto& k : d.keywords) keywords.push_back(&k);
    kw_offsets.push_back(kw_offsets.back() + d.keywords.size());
  }
  w.put_string_column(ids);
  w.put_array(years);
  put_optional_strings(w, title_ids);
  put_optional_strings(w, abstract_ids);
  w.put_array(ref_offsets);
  put_optional_strings(w, ref_ids);
  put_optional_strings(w, sources);
  w.put_array(ref_year_present);
  w.put_array(ref_years);
  w.put_array(kw_offsets);
  w.put_string_column(keywords);
  w.finish();
}

std::optional<CorpusStore> load_corpus_cache(const std::string& cache_path, std::uint64_t expected_digest,
                                             const std::string& expected_params) {
  detail::BinaryReader r(cache_path);
  if (!r.ok()) return std::nullopt;
  try {
    char magic[sizeof(kCacheMagic)];
    r.get_bytes(magic, sizeof(magic));
    if (!std::equal(std::begin(magic), std::end(magic), std::begin(kCacheMagic))) return std::nullopt;
    Provenance prov;
    prov.input_digest = r.get<std::uint64_t>();
    prov.ingest_params = r.get_string();
    if (prov.input_digest != expected_digest || prov.ingest_params != expected_params) return std::nullopt;

    auto ids = r.get_string_column();
    auto years = r.get_array<std::int32_t>();
    auto title_ids = get_optional_strings(r);
    auto abstract_ids = get_optional_strings(r);
    auto ref_offsets = r.get_array<std::uint64_t>();
    auto ref_ids = get_optional_strings(r);
    auto sources = get_optional_strings(r);
    auto ref_year_present = r.get_array<std::uint8_t>();
    auto ref_years = r.get_array<std::int32_t>();
    auto kw_offsets = r.get_array<std::uint64_t>();
    auto keywords = r.get_string_column();

    const std::size_t n = ids.size();
    const std::size_t m = ref_ids.size();
    if (years.size() != n || title_ids.size() != n || abstract_ids.size() != n || ref_offsets.size() != n + 1 ||
        kw_offsets.size() != n + 1 || sources.size() != m || ref_year_present.size() != m ||
        ref_years.size() != m || ref_offsets.back() != m || kw_offsets.back() != keywords.size())
      return std::nullopt;

    std::vector<DocumentRecord> docs(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& d = docs[i];
      d.id = std::move(ids[i]);
      d.year = years[i];
      d.title_vector_id = std::move(title_ids[i]);
      d.abstract_vector_id = std::move(abstract_ids[i]);
      if (ref_offsets[i] > ref_offsets[i + 1] || kw_offsets[i] > kw_offsets[i + 1]) return std::nullopt;
      for (auto k = ref_offsets[i]; k < ref_offsets[i + 1]; ++k) {
        ReferenceEntry e{std::move(ref_ids[k]), std::move(sources[k]), std::nullopt};
        if (ref_year_present[k]) e.year = ref_years[k];
        d.references.push_back(std::move(e));
      }
      for (auto k = kw_offsets[i]; k < kw_offsets[i + 1]; ++k) d.keywords.push_back(std::move(keywords[k]));
    }
    return CorpusStore(std::move(docs), std::move(prov));
  } catch (const Error&) {
    return std::nullopt;
  }
}

CorpusStore load_corpus_cached(const std::string& path, const IngestOptions& options, IngestReport* report,
                               bool* cache_hit) {
  const std::string cache_path = path + ".bncache";
  auto digest = file_digest(path);
  if (auto cached = load_corpus_cache(cache_path, digest, options.fingerprint())) {
    if (cache_hit) *cache_hit = true;
    if (report) report->accepted = cached->size();
    return std::move(*cached);
  }
  if (cache_hit) *cache_hit = false;
  auto store = load_corpus(path, options, report);
  try {
    save_corpus_cache(store, cache_path);
  } catch (const Error& e) {
    if (report) report->warn(std::string("cache not written: ") + e.what());
  }
  return store;
}

std::string to_json_line(const DocumentRecord& doc) {
  nlohmann::ordered_json refs = nlohmann::ordered_json::array();
  for (const auto& r : doc.references) {
    nlohmann::ordered_json e = nlohmann::ordered_json::object();
    if (r.ref_id) e["ref_id"] = *r.ref_id;
    if (r.source) e["source"] = *r.source;
    if (r.year) e["year"] = *r.year;
    refs.push_back(std::move(e));
  }
  nlohmann::ordered_json obj;
  obj["id"] = doc.id;
  obj["year"] = doc.year;
  obj["references"] = std::move(refs);
  obj["keywords"] = doc.keywords;
  if (doc.title_vector_id) obj["title_vector_id"] = *doc.title_vector_id;
  if (doc.abstract_vector_id) obj["abstract_vector_id"] = *doc.abstract_vector_id;
  return obj.dump();
}

void write_corpus(const std::vector<DocumentRecord>& docs, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path);
  for (const auto& d : docs) out << to_json_line(d) << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "short write " + path);
}

}  // namespace bibnov
