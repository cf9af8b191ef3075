#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "bibnov/corpus.hpp"
#include "bibnov/synth.hpp"

namespace bibnov::test {

inline ReferenceEntry src(std::string source, std::optional<int> year = std::nullopt) {
  return {std::nullopt, std::move(source), year};
}

inline ReferenceEntry cite(std::string id) { return {std::move(id), std::nullopt, std::nullopt}; }

inline DocumentRecord doc(std::string id, int year, std::vector<ReferenceEntry> refs,
                          std::vector<std::string> keywords = {}) {
  DocumentRecord d;
  d.id = std::move(id);
  d.year = year;
  d.references = std::move(refs);
  d.keywords = std::move(keywords);
  return d;
}

/// A document citing one reference per journal name, all in `ref_year`.
inline DocumentRecord journals(std::string id, int year, std::initializer_list<const char*> names,
                               std::optional<int> ref_year = std::nullopt) {
  std::vector<ReferenceEntry> refs;
  for (const char* n : names) refs.push_back(src(n, ref_year));
  return doc(std::move(id), year, std::move(refs));
}

/// Citation-only document: references are in-corpus ids.
inline DocumentRecord citing(std::string id, int year, std::initializer_list<const char*> ids) {
  std::vector<ReferenceEntry> refs;
  for (const char* r : ids) refs.push_back(cite(r));
  return doc(std::move(id), year, std::move(refs));
}

inline CorpusStore store_of(std::vector<DocumentRecord> docs) { return CorpusStore(std::move(docs)); }

/// Small random corpus with journals, keywords, citations and vectors.
inline SynthCorpus small_corpus(std::uint64_t seed, std::size_t n_docs = 120, std::size_t n_entities = 12) {
  SynthParams p;
  p.n_docs = n_docs;
  p.n_entities = n_entities;
  p.year_lo = 2000;
  p.year_hi = 2008;
  p.mean_refs = 5;
  p.in_corpus_share = 0.5;
  p.keywords_per_doc = 4;
  p.communities = 3;
  p.embedding_dim = 6;
  p.seed = seed;
  return synth_corpus(p);
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("bibnov_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_lines(const std::string& path, std::initializer_list<std::string> lines) {
  std::ofstream out(path);
  for (const auto& l : lines) out << l << '\n';
}

}  // namespace bibnov::test
