#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bibnov/corpus.hpp"
#include "bibnov/semantic.hpp"

namespace bibnov {

struct SynthParams {
  std::size_t n_docs = 1000;
  std::size_t n_entities = 50;  // size of both the journal and the keyword vocabulary
  int year_lo = 2000;
  int year_hi = 2010;
  double mean_refs = 10.0;
  double in_corpus_share = 0.5;  // share of references aimed at earlier corpus documents
  std::uint32_t attachment_offset = 1;  // preferential attachment: weight = citations + offset
  double mean_reference_age = 3.0;      // years, for out-of-corpus references
  std::size_t communities = 4;
  double community_affinity = 0.8;  // chance an entity is drawn from the home community
  std::size_t keywords_per_doc = 5;
  std::size_t embedding_dim = 16;
  std::uint64_t seed = 1;

  std::string fingerprint() const;
};

struct SynthCorpus {
  std::vector<DocumentRecord> documents;  // id order == year order
  std::vector<std::string> journals;
  std::vector<std::string> keywords;
  std::vector<int> journal_community;  // planted labels
  std::vector<int> keyword_community;
  std::vector<int> document_community;
  EmbeddingStore embeddings;  // "t:<id>" and "a:<id>" vectors
};

/// Deterministic in `params` (own RNG transforms, no std distributions).
SynthCorpus synth_corpus(const SynthParams& params);

/// Writes `<prefix>.jsonl`, `<prefix>.embeddings.jsonl` and `<prefix>.truth.csv`.
void write_synth(const SynthCorpus& corpus, const std::string& prefix);

}  // namespace bibnov
