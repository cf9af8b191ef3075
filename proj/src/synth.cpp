#include "bibnov/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <unordered_set>

#include "bibnov/errors.hpp"
#include "bibnov/resampling.hpp"

namespace bibnov {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) { return bounded_draw(engine_, n); }

  std::uint32_t poisson(double mean) {
    if (mean <= 0) return 0;
    if (mean > 30) {
      const double x = std::round(mean + std::sqrt(mean) * normal());
      return static_cast<std::uint32_t>(std::max(0.0, x));
    }
    const double limit = std::exp(-mean);
    std::uint32_t k = 0;
    double p = uniform();
    while (p > limit) {
      ++k;
      p *= uniform();
    }
    return k;
  }

  // Failures before the first success with success probability 1 / (1 + mean).
  std::uint32_t geometric(double mean) {
    if (mean <= 0) return 0;
    const double p = 1.0 / (1.0 + mean);
    const double u = std::max(uniform(), 1e-300);
    return static_cast<std::uint32_t>(std::floor(std::log(u) / std::log1p(-p)));
  }

  double normal() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

std::string padded(const char* prefix, std::size_t i, int width) {
  std::string digits = std::to_string(i);
  if (static_cast<int>(digits.size()) < width) digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  return prefix + digits;
}

}  // namespace

std::string SynthParams::fingerprint() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "n_docs=%zu;n_entities=%zu;years=%d:%d;mean_refs=%.17g;in_corpus=%.17g;offset=%u;age=%.17g;"
                "communities=%zu;affinity=%.17g;keywords=%zu;dim=%zu;seed=%llu",
                n_docs, n_entities, year_lo, year_hi, mean_refs, in_corpus_share, attachment_offset,
                mean_reference_age, communities, community_affinity, keywords_per_doc, embedding_dim,
                static_cast<unsigned long long>(seed));
  return buf;
}

SynthCorpus synth_corpus(const SynthParams& p) {
  if (p.n_docs < 1) throw Error(ErrorCode::InvalidParams, "n_docs must be >= 1");
  if (p.n_entities < 1) throw Error(ErrorCode::InvalidParams, "n_entities must be >= 1");
  if (p.year_lo > p.year_hi) throw Error(ErrorCode::InvalidParams, "empty year range");
  if (p.communities < 1) throw Error(ErrorCode::InvalidParams, "communities must be >= 1");
  if (p.mean_refs < 0 || p.in_corpus_share < 0 || p.in_corpus_share > 1 || p.community_affinity < 0 ||
      p.community_affinity > 1 || p.mean_reference_age < 0)
    throw Error(ErrorCode::InvalidParams, "rates out of range");
  if (p.embedding_dim < 1) throw Error(ErrorCode::InvalidParams, "embedding_dim must be >= 1");

  Rng rng(p.seed);
  SynthCorpus out;
  const std::size_t communities = std::min(p.communities, p.n_entities);
  for (std::size_t e = 0; e < p.n_entities; ++e) {
    out.journals.push_back(padded("journal-", e, 4));
    out.keywords.push_back(padded("keyword-", e, 4));
    out.journal_community.push_back(static_cast<int>(e % communities));
    out.keyword_community.push_back(static_cast<int>(e % communities));
  }
  // Entities of community c are c, c + C, c + 2C, ...
  auto draw_entity = [&](int home) -> std::size_t {
    if (rng.uniform() < p.community_affinity) {
      const std::size_t members = (p.n_entities - static_cast<std::size_t>(home) + communities - 1) / communities;
      return static_cast<std::size_t>(home) + communities * rng.below(members);
    }
    return rng.below(p.n_entities);
  };

  std::vector<Eigen::VectorXd> centroids;
  for (std::size_t c = 0; c < communities; ++c) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(p.embedding_dim));
    for (Eigen::Index x = 0; x < v.size(); ++x) v[x] = rng.normal();
    centroids.push_back(std::move(v));
  }

  const int years = p.year_hi - p.year_lo + 1;
  const int width = std::max(6, static_cast<int>(std::to_string(p.n_docs).size()));
  std::vector<std::uint32_t> tickets;   // earlier-year documents, repeated by attractiveness
  std::vector<std::uint32_t> pending;   // citations received during the current year
  std::vector<std::size_t> venue(p.n_docs);
  int current_year = p.year_lo;
  std::size_t year_start = 0;

  out.documents.reserve(p.n_docs);
  for (std::size_t i = 0; i < p.n_docs; ++i) {
    const int year = p.year_lo + static_cast<int>(i * static_cast<std::size_t>(years) / p.n_docs);
    if (year != current_year) {
      for (std::size_t d = year_start; d < i; ++d)
        for (std::uint32_t k = 0; k < p.attachment_offset; ++k) tickets.push_back(static_cast<std::uint32_t>(d));
      tickets.insert(tickets.end(), pending.begin(), pending.end());
      pending.clear();
      year_start = i;
      current_year = year;
    }
    const int home = static_cast<int>(rng.below(communities));
    out.document_community.push_back(home);
    venue[i] = draw_entity(home);

    DocumentRecord doc;
    doc.id = padded("d", i, width);
    doc.year = year;
    const std::uint32_t n_refs = std::max<std::uint32_t>(1, rng.poisson(p.mean_refs));
    std::unordered_set<std::uint32_t> cited;
    for (std::uint32_t r = 0; r < n_refs; ++r) {
      if (!tickets.empty() && rng.uniform() < p.in_corpus_share) {
        const auto target = tickets[rng.below(tickets.size())];
        if (!cited.insert(target).second) continue;
        pending.push_back(target);
        const auto& t = out.documents[target];
        doc.references.push_back({t.id, out.journals[venue[target]], t.year});
      } else {
        const int age = static_cast<int>(rng.geometric(p.mean_reference_age));
        doc.references.push_back({std::nullopt, out.journals[draw_entity(home)], year - age});
      }
    }
    std::unordered_set<std::size_t> kws;
    for (std::size_t k = 0; k < p.keywords_per_doc; ++k) {
      const auto e = draw_entity(home);
      if (kws.insert(e).second) doc.keywords.push_back(out.keywords[e]);
    }
    doc.title_vector_id = "t:" + doc.id;
    doc.abstract_vector_id = "a:" + doc.id;

    Eigen::VectorXd title = centroids[static_cast<std::size_t>(home)];
    Eigen::VectorXd abstract = centroids[static_cast<std::size_t>(home)];
    for (Eigen::Index x = 0; x < title.size(); ++x) {
      title[x] += 0.5 * rng.normal();
      abstract[x] += 0.8 * rng.normal();
    }
    out.embeddings.add(*doc.title_vector_id, title);
    out.embeddings.add(*doc.abstract_vector_id, abstract);
    out.documents.push_back(std::move(doc));
  }
  return out;
}

void write_synth(const SynthCorpus& corpus, const std::string& prefix) {
  write_corpus(corpus.documents, prefix + ".jsonl");
  write_embeddings(corpus.embeddings, prefix + ".embeddings.jsonl");
  std::ofstream truth(prefix + ".truth.csv", std::ios::trunc);
  if (!truth) throw Error(ErrorCode::IoFailure, "cannot write " + prefix + ".truth.csv");
  truth << "kind,name,community\n";
  for (std::size_t e = 0; e < corpus.journals.size(); ++e)
    truth << "journal," << corpus.journals[e] << ',' << corpus.journal_community[e] << '\n';
  for (std::size_t e = 0; e < corpus.keywords.size(); ++e)
    truth << "keyword," << corpus.keywords[e] << ',' << corpus.keyword_community[e] << '\n';
  for (std::size_t d = 0; d < corpus.documents.size(); ++d)
    truth << "document," << corpus.documents[d].id << ',' << corpus.document_community[d] << '\n';
}

}  // namespace bibnov
