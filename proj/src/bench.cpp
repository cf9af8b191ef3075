#include "bibnov/bench.hpp"

#include <sys/resource.h>

#include <chrono>
#include <sstream>

#include "bibnov/disruption.hpp"
#include "bibnov/errors.hpp"
#include "bibnov/graph.hpp"
#include "bibnov/novelty.hpp"
#include "bibnov/semantic.hpp"
#include "bibnov/text.hpp"

namespace bibnov {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

long peak_rss_kb() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

struct Job {
  std::string name;
  std::uint32_t samples = 20;
};

Job parse_job(const std::string& token) {
  Job job;
  const auto colon = token.find(':');
  job.name = token.substr(0, colon);
  if (colon != std::string::npos) {
    if (job.name != "uzzi") throw Error(ErrorCode::InvalidArgument, "only uzzi takes a sample count: " + token);
    job.samples = static_cast<std::uint32_t>(std::stoul(token.substr(colon + 1)));
  }
  static const char* known[] = {"lee", "uzzi", "foster", "wang", "shibayama", "disruption"};
  for (const char* k : known)
    if (job.name == k) return job;
  throw Error(ErrorCode::InvalidArgument, "unknown indicator " + token);
}

// Returns (params fingerprint, record count).
std::pair<std::string, std::size_t> run_job(const Job& job, const CorpusStore& store, const SynthCorpus& corpus,
                                            int year, const BenchParams& p) {
  if (job.name == "lee") return {"", lee_commonness(store, EntityKind::Journals, year, p.threads).records.size()};
  if (job.name == "uzzi") {
    UzziParams u{EntityKind::Journals, year, job.samples, p.seed, p.threads};
    return {u.fingerprint(), uzzi_scores(store, u).records.size()};
  }
  if (job.name == "foster") {
    FosterParams f{EntityKind::Journals, year, 1.0, p.seed, p.threads};
    return {f.fingerprint(), foster_bridging(store, f).records.size()};
  }
  if (job.name == "wang") {
    WangParams w;
    w.year = year;
    w.threads = p.threads;
    return {w.fingerprint(), wang_novelty(store, w).records.size()};
  }
  if (job.name == "shibayama")
    return {"q=10", shibayama_year(store, corpus.embeddings, TextField::Title, 10.0, year, p.threads).size()};
  const auto graph = build_citation_graph(store);
  const auto measures = all_disruption_measures();
  return {"l=1,5", disruption_batch(graph, {}, l_values_for(measures), p.threads).size()};
}

}  // namespace

int bench_year(const SynthParams& corpus) { return corpus.year_lo + (corpus.year_hi - corpus.year_lo) / 2; }

BenchReport run_bench(const BenchParams& params) {
  BenchReport report;
  if (params.indicators.empty()) return report;
  for (std::size_t i = 1; i < params.sizes.size(); ++i)
    if (params.sizes[i] < params.sizes[i - 1]) throw Error(ErrorCode::InvalidArgument, "bench sizes must ascend");
  std::vector<Job> jobs;
  for (const auto& token : params.indicators) jobs.push_back(parse_job(token));

  for (std::size_t size : params.sizes) {
    SynthParams sp = params.corpus;
    sp.n_docs = size;
    sp.seed = params.seed;
    const auto build_start = Clock::now();
    auto corpus = synth_corpus(sp);
    CorpusStore store(corpus.documents, Provenance{0, sp.fingerprint()});
    const double build_seconds = since(build_start);
    const int year = bench_year(sp);

    for (const auto& job : jobs) {
      if (params.warm_up) run_job(job, store, corpus, year, params);
      const auto start = Clock::now();
      const auto [fp, records] = run_job(job, store, corpus, year, params);
      BenchRow row;
      row.seconds = since(start);
      row.indicator = job.name;
      row.size = size;
      row.params = fp;
      row.year = year;
      row.build_seconds = build_seconds;
      row.peak_rss_kb = peak_rss_kb();
      row.records = records;
      row.manifest = hex64(fnv1a64(sp.fingerprint() + "|" + job.name + "|" + fp));
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "indicator,size,params,year,build_seconds,seconds,peak_rss_kb,records,manifest\n";
  for (const auto& r : report.rows)
    out << r.indicator << ',' << r.size << ",\"" << r.params << "\"," << r.year << ',' << r.build_seconds << ','
        << r.seconds << ',' << r.peak_rss_kb << ',' << r.records << ',' << r.manifest << '\n';
  return out.str();
}

}  // namespace bibnov
