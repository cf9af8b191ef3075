// bibnov: command-line front end for the novelty and disruption engine.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bibnov/bench.hpp"
#include "bibnov/corpus.hpp"
#include "bibnov/disruption.hpp"
#include "bibnov/errors.hpp"
#include "bibnov/graph.hpp"
#include "bibnov/novelty.hpp"
#include "bibnov/parallel.hpp"
#include "bibnov/report.hpp"
#include "bibnov/scorefile.hpp"
#include "bibnov/semantic.hpp"
#include "bibnov/synth.hpp"
#include "bibnov/text.hpp"
#include "bibnov/verify.hpp"

namespace fs = std::filesystem;
using namespace bibnov;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitPartial = 2;

using Clock = std::chrono::steady_clock;

struct Globals {
  std::string corpus;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int threads = 1;
  std::string years;
  bool no_cache = false;
};

struct Run {
  const Globals& g;
  RunManifest manifest;
  Clock::time_point phase_start = Clock::now();
  bool partial = false;

  Run(const Globals& globals, const std::string& command_line) : g(globals) {
    manifest.command_line = command_line;
    manifest.seed = g.seed;
    manifest.threads = resolve_threads(g.threads);
  }

  void phase(const std::string& name) {
    const auto now = Clock::now();
    manifest.phase_seconds.emplace_back(name, std::chrono::duration<double>(now - phase_start).count());
    phase_start = now;
  }

  std::string out(const std::string& name) const {
    fs::create_directories(g.out_dir);
    return (fs::path(g.out_dir) / name).string();
  }
};

std::optional<YearRange> parse_years(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int y = std::stoi(text);
      return YearRange{y, y};
    }
    YearRange r{std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    if (r.first > r.second) throw Error(ErrorCode::InvalidArgument, "--years lo must not exceed hi");
    return r;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "--years expects lo:hi, got " + text);
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

CorpusStore open_corpus(Run& run, const std::optional<YearRange>& filter) {
  if (run.g.corpus.empty()) throw Error(ErrorCode::InvalidArgument, "--corpus is required");
  IngestOptions opts;
  opts.year_range = filter;
  IngestReport report;
  auto store = run.g.no_cache ? load_corpus(run.g.corpus, opts, &report)
                              : load_corpus_cached(run.g.corpus, opts, &report);
  if (report.skipped > 0) {
    run.partial = true;
    std::cerr << "warning: " << report.skipped << " corpus lines skipped\n";
    for (const auto& m : report.messages) std::cerr << "  " << m << '\n';
  }
  run.manifest.input_digests[run.g.corpus] = hex64(store.provenance().input_digest);
  run.manifest.fingerprint = "ingest{" + opts.fingerprint() + "}";
  run.phase("load");
  return store;
}

void emit_scores(Run& run, const std::string& file, const std::vector<ScoreRecord>& records) {
  const auto path = run.out(file);
  write_score_file(path, records);
  run.phase("write");
  write_manifest(path, run.manifest);
  std::cout << path << " (" << records.size() << " records)\n";
}

int finish(const Run& run) { return run.partial ? kExitPartial : kExitOk; }

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Novelty and disruption indicators for bibliographic corpora"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--corpus", g.corpus, "Line-delimited JSON corpus");
  app.add_option("--out-dir", g.out_dir, "Directory for outputs")->capture_default_str();
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--years", g.years, "Year range lo:hi");
  app.add_flag("--no-cache", g.no_cache, "Do not read or write the binary corpus cache");
  app.fallthrough();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate a corpus and build its binary cache");

  // cooc build
  auto* cooc = app.add_subcommand("cooc", "Co-occurrence graphs");
  cooc->require_subcommand(1);
  auto* cooc_build = cooc->add_subcommand("build", "Build a co-occurrence graph over a year window");
  std::string cooc_on = "journals";
  cooc_build->add_option("--on", cooc_on, "journals | keywords")->capture_default_str();

  // novelty
  auto* novelty = app.add_subcommand("novelty", "Combinatorial and semantic novelty scores");
  novelty->require_subcommand(1);
  std::string on = "journals";
  int year = 0;
  std::uint32_t samples = 20;
  double resolution = 1.0;
  int backward = 3, forward = 3;
  std::int64_t reuse = 1;
  std::string embeddings_path, field = "title";
  double q = 10.0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--on", on, "journals | keywords")->capture_default_str();
    sub->add_option("--year", year, "Focal year")->required();
  };
  auto* uzzi = novelty->add_subcommand("uzzi", "Z-scores against a year-stratified resampling null");
  add_common(uzzi);
  uzzi->add_option("--samples", samples, "Resampled graphs")->capture_default_str();
  auto* lee = novelty->add_subcommand("lee", "Commonness of entity pairs");
  add_common(lee);
  auto* foster = novelty->add_subcommand("foster", "Share of pairs bridging communities");
  add_common(foster);
  foster->add_option("--resolution", resolution, "Modularity resolution")->capture_default_str();
  auto* wang = novelty->add_subcommand("wang", "New pairs reused afterwards, weighted by distance");
  add_common(wang);
  wang->add_option("--b", backward, "Backward window in years")->capture_default_str();
  wang->add_option("--f", forward, "Forward window in years")->capture_default_str();
  wang->add_option("--reuse", reuse, "Minimum reuse weight in the forward window")->capture_default_str();
  auto* shib = novelty->add_subcommand("shibayama", "Distance between the texts of cited documents");
  shib->add_option("--year", year, "Focal year")->required();
  shib->add_option("--embeddings", embeddings_path, "Line-delimited vectors")->required();
  shib->add_option("--field", field, "title | abstract")->capture_default_str();
  shib->add_option("--q", q, "Percentile of the distance distribution")->capture_default_str();

  // disruption
  auto* disr = app.add_subcommand("disruption", "Citation disruption family");
  std::optional<int> disr_year;
  std::string measures_text;
  disr->add_option("--year", disr_year, "Score documents of this year (default: all)");
  disr->add_option("--measures", measures_text, "Comma-separated measures (default: all)");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with planted structure");
  SynthParams sp;
  std::string prefix = "synth";
  synth->add_option("--docs", sp.n_docs, "Number of documents")->capture_default_str();
  synth->add_option("--entities", sp.n_entities, "Journal and keyword vocabulary size")->capture_default_str();
  synth->add_option("--mean-refs", sp.mean_refs, "Mean references per document")->capture_default_str();
  synth->add_option("--in-corpus", sp.in_corpus_share, "Share of references to corpus documents")
      ->capture_default_str();
  synth->add_option("--offset", sp.attachment_offset, "Attachment weight offset")->capture_default_str();
  synth->add_option("--ref-age", sp.mean_reference_age, "Mean age of outside references")->capture_default_str();
  synth->add_option("--communities", sp.communities, "Planted communities")->capture_default_str();
  synth->add_option("--affinity", sp.community_affinity, "Chance of drawing from the home community")
      ->capture_default_str();
  synth->add_option("--keywords", sp.keywords_per_doc, "Keywords per document")->capture_default_str();
  synth->add_option("--dim", sp.embedding_dim, "Embedding dimension")->capture_default_str();
  synth->add_option("--prefix", prefix, "Output name prefix inside --out-dir")->capture_default_str();

  // report
  auto* report = app.add_subcommand("report", "Summaries over score files");
  report->require_subcommand(1);
  std::vector<std::string> files;
  std::vector<std::string> score_names;
  std::string doc_id;
  auto* trends = report->add_subcommand("trends", "Yearly mean, std and percentiles");
  trends->add_option("files", files, "Score files")->required();
  trends->add_option("--score", score_names, "Only these score names");
  auto* correlate = report->add_subcommand("correlate", "Pearson and Spearman matrix; file[@score] per input");
  correlate->add_option("files", files, "Score files")->required();
  auto* doc = report->add_subcommand("doc", "Per-document distributions");
  doc->add_option("--doc", doc_id, "Document id")->required();
  doc->add_option("files", files, "Score files")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Compare engine scores with the reference implementation");
  std::string verify_list = "uzzi,lee,foster,wang,disruption";
  verify->add_option("--indicators", verify_list, "Comma-separated indicators")->capture_default_str();
  verify->add_option("--on", on, "journals | keywords")->capture_default_str();
  verify->add_option("--year", year, "Focal year")->required();
  verify->add_option("--samples", samples, "Uzzi samples")->capture_default_str();
  verify->add_option("--resolution", resolution, "Foster resolution")->capture_default_str();
  verify->add_option("--b", backward, "Wang backward window")->capture_default_str();
  verify->add_option("--f", forward, "Wang forward window")->capture_default_str();
  verify->add_option("--reuse", reuse, "Wang reuse threshold")->capture_default_str();
  verify->add_option("--embeddings", embeddings_path, "Vectors for shibayama");
  verify->add_option("--field", field, "title | abstract")->capture_default_str();
  verify->add_option("--q", q, "Shibayama percentile")->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Time indicators across synthetic corpus sizes");
  std::string sizes_text = "1e2,1e3", bench_list = "lee,uzzi";
  bench->add_option("--sizes", sizes_text, "Ascending corpus sizes")->capture_default_str();
  bench->add_option("--indicators", bench_list, "lee, uzzi[:s], foster, wang, shibayama, disruption")
      ->capture_default_str();
  bench->add_option("--entities", sp.n_entities, "Vocabulary size")->capture_default_str();
  bench->add_option("--mean-refs", sp.mean_refs, "Mean references per document")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFailure;
  }

  Run run(g, join_args(argc, argv));
  try {
    const auto years = parse_years(g.years);

    if (*ingest) {
      IngestOptions opts;
      opts.year_range = years;
      IngestReport rep;
      if (g.corpus.empty()) throw Error(ErrorCode::InvalidArgument, "--corpus is required");
      bool hit = false;
      auto store = g.no_cache ? load_corpus(g.corpus, opts, &rep) : load_corpus_cached(g.corpus, opts, &rep, &hit);
      run.phase("load");
      run.manifest.input_digests[g.corpus] = hex64(store.provenance().input_digest);
      run.manifest.fingerprint = "ingest{" + opts.fingerprint() + "}";
      const auto span = store.span();
      nlohmann::ordered_json summary;
      summary["documents"] = store.size();
      summary["lines"] = rep.lines;
      summary["skipped"] = rep.skipped;
      summary["duplicates"] = rep.duplicates;
      summary["warnings"] = rep.warnings;
      summary["cache_hit"] = hit;
      if (span) summary["years"] = {span->first, span->second};
      const auto citations = build_citation_graph(store);
      summary["citation_edges"] = citations.edge_count();
      std::size_t resolved = 0, total = 0;
      for (std::uint32_t n = 0; n < citations.node_count(); ++n) {
        resolved += citations.resolved_ref_count(n);
        total += citations.total_ref_count(n);
      }
      summary["resolved_references"] = resolved;
      summary["total_references"] = total;
      summary["messages"] = rep.messages;
      const auto path = run.out("ingest_report.json");
      std::ofstream(path) << summary.dump(2) << '\n';
      write_manifest(path, run.manifest);
      std::cout << summary.dump(2) << '\n';
      return rep.skipped > 0 ? kExitPartial : kExitOk;
    }

    if (*cooc_build) {
      auto store = open_corpus(run, std::nullopt);
      const auto kind = parse_entity_kind(cooc_on);
      const auto span = years ? years : store.span();
      if (!span) throw Error(ErrorCode::NoValidRecords, "corpus has no documents");
      const auto graph = window_graph(store, kind, span->first, span->second, g.threads);
      run.phase("build");
      run.manifest.fingerprint += ";cooc{on=" + cooc_on + "}";
      const auto path = run.out("cooc_" + std::string(to_string(kind)) + "_" + std::to_string(span->first) + "_" +
                                std::to_string(span->second) + ".tsv");
      write_graph_file(graph, path);
      run.phase("write");
      write_manifest(path, run.manifest);
      std::cout << path << " (" << graph.node_count() << " nodes, " << graph.edge_count() << " edges, N="
                << graph.total_weight() << ")\n";
      return finish(run);
    }

    if (*novelty) {
      if (*shib) {
        auto store = open_corpus(run, years);
        const auto tf = parse_text_field(field);
        auto emb = load_embeddings(embeddings_path);
        run.manifest.input_digests[embeddings_path] = hex64(file_digest(embeddings_path));
        run.phase("embeddings");
        std::size_t skipped = 0;
        auto records = shibayama_year(store, emb, tf, q, year, g.threads, &skipped);
        run.phase("score");
        if (skipped > 0) {
          run.partial = true;
          std::cerr << "warning: " << skipped << " documents with fewer than two resolvable references skipped\n";
        }
        run.manifest.fingerprint += ";shibayama{field=" + field + ";" + (records.empty() ? "" : records[0].params) + "}";
        emit_scores(run, score_file_name("shibayama", to_string(tf), year), records);
        return finish(run);
      }
      auto store = open_corpus(run, years);
      const auto kind = parse_entity_kind(on);
      std::string name;
      std::vector<ScoreRecord> records;
      if (*uzzi) {
        UzziParams p{kind, year, samples, g.seed, g.threads};
        name = "uzzi";
        run.manifest.fingerprint += ";uzzi{" + p.fingerprint() + "}";
        records = uzzi_scores(store, p).records;
      } else if (*lee) {
        name = "lee";
        run.manifest.fingerprint += ";lee{}";
        records = lee_commonness(store, kind, year, g.threads).records;
      } else if (*foster) {
        FosterParams p{kind, year, resolution, g.seed, g.threads};
        name = "foster";
        run.manifest.fingerprint += ";foster{" + p.fingerprint() + "}";
        records = foster_bridging(store, p).records;
      } else {
        WangParams p{kind, year, backward, forward, reuse, g.threads};
        name = "wang";
        run.manifest.fingerprint += ";wang{" + p.fingerprint() + "}";
        auto result = wang_novelty(store, p);
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
        records = std::move(result.records);
      }
      run.phase("score");
      emit_scores(run, score_file_name(name, to_string(kind), year), records);
      return finish(run);
    }

    if (*disr) {
      auto store = open_corpus(run, years);
      auto measures = measures_text.empty() ? all_disruption_measures() : split_list(measures_text);
      const auto ls = l_values_for(measures);
      const auto graph = build_citation_graph(store);
      run.phase("graph");
      std::vector<std::uint32_t> nodes;
      if (disr_year) {
        auto it = store.year_index().find(*disr_year);
        if (it == store.year_index().end()) throw Error(ErrorCode::NoDocuments, "no documents in the given year");
        nodes = it->second;
      }
      std::string params = "measures=";
      for (std::size_t i = 0; i < measures.size(); ++i) params += (i ? "," : "") + measures[i];
      run.manifest.fingerprint += ";disruption{" + params + "}";
      std::vector<ScoreRecord> records;
      for (auto& rec : disruption_batch(graph, nodes, ls, g.threads)) {
        rec.year = store.find(rec.doc_id)->year;
        records.push_back(to_score_record(rec, measures, params));
      }
      run.phase("score");
      const std::string file =
          disr_year ? score_file_name("disruption", "citations", *disr_year) : "disruption_citations_all.jsonl";
      emit_scores(run, file, records);
      return finish(run);
    }

    if (*synth) {
      if (years) {
        sp.year_lo = years->first;
        sp.year_hi = years->second;
      }
      sp.seed = g.seed;
      auto corpus = synth_corpus(sp);
      run.phase("generate");
      const auto base = run.out(prefix);
      write_synth(corpus, base);
      run.phase("write");
      run.manifest.fingerprint = "synth{" + sp.fingerprint() + "}";
      write_manifest(base + ".jsonl", run.manifest);
      std::cout << base << ".jsonl (" << corpus.documents.size() << " documents)\n";
      return kExitOk;
    }

    if (*report) {
      std::vector<ScoreSet> sets;
      std::vector<std::string> picks;
      for (const auto& f : files) {
        std::string path = f, pick;
        if (*correlate) {
          if (const auto at = f.rfind('@'); at != std::string::npos && !fs::exists(f)) {
            path = f.substr(0, at);
            pick = f.substr(at + 1);
          }
        }
        sets.push_back(load_score_set(path));
        picks.push_back(pick);
        run.manifest.input_digests[path] = hex64(file_digest(path));
      }
      run.phase("load");
      if (*trends) {
        const auto rows = report_trends(sets, score_names);
        const auto csv = run.out("trends.csv");
        std::ofstream(csv) << trends_csv(rows);
        std::ofstream(run.out("trends.json")) << trends_json(rows);
        run.manifest.fingerprint = "report-trends";
        write_manifest(csv, run.manifest);
        std::cout << trends_csv(rows);
      } else if (*correlate) {
        std::vector<ScoreSeries> series;
        for (std::size_t i = 0; i < sets.size(); ++i) series.push_back(series_from(sets[i], picks[i]));
        const auto m = report_correlation(series);
        const auto csv = run.out("correlation.csv");
        std::ofstream(csv) << correlation_csv(m);
        std::ofstream(run.out("correlation.json")) << correlation_json(m);
        run.manifest.fingerprint = "report-correlate";
        write_manifest(csv, run.manifest);
        std::cout << correlation_csv(m);
      } else {
        const auto blocks = report_doc(doc_id, sets);
        const auto csv = run.out("doc_" + doc_id + ".csv");
        std::ofstream(csv) << doc_csv(doc_id, blocks);
        run.manifest.fingerprint = "report-doc{" + doc_id + "}";
        write_manifest(csv, run.manifest);
        std::cout << doc_csv(doc_id, blocks);
      }
      return kExitOk;
    }

    if (*verify) {
      auto store = open_corpus(run, years);
      std::optional<EmbeddingStore> emb;
      if (!embeddings_path.empty()) emb = load_embeddings(embeddings_path);
      VerifyOptions o;
      o.kind = parse_entity_kind(on);
      o.year = year;
      o.samples = samples;
      o.seed = g.seed;
      o.resolution = resolution;
      o.backward = backward;
      o.forward = forward;
      o.reuse = reuse;
      o.embeddings = emb ? &*emb : nullptr;
      o.field = parse_text_field(field);
      o.q = q;
      o.threads = g.threads;
      bool all_ok = true;
      for (const auto& ind : split_list(verify_list)) {
        const auto r = verify_indicator(ind, store, o);
        std::cout << describe(r);
        all_ok = all_ok && r.ok();
      }
      return all_ok ? finish(run) : kExitFailure;
    }

    if (*bench) {
      BenchParams bp;
      for (const auto& s : split_list(sizes_text)) bp.sizes.push_back(static_cast<std::size_t>(std::stod(s)));
      bp.indicators = split_list(bench_list);
      bp.seed = g.seed;
      bp.threads = g.threads;
      if (years) {
        sp.year_lo = years->first;
        sp.year_hi = years->second;
      }
      bp.corpus = sp;
      const auto rep = run_bench(bp);
      run.phase("bench");
      const auto csv = run.out("bench.csv");
      std::ofstream(csv) << bench_csv(rep);
      run.manifest.fingerprint = "bench{" + sp.fingerprint() + ";sizes=" + sizes_text + ";indicators=" + bench_list + "}";
      write_manifest(csv, run.manifest);
      std::cout << bench_csv(rep);
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
