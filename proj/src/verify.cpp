#include "bibnov/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "bibnov/disruption.hpp"
#include "bibnov/errors.hpp"
#include "bibnov/novelty.hpp"
#include "bibnov/oracle.hpp"

namespace bibnov {

namespace {

std::vector<ScoreRecord> engine_records(const std::string& indicator, const CorpusStore& store,
                                        const VerifyOptions& o) {
  if (indicator == "uzzi") return uzzi_scores(store, {o.kind, o.year, o.samples, o.seed, o.threads}).records;
  if (indicator == "lee") return lee_commonness(store, o.kind, o.year, o.threads).records;
  if (indicator == "foster") return foster_bridging(store, {o.kind, o.year, o.resolution, o.seed, o.threads}).records;
  if (indicator == "wang") {
    WangParams w{o.kind, o.year, o.backward, o.forward, o.reuse, o.threads};
    return wang_novelty(store, w).records;
  }
  if (indicator == "shibayama") {
    if (!o.embeddings) throw Error(ErrorCode::InvalidArgument, "shibayama verification needs embeddings");
    return shibayama_year(store, *o.embeddings, o.field, o.q, o.year, o.threads);
  }
  if (indicator == "disruption") {
    const auto graph = build_citation_graph(store);
    std::vector<std::uint32_t> nodes;
    if (auto it = store.year_index().find(o.year); it != store.year_index().end()) nodes = it->second;
    const auto& measures = all_disruption_measures();
    std::vector<ScoreRecord> out;
    if (nodes.empty()) return out;
    for (auto rec : disruption_batch(graph, nodes, l_values_for(measures), o.threads)) {
      rec.year = o.year;
      out.push_back(to_score_record(rec, measures, ""));
    }
    return out;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown indicator " + indicator);
}

void fmt_opt(std::ostream& out, const std::optional<double>& v) {
  if (v)
    out << *v;
  else
    out << "null";
}

}  // namespace

bool scores_agree(double a, double b, bool exact) {
  if (exact) return a == b;
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

VerifyResult verify_indicator(const std::string& indicator, const CorpusStore& store, const VerifyOptions& o) {
  oracle::Params p;
  p.kind = o.kind;
  p.year = o.year;
  p.samples = o.samples;
  p.seed = o.seed;
  p.uzzi_mode = oracle::UzziMode::Sample;
  p.resolution = o.resolution;
  p.backward = o.backward;
  p.forward = o.forward;
  p.reuse = o.reuse;
  p.embeddings = o.embeddings;
  p.field = o.field;
  p.q = o.q;
  p.size_guard = o.size_guard;
  const auto expected = oracle::score(indicator, store, p);

  VerifyResult result;
  result.indicator = indicator;
  result.exact = indicator == "disruption" || indicator == "foster";
  std::map<std::string, oracle::ScoreMap> actual;
  for (const auto& r : engine_records(indicator, store, o))
    for (const auto& s : r.scores) actual[r.doc_id][s.name] = s.value;

  for (const auto& [doc, scores] : expected.scores) {
    auto it = actual.find(doc);
    ++result.documents;
    for (const auto& [name, value] : scores) {
      ++result.values;
      if (it == actual.end()) {
        result.mismatches.push_back({doc, name, std::nullopt, value, true, false});
        continue;
      }
      auto jt = it->second.find(name);
      if (jt == it->second.end()) {
        result.mismatches.push_back({doc, name, std::nullopt, value, true, false});
        continue;
      }
      const auto& got = jt->second;
      const bool same = (!got && !value) || (got && value && scores_agree(*got, *value, result.exact));
      if (!same) result.mismatches.push_back({doc, name, got, value, false, false});
    }
  }
  for (const auto& [doc, scores] : actual)
    if (!expected.scores.count(doc))
      for (const auto& [name, value] : scores) result.mismatches.push_back({doc, name, value, std::nullopt, false, true});
  return result;
}

std::string describe(const VerifyResult& r, std::size_t max_lines) {
  std::ostringstream out;
  out.precision(17);
  out << r.indicator << ": " << (r.ok() ? "OK" : "MISMATCH") << " (" << r.documents << " documents, " << r.values
      << " values, " << r.mismatches.size() << " mismatches, " << (r.exact ? "exact" : "rel 1e-9") << ")\n";
  for (std::size_t i = 0; i < r.mismatches.size() && i < max_lines; ++i) {
    const auto& m = r.mismatches[i];
    out << "  " << m.doc_id << " " << m.score << ": engine=";
    if (m.missing_in_engine)
      out << "missing";
    else
      fmt_opt(out, m.engine);
    out << " oracle=";
    if (m.missing_in_oracle)
      out << "missing";
    else
      fmt_opt(out, m.oracle);
    out << '\n';
  }
  return out.str();
}

}  // namespace bibnov
