#include "bibnov/disruption.hpp"

#include <algorithm>
#include <set>

#include "bibnov/errors.hpp"
#include "bibnov/parallel.hpp"

namespace bibnov {

namespace {

std::size_t sorted_intersection_size(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  std::size_t n = 0;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

}  // namespace

CiterClassification classify_citers(std::uint32_t focal, const CitationGraph& graph, const std::vector<int>& l_values,
                                    CiterScratch& scratch) {
  if (focal >= graph.node_count()) throw Error(ErrorCode::UnknownDocument, "node " + std::to_string(focal));
  if (scratch.mark_.size() != graph.node_count()) {
    scratch.mark_.assign(graph.node_count(), 0);
    scratch.stamp_ = 0;
  }
  // Each call uses two fresh stamps: citer membership and K membership.
  if (scratch.stamp_ > 0xfffffff0U) {
    std::fill(scratch.mark_.begin(), scratch.mark_.end(), 0);
    scratch.stamp_ = 0;
  }
  const std::uint32_t citer_mark = ++scratch.stamp_;
  const std::uint32_t k_mark = ++scratch.stamp_;
  auto& mark = scratch.mark_;

  CiterClassification c;
  c.doc_id = graph.id(focal);
  const auto refs = graph.references(focal);
  const auto citers = graph.citers(focal);
  c.ref_count = static_cast<std::uint32_t>(refs.size());
  c.citer_count = static_cast<std::uint32_t>(citers.size());
  for (int l : l_values) {
    c.i_counts[l] = 0;
    c.j_counts[l] = 0;
  }

  for (auto v : citers) mark[v] = citer_mark;
  mark[focal] = citer_mark;

  for (auto v : citers) {
    const auto in_v = graph.references(v);
    const auto shared = sorted_intersection_size(in_v, refs);
    c.shared_ref_total += shared;
    for (int l : l_values) {
      if (shared >= static_cast<std::size_t>(l))
        ++c.j_counts[l];
      else
        ++c.i_counts[l];
    }
    for (auto r : in_v)
      if (r != focal && mark[r] == citer_mark && r != v) {
        ++c.deep_citers;
        break;
      }
  }

  for (auto r : refs)
    for (auto v : graph.citers(r))
      if (mark[v] != citer_mark && mark[v] != k_mark) {
        mark[v] = k_mark;
        ++c.k_count;
      }
  return c;
}

CiterClassification classify_citers(const std::string& focal_id, const CitationGraph& graph,
                                    const std::vector<int>& l_values) {
  auto idx = graph.index_of(focal_id);
  if (!idx) throw Error(ErrorCode::UnknownDocument, focal_id);
  CiterScratch scratch(graph.node_count());
  return classify_citers(*idx, graph, l_values, scratch);
}

DisruptionRecord disruption_from(const CiterClassification& c) {
  DisruptionRecord r;
  r.doc_id = c.doc_id;
  r.citer_count = c.citer_count;
  for (const auto& [l, j] : c.j_counts) {
    const auto i = static_cast<double>(c.i_counts.at(l));
    const auto jd = static_cast<double>(j);
    const auto k = static_cast<double>(c.k_count);
    r.di[l] = (i + jd + k) > 0 ? std::optional<double>((i - jd) / (i + jd + k)) : std::nullopt;
    r.di_nok[l] = (i + jd) > 0 ? std::optional<double>((i - jd) / (i + jd)) : std::nullopt;
  }
  if (c.citer_count > 0) {
    const auto n = static_cast<double>(c.citer_count);
    r.depth = static_cast<double>(c.deep_citers) / n;
    r.breadth = static_cast<double>(c.citer_count - c.deep_citers) / n;
    r.dependence = static_cast<double>(c.shared_ref_total) / n;
    if (c.i_counts.count(1)) r.independence = static_cast<double>(c.i_counts.at(1)) / n;
  }
  return r;
}

DisruptionRecord disruption_scores(const std::string& focal_id, const CitationGraph& graph,
                                   const std::vector<int>& l_values) {
  auto ls = l_values;
  if (std::find(ls.begin(), ls.end(), 1) == ls.end()) ls.push_back(1);
  auto rec = disruption_from(classify_citers(focal_id, graph, ls));
  auto idx = *graph.index_of(focal_id);
  rec.resolved_refs = graph.resolved_ref_count(idx);
  rec.total_refs = graph.total_ref_count(idx);
  return rec;
}

std::vector<DisruptionRecord> disruption_batch(const CitationGraph& graph, const std::vector<std::uint32_t>& nodes,
                                               const std::vector<int>& l_values, int threads) {
  auto ls = l_values;
  if (std::find(ls.begin(), ls.end(), 1) == ls.end()) ls.push_back(1);
  std::vector<std::uint32_t> targets = nodes;
  if (targets.empty())
    for (std::uint32_t i = 0; i < graph.node_count(); ++i) targets.push_back(i);
  std::vector<DisruptionRecord> out(targets.size());
  parallel_blocks(targets.size(), threads, [&](std::size_t begin, std::size_t end, unsigned) {
    CiterScratch scratch(graph.node_count());
    for (std::size_t k = begin; k < end; ++k) {
      out[k] = disruption_from(classify_citers(targets[k], graph, ls, scratch));
      out[k].resolved_refs = graph.resolved_ref_count(targets[k]);
      out[k].total_refs = graph.total_ref_count(targets[k]);
    }
  });
  return out;
}

std::vector<int> l_values_for(const std::vector<std::string>& measures) {
  std::set<int> ls{1};
  for (const auto& m : measures) {
    std::string digits;
    if (m.rfind("dinok", 0) == 0)
      digits = m.substr(5);
    else if (m.rfind("di", 0) == 0)
      digits = m.substr(2);
    else if (m == "depth" || m == "breadth" || m == "dependence" || m == "independence")
      continue;
    else
      throw Error(ErrorCode::InvalidArgument, "unknown disruption measure " + m);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || std::stoi(digits) < 1)
      throw Error(ErrorCode::InvalidArgument, "bad disruption measure " + m);
    ls.insert(std::stoi(digits));
  }
  return {ls.begin(), ls.end()};
}

ScoreRecord to_score_record(const DisruptionRecord& record, const std::vector<std::string>& measures,
                            const std::string& params) {
  ScoreRecord s;
  s.doc_id = record.doc_id;
  s.indicator = "disruption";
  s.entity = "citations";
  s.year = record.year;
  s.params = params;
  for (const auto& m : measures) {
    std::optional<double> v;
    if (m == "depth") v = record.depth;
    else if (m == "breadth") v = record.breadth;
    else if (m == "dependence") v = record.dependence;
    else if (m == "independence") v = record.independence;
    else if (m.rfind("dinok", 0) == 0) v = record.di_nok.at(std::stoi(m.substr(5)));
    else v = record.di.at(std::stoi(m.substr(2)));
    s.scores.push_back({m, v});
  }
  s.diagnostics = {{"citer_count", static_cast<double>(record.citer_count)},
                   {"resolved_refs", static_cast<double>(record.resolved_refs)},
                   {"total_refs", static_cast<double>(record.total_refs)}};
  return s;
}

}  // namespace bibnov
