#include "bibnov/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "bibnov/errors.hpp"
#include "bibnov/scorefile.hpp"
#include "bibnov/stats.hpp"

namespace bibnov {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

ScoreSet load_score_set(const std::string& path) {
  return {std::filesystem::path(path).stem().string(), read_score_file(path)};
}

std::vector<TrendRow> report_trends(const std::vector<ScoreSet>& sets, const std::vector<std::string>& score_filter) {
  using Key = std::tuple<std::string, std::string, int, std::string>;
  std::map<Key, std::pair<std::vector<double>, std::size_t>> groups;
  for (const auto& set : sets)
    for (const auto& r : set.records)
      for (const auto& s : r.scores) {
        if (!score_filter.empty() && std::find(score_filter.begin(), score_filter.end(), s.name) == score_filter.end())
          continue;
        auto& g = groups[{r.indicator, r.entity, r.year, s.name}];
        if (s.value)
          g.first.push_back(*s.value);
        else
          ++g.second;
      }
  std::vector<TrendRow> rows;
  for (auto& [key, g] : groups) {
    if (g.first.empty()) continue;
    TrendRow row;
    std::tie(row.indicator, row.entity, row.year, row.score) = key;
    std::sort(g.first.begin(), g.first.end());
    row.count = g.first.size();
    row.undefined = g.second;
    row.mean = mean(g.first);
    row.std = population_std(g.first);
    row.percentiles = standard_percentiles(g.first);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::NoScores, "no defined scores in the given files");
  return rows;
}

std::string trends_csv(const std::vector<TrendRow>& rows) {
  std::ostringstream out;
  out << "indicator,entity,year,score,count,undefined,mean,std";
  for (double q : kStandardPercentiles) out << ",p" << q;
  out << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.indicator) << ',' << csv_field(r.entity) << ',' << r.year << ',' << csv_field(r.score) << ','
        << r.count << ',' << r.undefined << ',' << fmt(r.mean) << ',' << fmt(r.std);
    for (double p : r.percentiles) out << ',' << fmt(p);
    out << '\n';
  }
  return out.str();
}

std::string trends_json(const std::vector<TrendRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["indicator"] = r.indicator;
    o["entity"] = r.entity;
    o["year"] = r.year;
    o["score"] = r.score;
    o["count"] = r.count;
    o["undefined"] = r.undefined;
    o["mean"] = r.mean;
    o["std"] = r.std;
    nlohmann::ordered_json pct;
    for (std::size_t i = 0; i < r.percentiles.size(); ++i) pct[fmt(kStandardPercentiles[i])] = r.percentiles[i];
    o["percentiles"] = std::move(pct);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

ScoreSeries series_from(const ScoreSet& set, const std::string& score) {
  std::string name = score;
  if (name.empty()) {
    for (const auto& r : set.records)
      if (!r.scores.empty()) {
        name = r.scores.front().name;
        break;
      }
  }
  ScoreSeries out;
  out.label = set.label + ":" + name;
  std::map<std::string, std::optional<double>> by_doc;
  for (const auto& r : set.records)
    if (const auto* v = r.score(name)) by_doc[r.doc_id] = *v;
  out.values.assign(by_doc.begin(), by_doc.end());
  return out;
}

CorrelationMatrix report_correlation(const std::vector<ScoreSeries>& series) {
  if (series.size() < 2) throw Error(ErrorCode::InvalidArgument, "correlation needs at least two score series");
  const std::size_t n = series.size();
  CorrelationMatrix m;
  for (const auto& s : series) m.labels.push_back(s.label);
  m.pearson.assign(n, std::vector<std::optional<double>>(n));
  m.spearman.assign(n, std::vector<std::optional<double>>(n));
  m.overlap.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    m.pearson[a][a] = 1.0;
    m.spearman[a][a] = 1.0;
    m.overlap[a][a] = static_cast<std::size_t>(
        std::count_if(series[a].values.begin(), series[a].values.end(), [](const auto& v) { return v.second.has_value(); }));
    for (std::size_t b = a + 1; b < n; ++b) {
      std::vector<double> x, y;
      const auto& va = series[a].values;
      const auto& vb = series[b].values;
      std::size_t i = 0, j = 0;
      while (i < va.size() && j < vb.size()) {
        if (va[i].first < vb[j].first) {
          ++i;
        } else if (vb[j].first < va[i].first) {
          ++j;
        } else {
          if (va[i].second && vb[j].second) {
            x.push_back(*va[i].second);
            y.push_back(*vb[j].second);
          }
          ++i;
          ++j;
        }
      }
      if (x.empty())
        throw Error(ErrorCode::NoOverlap, series[a].label + " and " + series[b].label + " share no scored document");
      m.overlap[a][b] = m.overlap[b][a] = x.size();
      m.pearson[a][b] = m.pearson[b][a] = pearson(x, y);
      m.spearman[a][b] = m.spearman[b][a] = spearman(x, y);
    }
  }
  return m;
}

std::string correlation_csv(const CorrelationMatrix& m) {
  std::ostringstream out;
  out << "method,row,col,value,overlap\n";
  const char* names[] = {"pearson", "spearman"};
  const std::vector<std::vector<std::optional<double>>>* mats[] = {&m.pearson, &m.spearman};
  for (int k = 0; k < 2; ++k)
    for (std::size_t a = 0; a < m.labels.size(); ++a)
      for (std::size_t b = 0; b < m.labels.size(); ++b)
        out << names[k] << ',' << csv_field(m.labels[a]) << ',' << csv_field(m.labels[b]) << ','
            << fmt((*mats[k])[a][b]) << ',' << m.overlap[a][b] << '\n';
  return out.str();
}

std::string correlation_json(const CorrelationMatrix& m) {
  auto matrix = [](const std::vector<std::vector<std::optional<double>>>& v) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : v) {
      auto r = nlohmann::ordered_json::array();
      for (const auto& x : row) r.push_back(opt_json(x));
      arr.push_back(std::move(r));
    }
    return arr;
  };
  nlohmann::ordered_json o;
  o["labels"] = m.labels;
  o["pearson"] = matrix(m.pearson);
  o["spearman"] = matrix(m.spearman);
  o["overlap"] = m.overlap;
  return o.dump(2) + "\n";
}

std::vector<DocBlock> report_doc(const std::string& doc_id, const std::vector<ScoreSet>& sets) {
  std::vector<DocBlock> blocks;
  for (const auto& set : sets)
    for (const auto& r : set.records)
      if (r.doc_id == doc_id) blocks.push_back({r.indicator, r.entity, r.year, r.params, r.scores, r.distribution});
  if (blocks.empty()) throw Error(ErrorCode::UnknownDocument, "no scores for document " + doc_id);
  return blocks;
}

std::string doc_csv(const std::string& doc_id, const std::vector<DocBlock>& blocks) {
  std::ostringstream out;
  out << "doc_id,indicator,entity,year,kind,name,value\n";
  for (const auto& b : blocks) {
    const std::string prefix = csv_field(doc_id) + ',' + csv_field(b.indicator) + ',' + csv_field(b.entity) + ',' +
                               std::to_string(b.year) + ',';
    for (const auto& s : b.scores) out << prefix << "score," << csv_field(s.name) << ',' << fmt(s.value) << '\n';
    for (std::size_t i = 0; i < b.distribution.size(); ++i)
      out << prefix << "distribution," << i << ',' << fmt(b.distribution[i]) << '\n';
  }
  return out.str();
}

}  // namespace bibnov
