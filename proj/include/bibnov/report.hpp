#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bibnov/score.hpp"

namespace bibnov {

/// Records loaded from one score file, labelled for reports.
struct ScoreSet {
  std::string label;
  std::vector<ScoreRecord> records;
};

ScoreSet load_score_set(const std::string& path);

struct TrendRow {
  std::string indicator;
  std::string entity;
  int year = 0;
  std::string score;
  std::size_t count = 0;      // defined values
  std::size_t undefined = 0;  // documents with a null score
  double mean = 0;
  double std = 0;  // population
  std::vector<double> percentiles;
};

/// Yearly summaries per (indicator, entity, year, score name). `score_filter`
/// limits the score names; empty keeps all. Throws NoScores when nothing
/// defined remains.
std::vector<TrendRow> report_trends(const std::vector<ScoreSet>& sets, const std::vector<std::string>& score_filter = {});
std::string trends_csv(const std::vector<TrendRow>& rows);
std::string trends_json(const std::vector<TrendRow>& rows);

/// One column of a correlation matrix: a score name drawn from a score set.
struct ScoreSeries {
  std::string label;
  std::vector<std::pair<std::string, std::optional<double>>> values;  // sorted by doc id
};

/// `score` empty selects the first score name of the set.
ScoreSeries series_from(const ScoreSet& set, const std::string& score = "");

struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<double>>> pearson;
  std::vector<std::vector<std::optional<double>>> spearman;
  std::vector<std::vector<std::size_t>> overlap;  // documents defined in both
};

/// Pairwise over documents defined in both series. Throws NoOverlap when a
/// pair shares no defined document, InvalidArgument for fewer than 2 series.
CorrelationMatrix report_correlation(const std::vector<ScoreSeries>& series);
std::string correlation_csv(const CorrelationMatrix& m);
std::string correlation_json(const CorrelationMatrix& m);

struct DocBlock {
  std::string indicator;
  std::string entity;
  int year = 0;
  std::string params;
  std::vector<NamedScore> scores;
  std::vector<double> distribution;
};

/// Every record for `doc_id`, one block per record. Throws UnknownDocument.
std::vector<DocBlock> report_doc(const std::string& doc_id, const std::vector<ScoreSet>& sets);
/// Long format: indicator,entity,year,kind,name,value
std::string doc_csv(const std::string& doc_id, const std::vector<DocBlock>& blocks);

}  // namespace bibnov
