#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bibnov/synth.hpp"

namespace bibnov {

struct BenchParams {
  std::vector<std::size_t> sizes;        // ascending
  std::vector<std::string> indicators;   // lee, uzzi[:s], foster, wang, shibayama, disruption
  std::uint64_t seed = 1;
  int threads = 1;
  SynthParams corpus;  // n_docs and seed are overridden per row
  bool warm_up = true;
};

struct BenchRow {
  std::string indicator;
  std::size_t size = 0;
  std::string params;
  int year = 0;
  double build_seconds = 0;  // synthesis + store construction
  double seconds = 0;        // timed indicator run
  long peak_rss_kb = 0;      // process high-water mark after the run
  std::size_t records = 0;
  std::string manifest;      // fingerprint of the row's run
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

/// Year used for a row: the middle of the synthetic span.
int bench_year(const SynthParams& corpus);

BenchReport run_bench(const BenchParams& params);
std::string bench_csv(const BenchReport& report);

}  // namespace bibnov
