#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bibnov/score.hpp"

namespace bibnov {

inline constexpr const char* kEngineVersion = "1.0.0";

/// Provenance written beside every output file. Two runs whose manifests
/// agree (ignoring phase timings and thread count) emit identical payloads.
struct RunManifest {
  std::string command_line;
  std::string fingerprint;
  std::map<std::string, std::string> input_digests;  // path -> hex digest
  std::uint64_t seed = 0;
  int threads = 1;
  std::string version = kEngineVersion;
  std::vector<std::pair<std::string, double>> phase_seconds;
};

std::string score_file_name(std::string_view indicator, std::string_view entity, int year);
std::string manifest_path_for(const std::string& output_path);

std::string to_json_line(const ScoreRecord& record);
ScoreRecord parse_score_line(std::string_view line);

void write_score_file(const std::string& path, const std::vector<ScoreRecord>& records);
std::vector<ScoreRecord> read_score_file(const std::string& path);

void write_manifest(const std::string& output_path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& output_path);

}  // namespace bibnov
