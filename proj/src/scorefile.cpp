#include "bibnov/scorefile.hpp"

#include <fstream>

#include <json.hpp>

#include "bibnov/errors.hpp"

namespace bibnov {

using ojson = nlohmann::ordered_json;

std::string score_file_name(std::string_view indicator, std::string_view entity, int year) {
  return std::string(indicator) + "_" + std::string(entity) + "_" + std::to_string(year) + ".jsonl";
}

std::string manifest_path_for(const std::string& output_path) { return output_path + ".manifest.json"; }

std::string to_json_line(const ScoreRecord& r) {
  ojson obj;
  obj["doc_id"] = r.doc_id;
  obj["indicator"] = r.indicator;
  obj["entity"] = r.entity;
  obj["year"] = r.year;
  obj["params"] = r.params;
  ojson scores = ojson::object();
  for (const auto& s : r.scores) scores[s.name] = s.value ? ojson(*s.value) : ojson(nullptr);
  obj["scores"] = std::move(scores);
  if (!r.percentiles.empty()) obj["percentiles"] = r.percentiles;
  if (!r.distribution.empty()) obj["distribution"] = r.distribution;
  ojson diag = ojson::object();
  for (const auto& [k, v] : r.diagnostics) diag[k] = v;
  obj["diagnostics"] = std::move(diag);
  return obj.dump();
}

ScoreRecord parse_score_line(std::string_view line) {
  ojson obj;
  try {
    obj = ojson::parse(line);
  } catch (const ojson::parse_error& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
  try {
    ScoreRecord r;
    r.doc_id = obj.at("doc_id").get<std::string>();
    r.indicator = obj.at("indicator").get<std::string>();
    r.entity = obj.value("entity", "");
    r.year = obj.value("year", 0);
    r.params = obj.value("params", "");
    for (const auto& [name, v] : obj.at("scores").items())
      r.scores.push_back({name, v.is_null() ? std::nullopt : std::optional<double>(v.get<double>())});
    if (obj.contains("percentiles")) r.percentiles = obj["percentiles"].get<std::vector<double>>();
    if (obj.contains("distribution")) r.distribution = obj["distribution"].get<std::vector<double>>();
    if (obj.contains("diagnostics"))
      for (const auto& [k, v] : obj["diagnostics"].items()) r.diagnostics.emplace_back(k, v.get<double>());
    return r;
  } catch (const ojson::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
}

void write_score_file(const std::string& path, const std::vector<ScoreRecord>& records) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path);
  for (const auto& r : records) out << to_json_line(r) << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "short write " + path);
}

std::vector<ScoreRecord> read_score_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  std::vector<ScoreRecord> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(parse_score_line(line));
  return out;
}

void write_manifest(const std::string& output_path, const RunManifest& m) {
  ojson obj;
  obj["command_line"] = m.command_line;
  obj["fingerprint"] = m.fingerprint;
  obj["input_digests"] = m.input_digests;
  obj["seed"] = m.seed;
  obj["threads"] = m.threads;
  obj["version"] = m.version;
  ojson phases = ojson::object();
  for (const auto& [k, v] : m.phase_seconds) phases[k] = v;
  obj["phase_seconds"] = std::move(phases);
  obj["output"] = output_path;
  std::ofstream out(manifest_path_for(output_path), std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write manifest for " + output_path);
  out << obj.dump(2) << '\n';
}

RunManifest read_manifest(const std::string& output_path) {
  std::ifstream in(manifest_path_for(output_path));
  if (!in) throw Error(ErrorCode::IoFailure, "no manifest for " + output_path);
  auto obj = ojson::parse(in);
  RunManifest m;
  m.command_line = obj.value("command_line", "");
  m.fingerprint = obj.value("fingerprint", "");
  m.input_digests = obj.value("input_digests", std::map<std::string, std::string>{});
  m.seed = obj.value("seed", std::uint64_t{0});
  m.threads = obj.value("threads", 1);
  m.version = obj.value("version", "");
  if (obj.contains("phase_seconds"))
    for (const auto& [k, v] : obj["phase_seconds"].items()) m.phase_seconds.emplace_back(k, v.get<double>());
  return m;
}

}  // namespace bibnov
