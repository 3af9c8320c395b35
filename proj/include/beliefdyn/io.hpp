#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "beliefdyn/engine.hpp"
#include "beliefdyn/metrics.hpp"
#include "beliefdyn/serde.hpp"
#include "beliefdyn/types.hpp"
#include "beliefdyn/version.hpp"

namespace beliefdyn {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed 6-decimal rendering used by every CSV so outputs are byte-stable.
inline std::string fmt6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
}

// Population files are JSON Lines, one profile per line with fields
// {"id","topic","initial_stance","entropy"}.
inline std::vector<AgentProfile> parse_population_jsonl(std::istream& in,
                                                        const std::string& name) {
  std::vector<AgentProfile> population;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      population.push_back(json::parse(line).get<AgentProfile>());
    } catch (const std::exception& err) {
      throw IoError(name + ":" + std::to_string(line_number) + ": " +
                    err.what());
    }
  }
  return population;
}

inline std::vector<AgentProfile> load_population_jsonl(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open population file " + path.string());
  return parse_population_jsonl(in, path.string());
}

inline void save_population_jsonl(const std::filesystem::path& path,
                                  const std::vector<AgentProfile>& population) {
  std::ostringstream out;
  for (const AgentProfile& profile : population) {
    out << json(profile).dump() << "\n";
  }
  write_file(path, out.str());
}

// Loads a simulation config document. "population" may be an inline array or
// a path string under "population_file", resolved relative to the config.
inline SimulationConfig load_simulation_config(
    const std::filesystem::path& path) {
  json document;
  try {
    document = json::parse(read_file(path));
  } catch (const json::exception& err) {
    throw IoError(path.string() + ": " + err.what());
  }
  if (document.contains("population_file") && !document.contains("population")) {
    const std::filesystem::path pop_path =
        path.parent_path() / document.at("population_file").get<std::string>();
    document["population"] = json(load_population_jsonl(pop_path));
    document.erase("population_file");
  }
  try {
    return document.get<SimulationConfig>();
  } catch (const std::exception& err) {
    throw IoError(path.string() + ": " + err.what());
  }
}

// Trace files are JSON Lines: a header line with digest/seed metadata
// followed by one record per round.
inline void write_trace_jsonl(std::ostream& out, const SimulationTrace& trace) {
  const json header{{"type", "header"},
                    {"tool_version", kVersion},
                    {"config_digest", trace.config_digest},
                    {"seed", trace.seed},
                    {"records", trace.records.size()}};
  out << header.dump() << "\n";
  for (const RoundRecord& record : trace.records) {
    out << json(record).dump() << "\n";
  }
}

inline void save_trace_jsonl(const std::filesystem::path& path,
                             const SimulationTrace& trace) {
  std::ostringstream out;
  write_trace_jsonl(out, trace);
  write_file(path, out.str());
}

inline SimulationTrace parse_trace_jsonl(std::istream& in,
                                         const std::string& name) {
  SimulationTrace trace;
  std::string line;
  int line_number = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& err) {
      throw IoError(name + ":" + std::to_string(line_number) + ": " +
                    err.what());
    }
    if (!saw_header) {
      if (!j.is_object() || j.value("type", "") != "header") {
        throw IoError(name + ":1: expected trace header line");
      }
      trace.config_digest = j.value("config_digest", "");
      trace.seed = j.value("seed", std::uint64_t{0});
      saw_header = true;
      continue;
    }
    try {
      trace.records.push_back(j.get<RoundRecord>());
    } catch (const std::exception& err) {
      throw IoError(name + ":" + std::to_string(line_number) + ": " +
                    err.what());
    }
  }
  if (!saw_header) throw IoError(name + ": empty trace file");
  return trace;
}

inline SimulationTrace load_trace_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file " + path.string());
  return parse_trace_jsonl(in, path.string());
}

// Per-round human stance shares, one row per round including round 0.
inline std::string summary_csv(const SimulationTrace& trace) {
  std::ostringstream out;
  out << "round,favor_share,ni_share,against_share\n";
  for (const RoundRecord& record : trace.records) {
    const StanceDistribution d = distribution_of(record.stances);
    out << record.round << "," << fmt6(d.favor) << "," << fmt6(d.ni) << ","
        << fmt6(d.against) << "\n";
  }
  return out.str();
}

inline std::string transition_csv(const TransitionMatrix& matrix) {
  std::ostringstream out;
  out << "from,favor,ni,against,support\n";
  for (Stance from : kStances) {
    out << to_token(from);
    for (Stance to : kStances) {
      out << "," << fmt6(matrix.at(from, to));
    }
    out << "," << matrix.support[static_cast<int>(from)] << "\n";
  }
  return out.str();
}

// Two-column stance CSV (gold, predicted) -> confusion matrix. An optional
// "gold,predicted" header line is allowed.
inline ConfusionMatrix load_agreement_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  ConfusionMatrix cm;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_number == 1 && line == "gold,predicted") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw IoError(path.string() + ":" + std::to_string(line_number) +
                    ": expected two comma-separated stance tokens");
    }
    const auto gold = stance_from_token(line.substr(0, comma));
    const auto predicted = stance_from_token(line.substr(comma + 1));
    if (!gold || !predicted) {
      throw IoError(path.string() + ":" + std::to_string(line_number) +
                    ": unknown stance token in \"" + line + "\"");
    }
    ++cm.at(*gold, *predicted);
  }
  if (cm.total() == 0) {
    throw IoError(path.string() + ": no stance pairs found");
  }
  return cm;
}

}  // namespace beliefdyn
