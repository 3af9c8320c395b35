#pragma once

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "beliefdyn/experiments.hpp"
#include "beliefdyn/io.hpp"

namespace beliefdyn {

// Flat CSV views of a report, designed for external plotting.

inline std::string report_terminal_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "scenario,leg,parameter,value,digest,n,"
         "favor_mean,favor_sd,ni_mean,ni_sd,against_mean,against_sd,"
         "target_stance,target_delta_mean_pp,target_delta_sd_pp\n";
  auto row = [&](const LegResult& leg) {
    out << report.scenario << "," << leg.label << "," << leg.parameter << ","
        << (leg.value.is_null() ? "" : leg.value.dump()) << "," << leg.digest
        << "," << leg.replicates;
    for (Stance s : kStances) {
      out << "," << fmt6(leg.terminal.mean[s]) << ","
          << fmt6(leg.terminal.sd[s]);
    }
    out << "," << to_token(leg.target_stance) << ","
        << fmt6(leg.target_delta_mean_pp) << "," << fmt6(leg.target_delta_sd_pp)
        << "\n";
  };
  if (report.baseline) row(*report.baseline);
  for (const LegResult& leg : report.legs) row(leg);
  return out.str();
}

inline std::string report_trajectory_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "scenario,leg,round,favor_mean,ni_mean,against_mean\n";
  auto rows = [&](const LegResult& leg) {
    for (const auto& point : leg.trajectory) {
      out << report.scenario << "," << leg.label << ","
          << static_cast<long long>(point[0]) << "," << fmt6(point[1]) << ","
          << fmt6(point[2]) << "," << fmt6(point[3]) << "\n";
    }
  };
  if (report.baseline) rows(*report.baseline);
  for (const LegResult& leg : report.legs) rows(leg);
  return out.str();
}

inline std::string report_transition_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "scenario,leg,from,favor,ni,against,support\n";
  auto rows = [&](const LegResult& leg) {
    for (Stance from : kStances) {
      out << report.scenario << "," << leg.label << "," << to_token(from);
      for (Stance to : kStances) {
        out << "," << fmt6(leg.transition.at(from, to));
      }
      out << "," << leg.transition.support[static_cast<int>(from)] << "\n";
    }
  };
  if (report.baseline) rows(*report.baseline);
  for (const LegResult& leg : report.legs) rows(leg);
  return out.str();
}

// Writes report.json plus the flat CSVs into out_dir. Existing report files
// are refused unless force is set.
inline void write_report_files(const ExperimentReport& report,
                               const std::filesystem::path& out_dir,
                               bool force, bool with_csv = true) {
  std::filesystem::create_directories(out_dir);
  const std::vector<std::pair<std::string, std::string>> files = [&] {
    std::vector<std::pair<std::string, std::string>> f;
    f.emplace_back("report.json", json(report).dump(2) + "\n");
    if (with_csv) {
      f.emplace_back("terminal.csv", report_terminal_csv(report));
      f.emplace_back("trajectories.csv", report_trajectory_csv(report));
      f.emplace_back("transitions.csv", report_transition_csv(report));
    }
    return f;
  }();
  for (const auto& [name, content] : files) {
    const auto path = out_dir / name;
    if (!force && std::filesystem::exists(path)) {
      throw IoError("refusing to overwrite " + path.string() +
                    " (use --force)");
    }
  }
  for (const auto& [name, content] : files) {
    write_file(out_dir / name, content);
  }
}

}  // namespace beliefdyn
