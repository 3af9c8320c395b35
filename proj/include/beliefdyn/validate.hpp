#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "beliefdyn/types.hpp"

namespace beliefdyn {

enum class ValidationCode {
  EmptyPopulation,
  EntropyOutOfRange,
  DuplicateAgentId,
  BadRounds,
  BadReplicates,
  BadAgentCount,
  BadPostPeriod,
  BadActivationWindow,
  VisibilityOutOfRange,
  NonPositiveTemperature,
  NonPositiveSmoothing,
  BadFeedSize,
  NegativeWeight,
};

constexpr std::string_view to_string(ValidationCode c) {
  switch (c) {
    case ValidationCode::EmptyPopulation:
      return "EmptyPopulation";
    case ValidationCode::EntropyOutOfRange:
      return "EntropyOutOfRange";
    case ValidationCode::DuplicateAgentId:
      return "DuplicateAgentId";
    case ValidationCode::BadRounds:
      return "BadRounds";
    case ValidationCode::BadReplicates:
      return "BadReplicates";
    case ValidationCode::BadAgentCount:
      return "BadAgentCount";
    case ValidationCode::BadPostPeriod:
      return "BadPostPeriod";
    case ValidationCode::BadActivationWindow:
      return "BadActivationWindow";
    case ValidationCode::VisibilityOutOfRange:
      return "VisibilityOutOfRange";
    case ValidationCode::NonPositiveTemperature:
      return "NonPositiveTemperature";
    case ValidationCode::NonPositiveSmoothing:
      return "NonPositiveSmoothing";
    case ValidationCode::BadFeedSize:
      return "BadFeedSize";
    case ValidationCode::NegativeWeight:
      return "NegativeWeight";
  }
  return "Unknown";
}

struct ValidationIssue {
  ValidationCode code;
  std::string field;   // offending field, e.g. population[7].entropy (id "u7")
  double value = 0.0;  // offending numeric value where applicable
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }

  std::string to_string() const {
    std::ostringstream out;
    for (const auto& issue : issues) {
      out << beliefdyn::to_string(issue.code) << ": " << issue.message << "\n";
    }
    return out.str();
  }
};

namespace detail {

inline void add_issue(ValidationReport& report, ValidationCode code,
                      std::string field, double value, std::string message) {
  report.issues.push_back(
      {code, std::move(field), value, std::move(message)});
}

inline void check_weight(ValidationReport& report, std::string_view name,
                         double value) {
  if (!(std::isfinite(value) && value >= 0.0)) {
    add_issue(report, ValidationCode::NegativeWeight,
              "behavior." + std::string(name), value,
              "behavior." + std::string(name) + " = " + std::to_string(value) +
                  " must be finite and >= 0");
  }
}

}  // namespace detail

// Checks every type invariant and reports all violations at once.
inline ValidationReport validate_config(const SimulationConfig& config) {
  ValidationReport report;
  using detail::add_issue;

  if (config.population.empty()) {
    add_issue(report, ValidationCode::EmptyPopulation, "population", 0.0,
              "population must contain at least one profile");
  }
  if (config.rounds < 1) {
    add_issue(report, ValidationCode::BadRounds, "rounds", config.rounds,
              "rounds = " + std::to_string(config.rounds) + " must be >= 1");
  }
  if (config.replicates < 1) {
    add_issue(report, ValidationCode::BadReplicates, "replicates",
              config.replicates,
              "replicates = " + std::to_string(config.replicates) +
                  " must be >= 1");
  }

  std::unordered_set<std::string> seen_ids;
  for (std::size_t i = 0; i < config.population.size(); ++i) {
    const AgentProfile& profile = config.population[i];
    if (!(std::isfinite(profile.entropy) && profile.entropy >= 0.0 &&
          profile.entropy <= 1.0)) {
      add_issue(report, ValidationCode::EntropyOutOfRange,
                "population[" + std::to_string(i) + "].entropy (\"" +
                    profile.id + "\")",
                profile.entropy,
                "entropy of \"" + profile.id + "\" = " +
                    std::to_string(profile.entropy) + " outside [0, 1]");
    }
    if (!seen_ids.insert(profile.id).second) {
      add_issue(report, ValidationCode::DuplicateAgentId,
                "population[" + std::to_string(i) + "].id", 0.0,
                "duplicate agent id \"" + profile.id + "\"");
    }
  }

  if (config.intervention) {
    const InterventionConfig& iv = *config.intervention;
    if (iv.n_ai < 0) {
      add_issue(report, ValidationCode::BadAgentCount, "intervention.n_ai",
                iv.n_ai,
                "n_ai = " + std::to_string(iv.n_ai) + " must be >= 0");
    }
    if (iv.post_period < 1) {
      add_issue(report, ValidationCode::BadPostPeriod,
                "intervention.post_period", iv.post_period,
                "post_period = " + std::to_string(iv.post_period) +
                    " must be >= 1");
    }
    if (iv.activation_start < 0 || iv.activation_start >= iv.activation_end) {
      add_issue(report, ValidationCode::BadActivationWindow,
                "intervention.activation_start", iv.activation_start,
                "activation window [" + std::to_string(iv.activation_start) +
                    ", " + std::to_string(iv.activation_end) +
                    ") must satisfy 0 <= start < end");
    }
    if (!(std::isfinite(iv.visibility) && iv.visibility >= 0.0 &&
          iv.visibility <= 1.0)) {
      add_issue(report, ValidationCode::VisibilityOutOfRange,
                "intervention.visibility", iv.visibility,
                "visibility = " + std::to_string(iv.visibility) +
                    " outside [0, 1]");
    }
  }

  const BehaviorParams& bp = config.behavior;
  if (!(std::isfinite(bp.temperature) && bp.temperature > 0.0)) {
    add_issue(report, ValidationCode::NonPositiveTemperature,
              "behavior.temperature", bp.temperature,
              "temperature = " + std::to_string(bp.temperature) +
                  " must be > 0");
  }
  if (!(std::isfinite(bp.smoothing) && bp.smoothing > 0.0)) {
    add_issue(report, ValidationCode::NonPositiveSmoothing,
              "behavior.smoothing", bp.smoothing,
              "smoothing = " + std::to_string(bp.smoothing) + " must be > 0");
  }
  if (bp.feed_size < 1) {
    add_issue(report, ValidationCode::BadFeedSize, "behavior.feed_size",
              bp.feed_size,
              "feed_size = " + std::to_string(bp.feed_size) + " must be >= 1");
  }
  detail::check_weight(report, "w_social", bp.w_social);
  detail::check_weight(report, "w_inertia", bp.w_inertia);
  detail::check_weight(report, "compassion_gain", bp.compassion_gain);
  detail::check_weight(report, "condemnation_gain", bp.condemnation_gain);
  detail::check_weight(report, "condemnation_base", bp.condemnation_base);

  return report;
}

}  // namespace beliefdyn
