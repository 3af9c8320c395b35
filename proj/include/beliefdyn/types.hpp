#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "beliefdyn/stance.hpp"

namespace beliefdyn {

// One human-like agent: identity, starting belief, and persuadability.
// entropy = 0 means the agent never changes stance.
struct AgentProfile {
  std::string id;
  std::string topic;
  Stance initial_stance = Stance::NI;
  double entropy = 0.0;  // in [0, 1]

  friend bool operator==(const AgentProfile&, const AgentProfile&) = default;
};

struct Post {
  std::string author_id;
  int round = 0;
  Stance stance = Stance::NI;
  bool is_ai = false;
  StyleTag style = StyleTag::Neutral;
  std::optional<std::string> text;  // only set by external adapters

  friend bool operator==(const Post&, const Post&) = default;
};

// The programmable control surface for a coordinated AI deployment.
struct InterventionConfig {
  int n_ai = 0;
  Stance target_stance = Stance::Against;
  int post_period = 1;  // post when (round - activation_start) % post_period == 0
  int activation_start = 0;
  int activation_end = 1000000000;  // exclusive
  StyleTag style = StyleTag::Neutral;
  double visibility = 1.0;  // fraction of humans that can see AI posts

  friend bool operator==(const InterventionConfig&,
                         const InterventionConfig&) = default;
};

// Parameters of the human stance-update rule.
struct BehaviorParams {
  double w_social = 1.0;
  double w_inertia = 0.5;
  double temperature = 0.25;
  double smoothing = 1.0;  // Laplace pseudo-count per stance
  int feed_size = 20;
  double compassion_gain = 1.5;
  double condemnation_gain = 2.0;
  double condemnation_base = 0.5;

  friend bool operator==(const BehaviorParams&,
                         const BehaviorParams&) = default;
};

struct SimulationConfig {
  int rounds = 1;
  std::vector<AgentProfile> population;
  std::optional<InterventionConfig> intervention;
  BehaviorParams behavior;
  std::uint64_t seed = 0;
  int replicates = 1;

  friend bool operator==(const SimulationConfig&,
                         const SimulationConfig&) = default;
};

// Everything emitted at one timestep: per-human stances plus all posts.
struct RoundRecord {
  int round = 0;
  std::map<std::string, Stance> stances;  // humans only
  std::vector<Post> posts;                // humans and AI

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

}  // namespace beliefdyn
