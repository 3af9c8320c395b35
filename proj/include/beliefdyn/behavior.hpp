#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "beliefdyn/rng.hpp"
#include "beliefdyn/types.hpp"

namespace beliefdyn {

// What one agent sees in one round: the subsampled visible posts plus the
// persuasion-weighted, smoothed stance shares computed from them.
struct FeedView {
  std::vector<Post> posts;
  StanceDistribution weighted_shares;
};

struct HumanState {
  AgentProfile profile;
  Stance current_stance = Stance::NI;
};

// Persuasion weight of one post on one reader. Human and Neutral-style posts
// carry unit weight. Compassionate posts are uniformly amplified;
// Condemnation weight grows as reader entropy falls, so it lands hardest on
// committed readers.
inline double post_weight(const Post& post, double reader_entropy,
                          const BehaviorParams& params) {
  if (!post.is_ai || post.style == StyleTag::Neutral) return 1.0;
  if (post.style == StyleTag::Compassionate) return params.compassion_gain;
  return params.condemnation_base +
         params.condemnation_gain * (1.0 - reader_entropy);
}

// Smoothed, weight-aggregated stance shares of a feed. Always a valid
// distribution, including for an empty feed (pure smoothing).
inline StanceDistribution weighted_shares(const std::vector<Post>& feed,
                                          double reader_entropy,
                                          const BehaviorParams& params) {
  std::array<double, 3> mass{params.smoothing, params.smoothing,
                             params.smoothing};
  for (const Post& post : feed) {
    mass[static_cast<int>(post.stance)] +=
        post_weight(post, reader_entropy, params);
  }
  const double total = mass[0] + mass[1] + mass[2];
  return {mass[0] / total, mass[1] / total, mass[2] / total};
}

// Softmax choice probabilities for the next stance: utility is the social
// share plus an inertia bonus on the currently held stance.
inline std::array<double, 3> stance_choice_probs(
    const StanceDistribution& shares, Stance current,
    const BehaviorParams& params) {
  std::array<double, 3> utility;
  for (int i = 0; i < 3; ++i) {
    utility[i] = params.w_social * shares[kStances[i]] +
                 (kStances[i] == current ? params.w_inertia : 0.0);
  }
  const double peak = std::max({utility[0], utility[1], utility[2]});
  std::array<double, 3> probs;
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    probs[i] = std::exp((utility[i] - peak) / params.temperature);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

// Entropy-gated stochastic update. With probability (1 - entropy) the agent
// keeps its stance; otherwise it samples from the softmax. An entropy of 0
// therefore never changes stance, exactly.
inline Stance human_update(const HumanState& state, const FeedView& feed,
                           const BehaviorParams& params, RandomStream& rng) {
  const double gate = rng.next_double();
  if (gate >= state.profile.entropy) return state.current_stance;
  const auto probs =
      stance_choice_probs(feed.weighted_shares, state.current_stance, params);
  const double u = rng.next_double();
  double cumulative = 0.0;
  for (int i = 0; i < 3; ++i) {
    cumulative += probs[i];
    if (u < cumulative) return kStances[i];
  }
  return kStances[2];
}

// Fixed-stance AI policy: posts the target stance on the configured schedule,
// silent outside [activation_start, activation_end).
inline std::optional<Post> ai_policy(const InterventionConfig& config,
                                     int round,
                                     const std::string& author_id = "ai") {
  if (round < config.activation_start || round >= config.activation_end) {
    return std::nullopt;
  }
  if ((round - config.activation_start) % config.post_period != 0) {
    return std::nullopt;
  }
  Post post;
  post.author_id = author_id;
  post.round = round;
  post.stance = config.target_stance;
  post.is_ai = true;
  post.style = config.style;
  return post;
}

}  // namespace beliefdyn
