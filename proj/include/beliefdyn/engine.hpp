#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "beliefdyn/adapter.hpp"
#include "beliefdyn/behavior.hpp"
#include "beliefdyn/rng.hpp"
#include "beliefdyn/serde.hpp"
#include "beliefdyn/types.hpp"
#include "beliefdyn/validate.hpp"

namespace beliefdyn {

// Fixed subset of humans allowed to see AI posts, held constant for a whole
// run. Membership depends only on the id set and the seed: agents are ranked
// by a per-id hash key and the round(visibility * N_h) smallest keys win, so
// permuting the population file changes nothing.
struct VisibilityAssignment {
  std::unordered_set<std::string> exposed_ids;

  bool exposed(const std::string& id) const {
    return exposed_ids.count(id) > 0;
  }
};

inline VisibilityAssignment assign_visibility(
    const std::vector<AgentProfile>& population, double visibility,
    std::uint64_t seed) {
  VisibilityAssignment assignment;
  const auto n = population.size();
  const auto quota = static_cast<std::size_t>(
      std::lround(visibility * static_cast<double>(n)));
  if (quota == 0) return assignment;
  std::vector<std::pair<std::uint64_t, const std::string*>> keyed;
  keyed.reserve(n);
  for (const AgentProfile& profile : population) {
    const std::uint64_t key =
        derive_stream(seed, "visibility:" + profile.id, 0).next_u64();
    keyed.emplace_back(key, &profile.id);
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first < b.first;
              return *a.second < *b.second;
            });
  for (std::size_t i = 0; i < std::min(quota, n); ++i) {
    assignment.exposed_ids.insert(*keyed[i].second);
  }
  return assignment;
}

// Builds one agent's visible feed from the previous round's posts: the
// agent's own post is excluded, AI posts require exposure, and anything over
// feed_size is subsampled uniformly without replacement. Candidates are
// ranked by author id before subsampling so the result does not depend on
// the order posts were emitted in.
inline std::vector<Post> assemble_feed(const std::string& agent_id,
                                       const std::vector<Post>& previous_round_posts,
                                       const VisibilityAssignment& exposure,
                                       const BehaviorParams& params,
                                       RandomStream& rng) {
  std::vector<const Post*> candidates;
  candidates.reserve(previous_round_posts.size());
  for (const Post& post : previous_round_posts) {
    if (post.author_id == agent_id) continue;
    if (post.is_ai && !exposure.exposed(agent_id)) continue;
    candidates.push_back(&post);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Post* a, const Post* b) {
                     return a->author_id < b->author_id;
                   });
  const auto k = static_cast<std::size_t>(params.feed_size);
  std::vector<Post> feed;
  if (candidates.size() <= k) {
    feed.reserve(candidates.size());
    for (const Post* post : candidates) feed.push_back(*post);
    return feed;
  }
  const auto picks = sample_indices(candidates.size(), k, rng);
  feed.reserve(picks.size());
  for (const std::size_t i : picks) feed.push_back(*candidates[i]);
  return feed;
}

// Full run output: one record per round plus the round-0 snapshot.
struct SimulationTrace {
  std::string config_digest;
  std::uint64_t seed = 0;
  std::vector<RoundRecord> records;  // length rounds + 1

  friend bool operator==(const SimulationTrace&,
                         const SimulationTrace&) = default;
};

struct ExternalAgentConfig {
  std::string id = "ext_0";
  bool is_ai = true;  // declared role; controls visibility gating of its posts
};

namespace detail {

inline std::string ai_author_id(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "ai_%04d", index);
  return buf;
}

}  // namespace detail

// Executes rounds 1..T. Each round: AI agents post per their schedule, every
// human assembles a feed from the previous round's posts and updates, and the
// external agent (when attached) takes one observe/act turn. Round-1 feeds
// come from synthetic round-0 posts, one per human at its initial stance.
// Fully deterministic given config.seed; adapter errors propagate.
inline SimulationTrace run_simulation(const SimulationConfig& config,
                                      AdapterSession* external = nullptr,
                                      const ExternalAgentConfig& ext_cfg = {}) {
  const ValidationReport report = validate_config(config);
  if (!report.ok()) {
    throw std::invalid_argument("invalid simulation config:\n" +
                                report.to_string());
  }

  // Canonical agent order: sorted by id. Combined with per-(agent, round)
  // random streams this makes traces independent of population file order.
  std::vector<AgentProfile> agents = config.population;
  std::sort(agents.begin(), agents.end(),
            [](const AgentProfile& a, const AgentProfile& b) {
              return a.id < b.id;
            });

  VisibilityAssignment exposure;
  bool everyone_exposed = true;
  if (config.intervention) {
    exposure = assign_visibility(agents, config.intervention->visibility,
                                 config.seed);
    everyone_exposed = false;
  }
  // With no intervention config there is no visibility lever; external AI
  // posts are visible to all.
  if (everyone_exposed) {
    for (const AgentProfile& agent : agents) {
      exposure.exposed_ids.insert(agent.id);
    }
  }

  SimulationTrace trace;
  trace.config_digest = config_digest(config);
  trace.seed = config.seed;
  trace.records.reserve(static_cast<std::size_t>(config.rounds) + 1);

  std::vector<Stance> current(agents.size());
  RoundRecord initial;
  initial.round = 0;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    current[i] = agents[i].initial_stance;
    initial.stances[agents[i].id] = current[i];
    Post post;
    post.author_id = agents[i].id;
    post.round = 0;
    post.stance = current[i];
    initial.posts.push_back(std::move(post));
  }
  trace.records.push_back(std::move(initial));

  for (int round = 1; round <= config.rounds; ++round) {
    const std::vector<Post>& previous_posts = trace.records.back().posts;
    RoundRecord record;
    record.round = round;

    std::vector<Stance> next(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) {
      const AgentProfile& agent = agents[i];
      RandomStream feed_rng =
          derive_stream(config.seed, "feed:" + agent.id, round);
      const std::vector<Post> feed_posts = assemble_feed(
          agent.id, previous_posts, exposure, config.behavior, feed_rng);
      FeedView feed{feed_posts, weighted_shares(feed_posts, agent.entropy,
                                                config.behavior)};
      HumanState state{agent, current[i]};
      RandomStream update_rng =
          derive_stream(config.seed, "update:" + agent.id, round);
      next[i] = human_update(state, feed, config.behavior, update_rng);
      record.stances[agent.id] = next[i];

      Post post;
      post.author_id = agent.id;
      post.round = round;
      post.stance = next[i];
      record.posts.push_back(std::move(post));
    }

    if (config.intervention) {
      for (int k = 0; k < config.intervention->n_ai; ++k) {
        auto post =
            ai_policy(*config.intervention, round, detail::ai_author_id(k));
        if (post) record.posts.push_back(std::move(*post));
      }
    }

    if (external != nullptr) {
      AdapterObservation observation{round, previous_posts};
      record.posts.push_back(
          external_agent_step(observation, *external, ext_cfg.id,
                              ext_cfg.is_ai));
    }

    current = std::move(next);
    trace.records.push_back(std::move(record));
  }
  return trace;
}

namespace detail {

inline int worker_count(int max_threads, std::size_t jobs) {
  int threads = max_threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("BELIEFDYN_THREADS")) {
      threads = std::atoi(env);
    }
  }
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  if (threads < 1) threads = 1;
  return static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(threads), jobs));
}

}  // namespace detail

// Replicate seeds: replicate 0 reuses the master seed (so a single replicate
// reproduces run_simulation exactly); replicate k >= 1 draws its seed from
// derive_stream(seed, "replicate", k). Results are identical whether the
// replicates execute sequentially or in parallel.
inline std::uint64_t replicate_seed(std::uint64_t master_seed, int k) {
  if (k == 0) return master_seed;
  return derive_stream(master_seed, "replicate",
                       static_cast<std::uint64_t>(k))
      .next_u64();
}

inline std::vector<SimulationTrace> run_replicates(
    const SimulationConfig& config, int max_threads = 0) {
  const int n = config.replicates;
  std::vector<SimulationTrace> traces(static_cast<std::size_t>(n));
  const int threads =
      detail::worker_count(max_threads, static_cast<std::size_t>(n));

  auto run_one = [&config, &traces](int k) {
    SimulationConfig replicate = config;
    replicate.seed = replicate_seed(config.seed, k);
    replicate.replicates = 1;
    traces[static_cast<std::size_t>(k)] = run_simulation(replicate);
  };

  if (threads <= 1) {
    for (int k = 0; k < n; ++k) run_one(k);
    return traces;
  }

  std::atomic<int> next_job{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const int k = next_job.fetch_add(1);
        if (k >= n) return;
        run_one(k);
      }
    });
  }
  for (std::thread& worker : pool) worker.join();
  return traces;
}

}  // namespace beliefdyn
