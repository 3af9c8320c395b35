#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "beliefdyn/rng.hpp"
#include "beliefdyn/types.hpp"

namespace beliefdyn {

using json = nlohmann::json;

namespace detail {

inline Stance parse_stance(const json& j, const char* context) {
  const auto token = j.get<std::string>();
  const auto stance = stance_from_token(token);
  if (!stance) {
    throw std::invalid_argument(std::string(context) +
                                ": unknown stance token \"" + token + "\"");
  }
  return *stance;
}

inline StyleTag parse_style(const json& j, const char* context) {
  const auto token = j.get<std::string>();
  const auto style = style_from_token(token);
  if (!style) {
    throw std::invalid_argument(std::string(context) +
                                ": unknown style token \"" + token + "\"");
  }
  return *style;
}

}  // namespace detail

inline void to_json(json& j, const Stance& s) { j = std::string(to_token(s)); }
inline void from_json(const json& j, Stance& s) {
  s = detail::parse_stance(j, "stance");
}

inline void to_json(json& j, const StyleTag& s) {
  j = std::string(to_token(s));
}
inline void from_json(const json& j, StyleTag& s) {
  s = detail::parse_style(j, "style");
}

inline void to_json(json& j, const StanceDistribution& d) {
  j = json{{"favor", d.favor}, {"ni", d.ni}, {"against", d.against}};
}
inline void from_json(const json& j, StanceDistribution& d) {
  j.at("favor").get_to(d.favor);
  j.at("ni").get_to(d.ni);
  j.at("against").get_to(d.against);
}

inline void to_json(json& j, const AgentProfile& p) {
  j = json{{"id", p.id},
           {"topic", p.topic},
           {"initial_stance", p.initial_stance},
           {"entropy", p.entropy}};
}
inline void from_json(const json& j, AgentProfile& p) {
  j.at("id").get_to(p.id);
  j.at("topic").get_to(p.topic);
  j.at("initial_stance").get_to(p.initial_stance);
  j.at("entropy").get_to(p.entropy);
}

inline void to_json(json& j, const Post& p) {
  j = json{{"author_id", p.author_id},
           {"round", p.round},
           {"stance", p.stance},
           {"is_ai", p.is_ai},
           {"style", p.style}};
  if (p.text) j["text"] = *p.text;
}
inline void from_json(const json& j, Post& p) {
  j.at("author_id").get_to(p.author_id);
  j.at("round").get_to(p.round);
  j.at("stance").get_to(p.stance);
  j.at("is_ai").get_to(p.is_ai);
  p.style = j.contains("style") ? j.at("style").get<StyleTag>()
                                : StyleTag::Neutral;
  p.text = j.contains("text")
               ? std::optional<std::string>(j.at("text").get<std::string>())
               : std::nullopt;
}

inline void to_json(json& j, const InterventionConfig& c) {
  j = json{{"n_ai", c.n_ai},
           {"target_stance", c.target_stance},
           {"post_period", c.post_period},
           {"activation_start", c.activation_start},
           {"activation_end", c.activation_end},
           {"style", c.style},
           {"visibility", c.visibility}};
}
inline void from_json(const json& j, InterventionConfig& c) {
  j.at("n_ai").get_to(c.n_ai);
  j.at("target_stance").get_to(c.target_stance);
  c.post_period = j.value("post_period", 1);
  c.activation_start = j.value("activation_start", 0);
  c.activation_end = j.value("activation_end", 1000000000);
  c.style = j.contains("style") ? j.at("style").get<StyleTag>()
                                : StyleTag::Neutral;
  c.visibility = j.value("visibility", 1.0);
}

inline void to_json(json& j, const BehaviorParams& b) {
  j = json{{"w_social", b.w_social},
           {"w_inertia", b.w_inertia},
           {"temperature", b.temperature},
           {"smoothing", b.smoothing},
           {"feed_size", b.feed_size},
           {"compassion_gain", b.compassion_gain},
           {"condemnation_gain", b.condemnation_gain},
           {"condemnation_base", b.condemnation_base}};
}
inline void from_json(const json& j, BehaviorParams& b) {
  const BehaviorParams defaults;
  b.w_social = j.value("w_social", defaults.w_social);
  b.w_inertia = j.value("w_inertia", defaults.w_inertia);
  b.temperature = j.value("temperature", defaults.temperature);
  b.smoothing = j.value("smoothing", defaults.smoothing);
  b.feed_size = j.value("feed_size", defaults.feed_size);
  b.compassion_gain = j.value("compassion_gain", defaults.compassion_gain);
  b.condemnation_gain =
      j.value("condemnation_gain", defaults.condemnation_gain);
  b.condemnation_base =
      j.value("condemnation_base", defaults.condemnation_base);
}

inline void to_json(json& j, const SimulationConfig& c) {
  j = json{{"rounds", c.rounds},
           {"population", c.population},
           {"behavior", c.behavior},
           {"seed", c.seed},
           {"replicates", c.replicates}};
  j["intervention"] = c.intervention ? json(*c.intervention) : json(nullptr);
}
inline void from_json(const json& j, SimulationConfig& c) {
  j.at("rounds").get_to(c.rounds);
  j.at("population").get_to(c.population);
  if (j.contains("intervention") && !j.at("intervention").is_null()) {
    c.intervention = j.at("intervention").get<InterventionConfig>();
  } else {
    c.intervention.reset();
  }
  c.behavior = j.contains("behavior") ? j.at("behavior").get<BehaviorParams>()
                                      : BehaviorParams{};
  c.seed = j.value("seed", std::uint64_t{0});
  c.replicates = j.value("replicates", 1);
}

inline void to_json(json& j, const RoundRecord& r) {
  json stances = json::object();
  for (const auto& [id, stance] : r.stances) {
    stances[id] = stance;
  }
  j = json{{"round", r.round}, {"stances", stances}, {"posts", r.posts}};
}
inline void from_json(const json& j, RoundRecord& r) {
  j.at("round").get_to(r.round);
  r.stances.clear();
  for (const auto& [id, stance] : j.at("stances").items()) {
    r.stances[id] = stance.get<Stance>();
  }
  j.at("posts").get_to(r.posts);
}

// Stable 64-bit identifier of a config document. Hash of the canonical JSON
// serialization (sorted keys, inlined population), rendered as 16 hex chars.
inline std::string config_digest(const SimulationConfig& config) {
  const std::string canonical = json(config).dump();
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  return std::string(buf);
}

}  // namespace beliefdyn
