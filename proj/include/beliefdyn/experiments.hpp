#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "beliefdyn/engine.hpp"
#include "beliefdyn/io.hpp"
#include "beliefdyn/metrics.hpp"
#include "beliefdyn/population.hpp"
#include "beliefdyn/serde.hpp"
#include "beliefdyn/types.hpp"
#include "beliefdyn/version.hpp"

namespace beliefdyn {

inline constexpr int kDefaultReplicates = 30;
inline constexpr int kDefaultRounds = 50;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct SweepSpec {
  std::string parameter;
  std::vector<json> values;
};

struct Scenario {
  std::string name;
  SimulationConfig base_config;
  std::optional<SweepSpec> sweep;
  bool paired_baseline = true;  // run an n_ai = 0 twin with the same seeds
};

// Majority stance of a distribution; ties resolve in stance order
// (Favor < NI < Against).
inline Stance majority_stance(const StanceDistribution& d) {
  Stance best = Stance::Favor;
  for (Stance s : kStances) {
    if (d[s] > d[best]) best = s;
  }
  return best;
}

// The stance an opposing intervention advocates: the flip of the substantive
// majority. An NI majority falls back to the larger of favor/against before
// flipping, so interventions always push a substantive position.
inline Stance opposing_stance(const StanceDistribution& d) {
  Stance m = majority_stance(d);
  if (m == Stance::NI) {
    m = d.against > d.favor ? Stance::Against : Stance::Favor;
  }
  return m == Stance::Favor ? Stance::Against : Stance::Favor;
}

inline StanceDistribution initial_distribution(
    const std::vector<AgentProfile>& population) {
  std::array<double, 3> counts{0.0, 0.0, 0.0};
  for (const AgentProfile& p : population) {
    counts[static_cast<int>(p.initial_stance)] += 1.0;
  }
  return StanceDistribution::from_counts(counts[0], counts[1], counts[2]);
}

// Applies one swept value to a config. Supported parameter paths are the
// intervention control dimensions plus "rounds".
inline void apply_sweep_value(SimulationConfig& config,
                              const std::string& parameter,
                              const json& value) {
  auto require_intervention = [&]() -> InterventionConfig& {
    if (!config.intervention) {
      throw std::invalid_argument("sweep parameter \"" + parameter +
                                  "\" requires an intervention config");
    }
    return *config.intervention;
  };
  if (parameter == "rounds") {
    config.rounds = value.get<int>();
  } else if (parameter == "intervention.n_ai") {
    require_intervention().n_ai = value.get<int>();
  } else if (parameter == "intervention.post_period") {
    require_intervention().post_period = value.get<int>();
  } else if (parameter == "intervention.activation_start") {
    require_intervention().activation_start = value.get<int>();
  } else if (parameter == "intervention.activation_end") {
    require_intervention().activation_end = value.get<int>();
  } else if (parameter == "intervention.visibility") {
    require_intervention().visibility = value.get<double>();
  } else if (parameter == "intervention.style") {
    require_intervention().style = value.get<StyleTag>();
  } else if (parameter == "intervention.target_stance") {
    require_intervention().target_stance = value.get<Stance>();
  } else {
    throw std::invalid_argument("unknown sweep parameter \"" + parameter +
                                "\"");
  }
}

// ---------------------------------------------------------------------------
// Scenario builders
// ---------------------------------------------------------------------------

// Paired human-only / +80 opposing AI runs for each topic population:
// 50 rounds, every-round posting, full visibility, neutral style.
inline std::vector<Scenario> scenario_cross_topic(
    const std::vector<std::vector<AgentProfile>>& populations, int rounds = kDefaultRounds,
    std::uint64_t seed = kDefaultSeed, int replicates = kDefaultReplicates) {
  std::vector<Scenario> scenarios;
  for (const auto& population : populations) {
    if (population.empty()) {
      throw std::invalid_argument("cross-topic population is empty");
    }
    Scenario scenario;
    const std::string topic = population.front().topic;
    scenario.name = "cross-topic-" + (topic.empty() ? "unnamed" : topic);
    scenario.base_config.rounds = rounds;
    scenario.base_config.population = population;
    scenario.base_config.seed = seed;
    scenario.base_config.replicates = replicates;
    InterventionConfig intervention;
    intervention.n_ai = 80;
    intervention.target_stance = opposing_stance(initial_distribution(population));
    intervention.post_period = 1;
    intervention.activation_start = 0;
    intervention.activation_end = rounds;
    intervention.style = StyleTag::Neutral;
    intervention.visibility = 1.0;
    scenario.base_config.intervention = intervention;
    scenario.paired_baseline = true;
    scenarios.push_back(std::move(scenario));
  }
  return scenarios;
}

inline Scenario scenario_count_sweep(SimulationConfig base) {
  Scenario scenario;
  scenario.name = "count-sweep";
  scenario.base_config = std::move(base);
  scenario.sweep = SweepSpec{"intervention.n_ai", {0, 5, 20, 40, 80, 160}};
  scenario.paired_baseline = true;
  return scenario;
}

inline Scenario scenario_frequency_sweep(SimulationConfig base) {
  Scenario scenario;
  scenario.name = "frequency-sweep";
  scenario.base_config = std::move(base);
  scenario.sweep = SweepSpec{"intervention.post_period", {1, 4, 8}};
  scenario.paired_baseline = true;
  return scenario;
}

inline Scenario scenario_withdrawal_sweep(SimulationConfig base) {
  Scenario scenario;
  scenario.name = "withdrawal-sweep";
  scenario.base_config = std::move(base);
  scenario.sweep = SweepSpec{"intervention.activation_end", {10, 20, 30, 50}};
  scenario.paired_baseline = true;
  return scenario;
}

inline Scenario scenario_style_contrast(SimulationConfig base) {
  Scenario scenario;
  scenario.name = "style-contrast";
  scenario.base_config = std::move(base);
  scenario.sweep =
      SweepSpec{"intervention.style", {"compassionate", "condemnation"}};
  scenario.paired_baseline = true;
  return scenario;
}

inline Scenario scenario_visibility_sweep(SimulationConfig base) {
  Scenario scenario;
  scenario.name = "visibility-sweep";
  scenario.base_config = std::move(base);
  scenario.sweep = SweepSpec{"intervention.visibility", {0.0, 0.5, 1.0}};
  scenario.paired_baseline = true;
  return scenario;
}

// ---------------------------------------------------------------------------
// Built-in catalog
// ---------------------------------------------------------------------------

struct TopicPreset {
  const char* name;
  double favor;
  double ni;
  double against;
};

// Bundled example populations. The four named topics mirror commonly studied
// debate subjects; "contested" is a closely split population used by the
// visibility scenario so a single agent's reach is measurable.
inline constexpr std::array<TopicPreset, 5> kTopicPresets{{
    {"abortion", 0.845, 0.080, 0.075},
    {"capitalism", 0.894, 0.085, 0.020},
    {"feminism", 0.795, 0.205, 0.000},
    {"brexit", 0.080, 0.810, 0.110},
    {"contested", 0.520, 0.120, 0.360},
}};

inline const TopicPreset* find_topic_preset(const std::string& name) {
  for (const TopicPreset& preset : kTopicPresets) {
    if (name == preset.name) return &preset;
  }
  return nullptr;
}

inline std::vector<AgentProfile> preset_population(const TopicPreset& preset,
                                                   int n, std::uint64_t seed,
                                                   EntropyLaw law = {}) {
  const std::uint64_t pop_seed =
      derive_stream(seed, std::string("population:") + preset.name, 0)
          .next_u64();
  return generate_population(
      StanceDistribution::from_counts(preset.favor, preset.ni, preset.against),
      law, n, pop_seed, preset.name);
}

namespace detail {

inline SimulationConfig topic_base_config(const TopicPreset& preset, int n_humans,
                                          int n_ai, std::uint64_t seed,
                                          int replicates) {
  SimulationConfig config;
  config.rounds = kDefaultRounds;
  config.population = preset_population(preset, n_humans, seed);
  config.seed = seed;
  config.replicates = replicates;
  InterventionConfig intervention;
  intervention.n_ai = n_ai;
  intervention.target_stance =
      opposing_stance(initial_distribution(config.population));
  intervention.post_period = 1;
  intervention.activation_start = 0;
  intervention.activation_end = config.rounds;
  intervention.style = StyleTag::Neutral;
  intervention.visibility = 1.0;
  config.intervention = intervention;
  return config;
}

}  // namespace detail

inline std::vector<std::string> builtin_scenario_names() {
  return {"cross-topic",      "count-sweep",  "frequency-sweep",
          "withdrawal-sweep", "style-contrast", "visibility-sweep"};
}

// Resolves a built-in scenario name. "cross-topic" expands to one scenario
// per bundled topic; the rest are single scenarios on the abortion preset
// (visibility uses the contested preset with a lone AI agent).
inline std::vector<Scenario> make_builtin_scenarios(
    const std::string& name, std::uint64_t seed = kDefaultSeed,
    int replicates = kDefaultReplicates) {
  if (name == "cross-topic") {
    std::vector<std::vector<AgentProfile>> populations;
    for (const char* topic : {"abortion", "capitalism", "feminism", "brexit"}) {
      populations.push_back(
          preset_population(*find_topic_preset(topic), 200, seed));
    }
    return scenario_cross_topic(populations, kDefaultRounds, seed, replicates);
  }
  const TopicPreset& abortion = *find_topic_preset("abortion");
  if (name == "count-sweep") {
    return {scenario_count_sweep(
        detail::topic_base_config(abortion, 200, 80, seed, replicates))};
  }
  if (name == "frequency-sweep") {
    return {scenario_frequency_sweep(
        detail::topic_base_config(abortion, 200, 80, seed, replicates))};
  }
  if (name == "withdrawal-sweep") {
    return {scenario_withdrawal_sweep(
        detail::topic_base_config(abortion, 200, 80, seed, replicates))};
  }
  if (name == "style-contrast") {
    return {scenario_style_contrast(
        detail::topic_base_config(abortion, 200, 80, seed, replicates))};
  }
  if (name == "visibility-sweep") {
    return {scenario_visibility_sweep(detail::topic_base_config(
        *find_topic_preset("contested"), 50, 1, seed, replicates))};
  }
  throw std::invalid_argument("unknown built-in scenario \"" + name + "\"");
}

inline void to_json(json& j, const SweepSpec& s) {
  j = json{{"parameter", s.parameter}, {"values", s.values}};
}
inline void from_json(const json& j, SweepSpec& s) {
  j.at("parameter").get_to(s.parameter);
  s.values.clear();
  for (const auto& v : j.at("values")) s.values.push_back(v);
}

inline void to_json(json& j, const Scenario& s) {
  j = json{{"name", s.name},
           {"base_config", s.base_config},
           {"paired_baseline", s.paired_baseline}};
  j["sweep"] = s.sweep ? json(*s.sweep) : json(nullptr);
}
inline void from_json(const json& j, Scenario& s) {
  j.at("name").get_to(s.name);
  j.at("base_config").get_to(s.base_config);
  if (j.contains("sweep") && !j.at("sweep").is_null()) {
    s.sweep = j.at("sweep").get<SweepSpec>();
  } else {
    s.sweep.reset();
  }
  s.paired_baseline = j.value("paired_baseline", true);
}

// ---------------------------------------------------------------------------
// Sweep execution and reporting
// ---------------------------------------------------------------------------

struct DistributionStats {
  StanceDistribution mean;
  StanceDistribution sd;
  int n = 0;
};

struct TercileStats {
  double share_mean = 0.0;           // terminal target share within tercile
  double baseline_share_mean = 0.0;  // same agents, paired baseline
  double delta_mean_pp = 0.0;
  double delta_sd_pp = 0.0;
};

struct LegResult {
  std::string label;      // e.g. "n_ai=80", "baseline"
  std::string parameter;  // swept path, empty for baseline
  json value;             // swept value, null for baseline
  std::string digest;
  std::uint64_t seed = 0;
  int replicates = 0;
  Stance target_stance = Stance::Against;
  DistributionStats terminal;
  StanceDelta delta_mean_pp;  // vs paired baseline, zero when unpaired
  StanceDelta delta_sd_pp;
  double target_delta_mean_pp = 0.0;
  double target_delta_sd_pp = 0.0;
  std::vector<std::array<double, 4>> trajectory;  // round, favor, ni, against
  TransitionMatrix transition;
  std::array<TercileStats, 3> entropy_terciles{};  // low, mid, high
  SimulationConfig config;  // exact config that produced this row
};

struct ExperimentReport {
  std::string scenario;
  std::string tool_version = kVersion;
  std::uint64_t seed = 0;
  int replicates = 0;
  std::optional<LegResult> baseline;
  std::vector<LegResult> legs;
};

inline void to_json(json& j, const TransitionMatrix& m) {
  j = json{{"p", m.p}, {"support", m.support}};
}
inline void from_json(const json& j, TransitionMatrix& m) {
  j.at("p").get_to(m.p);
  j.at("support").get_to(m.support);
}

inline void to_json(json& j, const DistributionStats& s) {
  j = json{{"mean", s.mean}, {"sd", s.sd}, {"n", s.n}};
}
inline void from_json(const json& j, DistributionStats& s) {
  j.at("mean").get_to(s.mean);
  j.at("sd").get_to(s.sd);
  j.at("n").get_to(s.n);
}

inline void to_json(json& j, const StanceDelta& d) {
  j = json{{"favor", d.favor}, {"ni", d.ni}, {"against", d.against}};
}
inline void from_json(const json& j, StanceDelta& d) {
  j.at("favor").get_to(d.favor);
  j.at("ni").get_to(d.ni);
  j.at("against").get_to(d.against);
}

inline void to_json(json& j, const TercileStats& t) {
  j = json{{"share_mean", t.share_mean},
           {"baseline_share_mean", t.baseline_share_mean},
           {"delta_mean_pp", t.delta_mean_pp},
           {"delta_sd_pp", t.delta_sd_pp}};
}
inline void from_json(const json& j, TercileStats& t) {
  j.at("share_mean").get_to(t.share_mean);
  j.at("baseline_share_mean").get_to(t.baseline_share_mean);
  j.at("delta_mean_pp").get_to(t.delta_mean_pp);
  j.at("delta_sd_pp").get_to(t.delta_sd_pp);
}

inline void to_json(json& j, const LegResult& leg) {
  j = json{{"label", leg.label},
           {"parameter", leg.parameter},
           {"value", leg.value},
           {"digest", leg.digest},
           {"seed", leg.seed},
           {"replicates", leg.replicates},
           {"target_stance", leg.target_stance},
           {"terminal", leg.terminal},
           {"delta_mean_pp", leg.delta_mean_pp},
           {"delta_sd_pp", leg.delta_sd_pp},
           {"target_delta_mean_pp", leg.target_delta_mean_pp},
           {"target_delta_sd_pp", leg.target_delta_sd_pp},
           {"trajectory", leg.trajectory},
           {"transition", leg.transition},
           {"entropy_terciles", leg.entropy_terciles},
           {"config", leg.config}};
}
inline void from_json(const json& j, LegResult& leg) {
  j.at("label").get_to(leg.label);
  j.at("parameter").get_to(leg.parameter);
  leg.value = j.at("value");
  j.at("digest").get_to(leg.digest);
  j.at("seed").get_to(leg.seed);
  j.at("replicates").get_to(leg.replicates);
  j.at("target_stance").get_to(leg.target_stance);
  j.at("terminal").get_to(leg.terminal);
  j.at("delta_mean_pp").get_to(leg.delta_mean_pp);
  j.at("delta_sd_pp").get_to(leg.delta_sd_pp);
  j.at("target_delta_mean_pp").get_to(leg.target_delta_mean_pp);
  j.at("target_delta_sd_pp").get_to(leg.target_delta_sd_pp);
  j.at("trajectory").get_to(leg.trajectory);
  j.at("transition").get_to(leg.transition);
  j.at("entropy_terciles").get_to(leg.entropy_terciles);
  j.at("config").get_to(leg.config);
}

inline void to_json(json& j, const ExperimentReport& r) {
  j = json{{"scenario", r.scenario},
           {"tool_version", r.tool_version},
           {"seed", r.seed},
           {"replicates", r.replicates},
           {"legs", r.legs}};
  j["baseline"] = r.baseline ? json(*r.baseline) : json(nullptr);
}
inline void from_json(const json& j, ExperimentReport& r) {
  j.at("scenario").get_to(r.scenario);
  j.at("tool_version").get_to(r.tool_version);
  j.at("seed").get_to(r.seed);
  j.at("replicates").get_to(r.replicates);
  if (j.contains("baseline") && !j.at("baseline").is_null()) {
    r.baseline = j.at("baseline").get<LegResult>();
  } else {
    r.baseline.reset();
  }
  j.at("legs").get_to(r.legs);
}

struct RunScenarioOptions {
  std::optional<std::uint64_t> seed;  // overrides base config seed
  int replicates = 0;                 // overrides when > 0
  int max_threads = 0;
  std::filesystem::path resume_dir;  // completed legs cached here when set
  bool force = false;                // ignore cached legs
};

namespace detail {

inline double sample_sd(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

inline double mean_of(const std::vector<double>& values) {
  double acc = 0.0;
  for (double v : values) acc += v;
  return values.empty() ? 0.0 : acc / static_cast<double>(values.size());
}

// Entropy terciles of a population: agents ranked by (entropy, id) and cut at
// n/3 and 2n/3. Returns the tercile index (0 = low) per agent id.
inline std::map<std::string, int> entropy_tercile_of(
    const std::vector<AgentProfile>& population) {
  std::vector<const AgentProfile*> ranked;
  ranked.reserve(population.size());
  for (const AgentProfile& p : population) ranked.push_back(&p);
  std::sort(ranked.begin(), ranked.end(),
            [](const AgentProfile* a, const AgentProfile* b) {
              if (a->entropy != b->entropy) return a->entropy < b->entropy;
              return a->id < b->id;
            });
  std::map<std::string, int> tercile;
  const std::size_t n = ranked.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int t = i < n / 3 ? 0 : (i < 2 * n / 3 ? 1 : 2);
    tercile[ranked[i]->id] = t;
  }
  return tercile;
}

inline std::array<double, 3> tercile_target_shares(
    const SimulationTrace& trace, const std::map<std::string, int>& tercile,
    Stance target) {
  std::array<double, 3> hits{0.0, 0.0, 0.0};
  std::array<double, 3> sizes{0.0, 0.0, 0.0};
  for (const auto& [id, stance] : trace.records.back().stances) {
    const int t = tercile.at(id);
    sizes[t] += 1.0;
    if (stance == target) hits[t] += 1.0;
  }
  std::array<double, 3> shares{};
  for (int t = 0; t < 3; ++t) {
    shares[t] = sizes[t] > 0.0 ? hits[t] / sizes[t] : 0.0;
  }
  return shares;
}

inline LegResult summarize_leg(
    const SimulationConfig& config, const std::string& label,
    const std::string& parameter, const json& value, Stance target,
    const std::vector<SimulationTrace>& traces,
    const std::vector<SimulationTrace>* baseline_traces) {
  LegResult leg;
  leg.label = label;
  leg.parameter = parameter;
  leg.value = value;
  leg.config = config;
  leg.digest = config_digest(config);
  leg.seed = config.seed;
  leg.replicates = static_cast<int>(traces.size());
  leg.target_stance = target;

  std::array<std::vector<double>, 3> terminal_shares;
  for (const SimulationTrace& trace : traces) {
    const StanceDistribution d = terminal_distribution(trace);
    for (int i = 0; i < 3; ++i) terminal_shares[i].push_back(d[kStances[i]]);
  }
  for (int i = 0; i < 3; ++i) {
    const double m = mean_of(terminal_shares[i]);
    leg.terminal.mean[kStances[i]] = m;
    leg.terminal.sd[kStances[i]] = sample_sd(terminal_shares[i], m);
  }
  leg.terminal.n = leg.replicates;

  const std::size_t records = traces.front().records.size();
  leg.trajectory.resize(records);
  for (std::size_t t = 0; t < records; ++t) {
    std::array<double, 3> acc{0.0, 0.0, 0.0};
    for (const SimulationTrace& trace : traces) {
      const StanceDistribution d = distribution_of(trace.records[t].stances);
      for (int i = 0; i < 3; ++i) acc[i] += d[kStances[i]];
    }
    const double n = static_cast<double>(traces.size());
    leg.trajectory[t] = {static_cast<double>(traces.front().records[t].round),
                         acc[0] / n, acc[1] / n, acc[2] / n};
  }
  leg.transition = pooled_transition_matrix(traces);

  if (baseline_traces != nullptr) {
    std::array<std::vector<double>, 3> deltas;
    for (std::size_t k = 0; k < traces.size(); ++k) {
      const StanceDelta d =
          distribution_delta(terminal_distribution(traces[k]),
                             terminal_distribution((*baseline_traces)[k]));
      for (int i = 0; i < 3; ++i) deltas[i].push_back(d[kStances[i]]);
    }
    StanceDelta mean_delta;
    StanceDelta sd_delta;
    mean_delta.favor = mean_of(deltas[0]);
    mean_delta.ni = mean_of(deltas[1]);
    mean_delta.against = mean_of(deltas[2]);
    sd_delta.favor = sample_sd(deltas[0], mean_delta.favor);
    sd_delta.ni = sample_sd(deltas[1], mean_delta.ni);
    sd_delta.against = sample_sd(deltas[2], mean_delta.against);
    leg.delta_mean_pp = mean_delta;
    leg.delta_sd_pp = sd_delta;
    leg.target_delta_mean_pp = mean_delta[target];
    leg.target_delta_sd_pp = sd_delta[target];

    const auto tercile = entropy_tercile_of(config.population);
    std::array<std::vector<double>, 3> t_shares;
    std::array<std::vector<double>, 3> t_base;
    std::array<std::vector<double>, 3> t_delta;
    for (std::size_t k = 0; k < traces.size(); ++k) {
      const auto run_shares = tercile_target_shares(traces[k], tercile, target);
      const auto base_shares =
          tercile_target_shares((*baseline_traces)[k], tercile, target);
      for (int t = 0; t < 3; ++t) {
        t_shares[t].push_back(run_shares[t]);
        t_base[t].push_back(base_shares[t]);
        t_delta[t].push_back(100.0 * (run_shares[t] - base_shares[t]));
      }
    }
    for (int t = 0; t < 3; ++t) {
      leg.entropy_terciles[t].share_mean = mean_of(t_shares[t]);
      leg.entropy_terciles[t].baseline_share_mean = mean_of(t_base[t]);
      const double dm = mean_of(t_delta[t]);
      leg.entropy_terciles[t].delta_mean_pp = dm;
      leg.entropy_terciles[t].delta_sd_pp = sample_sd(t_delta[t], dm);
    }
  }
  return leg;
}

inline std::filesystem::path leg_cache_path(
    const std::filesystem::path& resume_dir, const std::string& digest) {
  return resume_dir / "legs" / (digest + ".json");
}

inline std::optional<LegResult> load_cached_leg(
    const std::filesystem::path& resume_dir, const std::string& digest) {
  const auto path = leg_cache_path(resume_dir, digest);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    return json::parse(read_file(path)).get<LegResult>();
  } catch (const std::exception&) {
    return std::nullopt;  // corrupt cache entries are recomputed
  }
}

inline void store_cached_leg(const std::filesystem::path& resume_dir,
                             const LegResult& leg) {
  const auto path = leg_cache_path(resume_dir, leg.digest);
  std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  write_file(tmp, json(leg).dump(2) + "\n");
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

// Runs every sweep leg (plus the paired baseline) and assembles the report.
// Legs and their baseline share replicate seeds, so deltas are paired
// differences. With a resume dir set, completed legs are loaded by config
// digest instead of recomputed.
inline ExperimentReport run_scenario(const Scenario& scenario,
                                     const RunScenarioOptions& options = {}) {
  SimulationConfig base = scenario.base_config;
  if (options.seed) base.seed = *options.seed;
  if (options.replicates > 0) base.replicates = options.replicates;

  ExperimentReport report;
  report.scenario = scenario.name;
  report.seed = base.seed;
  report.replicates = base.replicates;

  const Stance target = base.intervention ? base.intervention->target_stance
                                          : Stance::Against;

  // The baseline twin: same config with the AI deployment switched off.
  std::optional<std::vector<SimulationTrace>> baseline_traces;
  if (scenario.paired_baseline) {
    SimulationConfig baseline_config = base;
    if (baseline_config.intervention) baseline_config.intervention->n_ai = 0;
    baseline_traces = run_replicates(baseline_config, options.max_threads);
    report.baseline = detail::summarize_leg(baseline_config, "baseline", "",
                                            json(nullptr), target,
                                            *baseline_traces, nullptr);
  }

  auto run_leg = [&](const SimulationConfig& config, const std::string& label,
                     const std::string& parameter, const json& value) {
    const std::string digest = config_digest(config);
    if (!options.resume_dir.empty() && !options.force) {
      if (auto cached = detail::load_cached_leg(options.resume_dir, digest)) {
        report.legs.push_back(std::move(*cached));
        return;
      }
    }
    const std::vector<SimulationTrace> traces =
        run_replicates(config, options.max_threads);
    LegResult leg = detail::summarize_leg(
        config, label, parameter, value, target, traces,
        baseline_traces ? &*baseline_traces : nullptr);
    if (!options.resume_dir.empty()) {
      detail::store_cached_leg(options.resume_dir, leg);
    }
    report.legs.push_back(std::move(leg));
  };

  if (scenario.sweep) {
    for (const json& value : scenario.sweep->values) {
      SimulationConfig config = base;
      apply_sweep_value(config, scenario.sweep->parameter, value);
      const auto short_name =
          scenario.sweep->parameter.substr(scenario.sweep->parameter.rfind('.') + 1);
      const std::string label =
          short_name + "=" +
          (value.is_string() ? value.get<std::string>() : value.dump());
      run_leg(config, label, scenario.sweep->parameter, value);
    }
  } else {
    run_leg(base, "intervention", "", json(nullptr));
  }
  return report;
}

}  // namespace beliefdyn
