#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "beliefdyn/engine.hpp"
#include "beliefdyn/stance.hpp"
#include "beliefdyn/types.hpp"

namespace beliefdyn {

struct MetricError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientTraceError : MetricError {
  using MetricError::MetricError;
};

struct DegenerateMarginalsError : MetricError {
  using MetricError::MetricError;
};

struct ShapeMismatchError : MetricError {
  using MetricError::MetricError;
};

// Row-stochastic 3x3 matrix of per-step stance transitions. Rows without any
// observation are flagged by support = 0 and must be excluded downstream.
struct TransitionMatrix {
  std::array<std::array<double, 3>, 3> p{};  // rows: from, cols: to
  std::array<std::uint64_t, 3> support{};    // observations per row

  double at(Stance from, Stance to) const {
    return p[static_cast<int>(from)][static_cast<int>(to)];
  }
  bool row_observed(Stance from) const {
    return support[static_cast<int>(from)] > 0;
  }
};

// 3x3 agreement counts: rows = gold stance, cols = predicted stance.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, 3>, 3> counts{};

  std::uint64_t& at(Stance gold, Stance predicted) {
    return counts[static_cast<int>(gold)][static_cast<int>(predicted)];
  }
  std::uint64_t at(Stance gold, Stance predicted) const {
    return counts[static_cast<int>(gold)][static_cast<int>(predicted)];
  }
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& row : counts)
      for (std::uint64_t c : row) t += c;
    return t;
  }
};

// Signed per-stance differences in percentage points. Components sum to 0.
struct StanceDelta {
  double favor = 0.0;
  double ni = 0.0;
  double against = 0.0;

  double operator[](Stance s) const {
    switch (s) {
      case Stance::Favor:
        return favor;
      case Stance::NI:
        return ni;
      case Stance::Against:
        return against;
    }
    return 0.0;
  }

  friend bool operator==(const StanceDelta&, const StanceDelta&) = default;
};

inline StanceDistribution distribution_of(
    const std::map<std::string, Stance>& stances) {
  std::array<double, 3> counts{0.0, 0.0, 0.0};
  for (const auto& [id, stance] : stances) {
    counts[static_cast<int>(stance)] += 1.0;
  }
  return StanceDistribution::from_counts(counts[0], counts[1], counts[2]);
}

// Human stance shares at the final round.
inline StanceDistribution terminal_distribution(const SimulationTrace& trace) {
  if (trace.records.empty()) {
    throw InsufficientTraceError("trace has no records");
  }
  return distribution_of(trace.records.back().stances);
}

// Componentwise (run - baseline) in percentage points.
inline StanceDelta distribution_delta(const StanceDistribution& run,
                                      const StanceDistribution& baseline) {
  return {(run.favor - baseline.favor) * 100.0,
          (run.ni - baseline.ni) * 100.0,
          (run.against - baseline.against) * 100.0};
}

namespace detail {

inline TransitionMatrix normalize_transition_counts(
    const std::array<std::array<std::uint64_t, 3>, 3>& counts) {
  TransitionMatrix matrix;
  for (int from = 0; from < 3; ++from) {
    std::uint64_t row_total = 0;
    for (int to = 0; to < 3; ++to) row_total += counts[from][to];
    matrix.support[from] = row_total;
    for (int to = 0; to < 3; ++to) {
      matrix.p[from][to] =
          row_total > 0
              ? static_cast<double>(counts[from][to]) /
                    static_cast<double>(row_total)
              : 0.0;
    }
  }
  return matrix;
}

inline void accumulate_transitions(
    const SimulationTrace& trace,
    std::array<std::array<std::uint64_t, 3>, 3>& counts) {
  for (std::size_t t = 0; t + 1 < trace.records.size(); ++t) {
    const auto& from_stances = trace.records[t].stances;
    const auto& to_stances = trace.records[t + 1].stances;
    for (const auto& [id, from] : from_stances) {
      const auto it = to_stances.find(id);
      if (it == to_stances.end()) {
        throw ShapeMismatchError("agent \"" + id +
                                 "\" missing from round " +
                                 std::to_string(trace.records[t + 1].round));
      }
      ++counts[static_cast<int>(from)][static_cast<int>(it->second)];
    }
  }
}

}  // namespace detail

// Pools all (stance at t -> stance at t+1) pairs over every human and every
// consecutive round pair, then normalizes each row by its own count.
inline TransitionMatrix transition_matrix(const SimulationTrace& trace) {
  if (trace.records.size() < 2) {
    throw InsufficientTraceError(
        "transition matrix needs at least 2 rounds, trace has " +
        std::to_string(trace.records.size()));
  }
  std::array<std::array<std::uint64_t, 3>, 3> counts{};
  detail::accumulate_transitions(trace, counts);
  return detail::normalize_transition_counts(counts);
}

inline TransitionMatrix pooled_transition_matrix(
    const std::vector<SimulationTrace>& traces) {
  std::array<std::array<std::uint64_t, 3>, 3> counts{};
  bool usable = false;
  for (const SimulationTrace& trace : traces) {
    if (trace.records.size() < 2) continue;
    detail::accumulate_transitions(trace, counts);
    usable = true;
  }
  if (!usable) {
    throw InsufficientTraceError("no trace with at least 2 rounds");
  }
  return detail::normalize_transition_counts(counts);
}

inline double accuracy(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw MetricError("confusion matrix is empty");
  std::uint64_t diagonal = 0;
  for (int i = 0; i < 3; ++i) diagonal += cm.counts[i][i];
  return static_cast<double>(diagonal) / static_cast<double>(total);
}

// Chance-corrected agreement: kappa = (p_o - p_e) / (1 - p_e) with p_e from
// the product of row and column marginal shares.
inline double cohen_kappa(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw MetricError("confusion matrix is empty");
  const double n = static_cast<double>(total);
  double observed = 0.0;
  double expected = 0.0;
  for (int i = 0; i < 3; ++i) {
    observed += static_cast<double>(cm.counts[i][i]) / n;
    double row = 0.0;
    double col = 0.0;
    for (int j = 0; j < 3; ++j) {
      row += static_cast<double>(cm.counts[i][j]);
      col += static_cast<double>(cm.counts[j][i]);
    }
    expected += (row / n) * (col / n);
  }
  if (expected >= 1.0) {
    throw DegenerateMarginalsError(
        "expected agreement is 1; kappa is undefined");
  }
  return (observed - expected) / (1.0 - expected);
}

// Unweighted mean F1 over classes. A class absent from both gold and
// predictions is excluded from the mean; a class with mass on either side
// but no true positives contributes 0.
inline double macro_f1(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw MetricError("confusion matrix is empty");
  double f1_sum = 0.0;
  int classes = 0;
  for (int c = 0; c < 3; ++c) {
    double gold = 0.0;
    double predicted = 0.0;
    for (int j = 0; j < 3; ++j) {
      gold += static_cast<double>(cm.counts[c][j]);
      predicted += static_cast<double>(cm.counts[j][c]);
    }
    if (gold == 0.0 && predicted == 0.0) continue;
    ++classes;
    const double tp = static_cast<double>(cm.counts[c][c]);
    if (tp == 0.0) continue;  // contributes 0
    const double precision = tp / predicted;
    const double recall = tp / gold;
    f1_sum += 2.0 * precision * recall / (precision + recall);
  }
  if (classes == 0) throw MetricError("confusion matrix is empty");
  return f1_sum / static_cast<double>(classes);
}

// Jensen-Shannon divergence, base 2, bounded in [0, 1]. Zero iff p = q.
inline double js_divergence(const StanceDistribution& p,
                            const StanceDistribution& q) {
  auto kl_to_mixture = [&](const StanceDistribution& a) {
    double kl = 0.0;
    for (Stance s : kStances) {
      const double av = a[s];
      if (av <= 0.0) continue;  // 0 * log(0/x) = 0
      const double mv = 0.5 * (p[s] + q[s]);
      kl += av * std::log2(av / mv);
    }
    return kl;
  };
  return 0.5 * kl_to_mixture(p) + 0.5 * kl_to_mixture(q);
}

// Terminal shift (pp) of the target stance in a withdrawal run relative to
// its paired human-only baseline.
inline double persistence_effect(const SimulationTrace& withdrawal,
                                 const SimulationTrace& baseline,
                                 Stance target) {
  if (withdrawal.records.size() != baseline.records.size()) {
    throw ShapeMismatchError(
        "withdrawal and baseline traces have different lengths (" +
        std::to_string(withdrawal.records.size()) + " vs " +
        std::to_string(baseline.records.size()) + ")");
  }
  if (!withdrawal.records.empty() &&
      withdrawal.records.back().stances.size() !=
          baseline.records.back().stances.size()) {
    throw ShapeMismatchError(
        "withdrawal and baseline traces have different population sizes");
  }
  const StanceDelta delta = distribution_delta(
      terminal_distribution(withdrawal), terminal_distribution(baseline));
  return delta[target];
}

}  // namespace beliefdyn
