#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "beliefdyn/rng.hpp"
#include "beliefdyn/types.hpp"

namespace beliefdyn {

// Beta-shaped persuadability law, parameterized by mean and spread (standard
// deviation). Spread is capped just below the feasibility bound
// sqrt(mean * (1 - mean)); spread 0 produces a constant.
struct EntropyLaw {
  double mean = 0.55;
  double spread = 0.25;
};

struct InfeasibleRoundingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Marsaglia polar method; consumes a deterministic stream only.
inline double sample_standard_normal(RandomStream& rng) {
  for (;;) {
    const double u = 2.0 * rng.next_double() - 1.0;
    const double v = 2.0 * rng.next_double() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

// Marsaglia-Tsang squeeze method for shape >= 1, boosted for shape < 1.
inline double sample_gamma(double shape, RandomStream& rng) {
  if (shape < 1.0) {
    const double g = sample_gamma(shape + 1.0, rng);
    const double u = rng.next_double();
    return g * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = sample_standard_normal(rng);
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = rng.next_double();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

inline double sample_beta(double alpha, double beta, RandomStream& rng) {
  const double x = sample_gamma(alpha, rng);
  const double y = sample_gamma(beta, rng);
  return x / (x + y);
}

inline double sample_entropy(const EntropyLaw& law, RandomStream& rng) {
  const double mean = std::clamp(law.mean, 0.0, 1.0);
  if (law.spread <= 0.0 || mean <= 0.0 || mean >= 1.0) return mean;
  const double bound = std::sqrt(mean * (1.0 - mean));
  const double sd = std::min(law.spread, 0.95 * bound);
  const double variance = sd * sd;
  const double nu = mean * (1.0 - mean) / variance - 1.0;
  const double alpha = mean * nu;
  const double beta = (1.0 - mean) * nu;
  return std::clamp(sample_beta(alpha, beta, rng), 0.0, 1.0);
}

}  // namespace detail

// Integer stance counts matching the target shares exactly in total, via
// largest-remainder rounding with ties broken in stance order.
inline std::array<int, 3> largest_remainder_counts(
    const StanceDistribution& target, int n) {
  if (n < 1) {
    throw InfeasibleRoundingError("population size must be >= 1, got " +
                                  std::to_string(n));
  }
  std::array<int, 3> counts{};
  std::array<double, 3> remainders{};
  int assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = target[kStances[i]] * static_cast<double>(n);
    counts[i] = static_cast<int>(std::floor(exact));
    remainders[i] = exact - std::floor(exact);
    assigned += counts[i];
  }
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (remainders[a] != remainders[b]) return remainders[a] > remainders[b];
    return a < b;  // stance order breaks ties
  });
  for (int i = 0; assigned < n; ++i) {
    ++counts[order[static_cast<std::size_t>(i % 3)]];
    ++assigned;
  }
  return counts;
}

// Deterministic synthetic population: stance counts are the exact rounded
// targets, entropies are drawn per agent from the Beta-shaped law.
inline std::vector<AgentProfile> generate_population(
    const StanceDistribution& target, const EntropyLaw& law, int n,
    std::uint64_t seed, const std::string& topic = "synthetic") {
  const std::array<int, 3> counts = largest_remainder_counts(target, n);
  int width = 1;
  for (int v = n - 1; v >= 10; v /= 10) ++width;
  width = std::clamp(width, 3, 9);

  std::vector<AgentProfile> population;
  population.reserve(static_cast<std::size_t>(n));
  int index = 0;
  for (int s = 0; s < 3; ++s) {
    for (int k = 0; k < counts[s]; ++k, ++index) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "h%0*d", width, index);
      AgentProfile profile;
      profile.id = buf;
      profile.topic = topic;
      profile.initial_stance = kStances[s];
      RandomStream rng = derive_stream(seed, "entropy:" + profile.id, 0);
      profile.entropy = detail::sample_entropy(law, rng);
      population.push_back(std::move(profile));
    }
  }
  return population;
}

}  // namespace beliefdyn
