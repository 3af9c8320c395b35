#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace beliefdyn {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ull;

// SplitMix64 finalizer. Full 64-bit avalanche; used both as the stream
// generator step and to derive stream keys.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Deterministic random stream. All draws are pure 64-bit integer arithmetic,
// so a given key produces the same byte sequence on every platform.
// Single-consumer: copy the handle if two call sites need independent use.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n), unbiased via rejection. n must be > 0.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r < threshold);
    return r % n;
  }

 private:
  std::uint64_t state_;
};

// Splits a deterministic stream keyed by (seed, id, round). The mapping is
// stable regardless of call order, so agents can be evaluated in parallel or
// permuted without changing any stream they consume.
inline RandomStream derive_stream(std::uint64_t seed, std::string_view id,
                                  std::uint64_t round) {
  std::uint64_t x = mix64(seed ^ kGoldenGamma);
  x = mix64(x ^ fnv1a64(id));
  x = mix64(x ^ round);
  return RandomStream(x);
}

// k distinct indices drawn uniformly from [0, n) via partial Fisher-Yates.
// Returns all of [0, n) when k >= n. Order of the result is the draw order.
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                               RandomStream& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  if (k >= n) return idx;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace beliefdyn
