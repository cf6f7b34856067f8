#pragma once

#include <cstdint>
#include <random>

namespace giant {

// Deterministic substream generator: MT19937-64 seeded through std::seed_seq
// with (seed low word, seed high word, stream id). Robot i draws from stream
// i, so adding robots never perturbs the draws of existing ones.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

// Stream ids above this are reserved for non-robot consumers.
inline constexpr std::uint64_t kOperatorStream = 1ull << 40;

}  // namespace giant
