#pragma once

#include <cstdint>

namespace twintrees {

// Counter-based generator: a splitmix64 walk whose start is a hash of
// (seed, stream).  Streams indexed by trial decorrelate without coordination,
// so parallel consumers draw identical values regardless of scheduling.
// Bounded draws use multiply-shift with rejection, never the standard
// library's distributions, keeping sequences identical across platforms.
class RandomSource {
  public:
    explicit RandomSource(uint64_t seed, uint64_t stream = 0) {
        state_ = mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
        state_ = mix(state_ ^ stream);
    }

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // uniform on [0, bound), bound >= 1
    uint64_t next_below(uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        auto low = static_cast<uint64_t>(m);
        if (low < bound) {
            uint64_t cutoff = (0 - bound) % bound;
            while (low < cutoff) {
                m = static_cast<unsigned __int128>(next_u64()) * bound;
                low = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

  private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    uint64_t state_;
};

}  // namespace twintrees
