#pragma once

#include <cstdint>

namespace fairpc {

// SplitMix64 finalizer; full-avalanche 64-bit mix.
inline uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Purpose tag keeps reward randomness disjoint from pick randomness, so reward
// streams are invariant to policy choices (common random numbers across sweeps).
enum class StreamPurpose : uint64_t {
    rewards = 0x8badf00d,
    sampling = 0x5eedcafe,
    generic = 0x0ddba11,
};

inline uint64_t stream_key(uint64_t master_seed, StreamPurpose purpose, uint64_t replication,
                           uint64_t round) {
    uint64_t k = mix64(master_seed ^ (static_cast<uint64_t>(purpose) * kGolden));
    k = mix64(k ^ ((replication + 1) * kGolden));
    k = mix64(k ^ ((round + 1) * kGolden));
    return k;
}

// Counter-based stream: draw i is mix64(key + golden * (i + 1)), so any value can be
// produced without replaying history. A stream is keyed by (seed, purpose, replication,
// round); `at()` gives random access, the next_* methods advance an internal counter.
class RngStream {
public:
    explicit RngStream(uint64_t key) : key_(key) {}
    RngStream(uint64_t master_seed, StreamPurpose purpose, uint64_t replication, uint64_t round)
        : key_(stream_key(master_seed, purpose, replication, round)) {}

    uint64_t at(uint64_t index) const { return mix64(key_ + kGolden * (index + 1)); }
    double double_at(uint64_t index) const { return to_unit(at(index)); }
    bool bernoulli_at(uint64_t index, double p) const { return double_at(index) < p; }

    uint64_t next_u64() { return at(counter_++); }
    double next_double() { return to_unit(next_u64()); }

    // Unbiased uniform draw from {0, ..., bound-1} via rejection.
    uint64_t next_below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    uint64_t key() const { return key_; }

private:
    static double to_unit(uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace fairpc
