#pragma once

#include <cstdint>

namespace lrb {

// Counter-based stream generator (splitmix64 over an incrementing counter).
// Streams derived from the same seed with distinct tags are independent, so
// simulation results do not depend on thread scheduling or on the order in
// which streams are consumed.
class Rng {
public:
    explicit Rng(std::uint64_t key) : key_(key) {}

    static std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Deterministic sub-stream key from up to three tags.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                std::uint64_t c = 0) noexcept {
        std::uint64_t h = mix(seed ^ 0x8BADF00D5EEDULL);
        h = mix(h ^ mix(a ^ 0x9E3779B97F4A7C15ULL));
        h = mix(h ^ mix(b ^ 0xC2B2AE3D27D4EB4FULL));
        h = mix(h ^ mix(c ^ 0x165667B19E3779F9ULL));
        return h;
    }

    std::uint64_t next() noexcept { return mix(key_ + 0x9E3779B97F4A7C15ULL * ++ctr_); }

    // Uniform double in [0, 1).
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept { return n > 1 ? next() % n : 0; }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

} // namespace lrb
