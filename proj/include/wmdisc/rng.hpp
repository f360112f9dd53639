#pragma once

#include <cstdint>

namespace wmdisc {

// Generator algorithm name, recorded in output metadata so that runs are
// reproducible across implementations.
inline constexpr const char* kRngAlgorithm = "splitmix64";

// splitmix64: tiny splittable 64-bit generator. Per-stream seeds are derived
// from (seed, stream index), so Monte Carlo results are independent of
// execution order and worker count.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Deterministic sub-seed for stream `index` of master `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    return mix.next_u64();
}

inline SplitMix64 make_stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(derive_seed(seed, index));
}

} // namespace wmdisc
