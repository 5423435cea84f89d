#pragma once

#include <cstdint>

namespace ulpt {

// splitmix64: tiny, fast, and identical on every platform, which keeps
// seeded experiments byte-reproducible across toolchains.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ stream;
    return splitmix64_next(state);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // Warm up so trivially related seeds decorrelate immediately.
        splitmix64_next(state_);
    }

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Uniform in {0, ..., k-1}.
    int uniform_int(int k) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(k)); }

  private:
    std::uint64_t state_;
};

}  // namespace ulpt
