#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace edgecode {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    std::uint64_t s = master ^ (0x6a09e667f3bcc909ULL * (salt + 1));
    return splitmix64(s);
}

/// Deterministic random stream. Substreams are derived from
/// (master seed, stream tag, index), so a trial's draws never depend on
/// scheduling or on what other trials consumed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    static Rng substream(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
        std::uint64_t s = master;
        s ^= 0x517cc1b727220a95ULL * (tag + 1);
        splitmix64(s);
        s ^= 0x2545f4914f6cdd1dULL * (index + 1);
        return Rng(splitmix64(s));
    }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in (0, 1]; never returns 0 so -log is safe.
    double uniform01() {
        const std::uint64_t r = gen_() >> 11;  // 53 bits
        return (static_cast<double>(r) + 1.0) * 0x1.0p-53;
    }

    double exponential(double mean) { return -mean * std::log(uniform01()); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_below(std::uint64_t n) {
        // Lemire-style rejection; unbiased.
        std::uint64_t x = gen_();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t t = (0 - n) % n;
            while (lo < t) {
                x = gen_();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::mt19937_64& raw() { return gen_; }

  private:
    std::mt19937_64 gen_;
};

}  // namespace edgecode
