#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace banditlab {

// Counter-based splittable random stream (splitmix64 core).
//
// A stream is (key, counter); each draw mixes key + counter * gamma and
// advances the counter. Streams derived from the same master seed with
// distinct ids are independent for all practical purposes, and a
// replication's stream is identical whether it runs alone or in a batch.
class Rng {
  public:
    explicit Rng(std::uint64_t key) : key_(key) {}

    // Child stream for (master, stream_id[, substream]). Used to give every
    // replication, and every independent purpose inside a run (policy noise,
    // reward noise, counterfactual noise, adversary), its own stream.
    static Rng derive(std::uint64_t master, std::uint64_t stream_id,
                      std::uint64_t substream = 0) {
        std::uint64_t k = mix(master + kGamma);
        k = mix(k ^ mix(stream_id + kGamma2));
        k = mix(k ^ mix(substream + kGamma3));
        return Rng(k);
    }

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

    // Uniform on [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms per call
    // (no cached second value, so the stream position stays predictable).
    double next_gaussian() {
        double u1 = next_double();
        double u2 = next_double();
        // shift u1 into (0,1] so log() is finite
        double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Uniform index in [0, n). Multiply-shift; bias is O(n / 2^64).
    std::size_t next_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

  private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    static constexpr std::uint64_t kGamma2 = 0xbf58476d1ce4e5b9ULL;
    static constexpr std::uint64_t kGamma3 = 0x94d049bb133111ebULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace banditlab
