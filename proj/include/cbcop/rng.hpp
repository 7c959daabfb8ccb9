#pragma once

// Counter-based splittable random stream.
//
// A stream is identified by a 64-bit key; drawing advances an internal
// counter and returns a strong 64-bit mix of (key, counter).  Child streams
// are derived from labels, not from draw order, so
//   * the same (seed, label path) always yields the same draws,
//   * sibling streams are independent of how many values each consumes, and
//   * work items can run in any order or thread layout without changing
//     any result.

#include <cstdint>
#include <string_view>

#include "cbcop/special.hpp"

namespace cbcop {

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

    // Derive an independent child stream from an integer label.
    RngStream child(std::uint64_t label) const {
        return RngStream(mix(key_ ^ mix(label + 0x632be59bd9b4e019ull)), 0);
    }

    // Derive an independent child stream from a string label (FNV-1a hash).
    RngStream child(std::string_view label) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (const char ch : label) {
            h ^= static_cast<unsigned char>(ch);
            h *= 0x100000001b3ull;
        }
        return child(h);
    }

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ull); }

    // Uniform on the open interval (0, 1); never returns an endpoint.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via quantile transform of uniform().
    double normal() { return normal_quantile(uniform()); }

    // +1 or -1 with equal probability.
    double rademacher() { return (next_u64() >> 63) ? 1.0 : -1.0; }

    std::uint64_t key() const { return key_; }

private:
    RngStream(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

    // SplitMix64 finalizer (Stafford mix 13).
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace cbcop
