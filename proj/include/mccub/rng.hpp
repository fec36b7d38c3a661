#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace mccub {

// splitmix64 finalizer; a good 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (mix64(b) + kGolden + (a << 6) + (a >> 2)));
}

// Counter-based generator: output at counter i depends only on (key, i),
// so a stream can be resumed or regenerated from any offset and prefixes
// agree between short and long batches.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
        : key_(key), counter_(counter) {}

    static std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts) {
        std::uint64_t k = 0x243F6A8885A308D3ULL; // pi digits, arbitrary start
        for (auto p : parts) k = hash_combine(k, p);
        return k;
    }

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

    // Uniform on [0,1) with 53 random mantissa bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1p-53; }

    // Standard normal via Box-Muller; consumes exactly two counters.
    double next_gaussian() {
        // u1 in (0,1] so the log is finite
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t counter() const { return counter_; }
    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace mccub
