#pragma once

#include <cstdint>

namespace dlab {

// Stateless counter-based generator: every draw is a pure function of
// (master seed, stream, counter), so parallel sampling needs no coordination.
class CounterRng {
public:
    static constexpr std::uint64_t mix(std::uint64_t x) noexcept {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    constexpr CounterRng(std::uint64_t master_seed, std::uint64_t stream) noexcept
        : key_(mix(mix(master_seed) ^ (stream * 0xD1B54A32D192ED03ull))) {}

    constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
        return mix(key_ + counter * 0x9E3779B97F4A7C15ull);
    }

    // Uniform on [0, 1) with 53 random bits.
    constexpr double uniform(std::uint64_t counter) const noexcept {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    // Uniform on {0, ..., n - 1}.
    std::uint64_t below(std::uint64_t counter, std::uint64_t n) const noexcept {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits(counter)) * n) >> 64);
    }

private:
    std::uint64_t key_;
};

}  // namespace dlab
