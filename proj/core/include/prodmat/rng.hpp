#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace prodmat {

// Counter-based generator: every output block is a pure function of
// (key, counter), so entries can be produced in any order, on any number
// of threads, and still come out bit-identical.
struct Philox4x32 {
    static constexpr std::uint32_t kW32A = 0x9E3779B9u;
    static constexpr std::uint32_t kW32B = 0xBB67AE85u;
    static constexpr std::uint32_t kM4x32A = 0xD2511F53u;
    static constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t(kM4x32A) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(kM4x32B) * ctr[2];
            const std::array<std::uint32_t, 4> next = {
                std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0],
                std::uint32_t(p1),
                std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
                std::uint32_t(p0),
            };
            ctr = next;
            key[0] += kW32A;
            key[1] += kW32B;
        }
        return ctr;
    }
};

// splitmix64 finalizer; good avalanche, used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_substream_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index + 1));
}

namespace detail {

inline std::array<std::uint64_t, 2> counter_words(std::uint64_t seed, std::uint32_t stream,
                                                  std::uint64_t index) {
    const auto b = Philox4x32::block(
        {std::uint32_t(index), std::uint32_t(index >> 32), stream, 0u},
        {std::uint32_t(seed), std::uint32_t(seed >> 32)});
    return {(std::uint64_t(b[0]) << 32) | b[1], (std::uint64_t(b[2]) << 32) | b[3]};
}

}  // namespace detail

// Two uniforms in (0, 1]; the +1 keeps log() finite.
inline std::array<double, 2> counter_uniform2(std::uint64_t seed, std::uint32_t stream,
                                              std::uint64_t index) {
    const auto w = detail::counter_words(seed, stream, index);
    return {double((w[0] >> 11) + 1) * 0x1.0p-53, double((w[1] >> 11) + 1) * 0x1.0p-53};
}

// Box-Muller pair, standard normal marginals.
inline std::array<double, 2> counter_gauss2(std::uint64_t seed, std::uint32_t stream,
                                            std::uint64_t index) {
    const auto u = counter_uniform2(seed, stream, index);
    const double r = std::sqrt(-2.0 * std::log(u[0]));
    const double t = 6.283185307179586476925286766559 * u[1];
    return {r * std::cos(t), r * std::sin(t)};
}

inline std::uint64_t counter_bits(std::uint64_t seed, std::uint32_t stream, std::uint64_t index) {
    return detail::counter_words(seed, stream, index)[0];
}

}  // namespace prodmat
