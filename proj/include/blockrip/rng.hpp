#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace blockrip {

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

// Stream tags for the named substreams used by the experiments.
namespace stream {
inline constexpr std::uint64_t kMaster = 0x6d6173746572ULL;  // "master"
inline constexpr std::uint64_t kSignal = 0x7369676e616cULL;  // "signal"
inline constexpr std::uint64_t kBasis = 0x6261736973ULL;     // "basis"
inline constexpr std::uint64_t kBlock = 0x626c6f636bULL;     // "block"
inline constexpr std::uint64_t kTrial = 0x747269616cULL;     // "trial"
}  // namespace stream

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derive a 64-bit key from a master seed and a path of stream ids.
/// Distinct paths give statistically independent keys; the result does not
/// depend on the order in which streams are created or consumed.
std::uint64_t stream_key(Seed seed, std::initializer_list<std::uint64_t> path);

/// Generator for the stream identified by (seed, path...).
Rng make_stream(Seed seed, std::initializer_list<std::uint64_t> path);

/// Circularly-symmetric complex standard normal: E|z|^2 = 1.
template <class Gen>
std::complex<double> complex_normal(Gen& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(gen);
    const double im = normal(gen);
    return {re * 0.7071067811865476, im * 0.7071067811865476};
}

}  // namespace blockrip
